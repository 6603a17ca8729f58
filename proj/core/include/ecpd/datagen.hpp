#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ecpd {

// Synthetic single-change series generators: a regime switch at a known
// sample index, with the noise families the evaluation sweeps over.

enum class ShiftKind {
    MeanShift,     // level mu changes, spread fixed
    VarianceShift, // spread changes, level fixed
    Ar1Shift,      // AR(1) autocorrelation phi changes, innovations fixed
};

enum class NoiseKind {
    Gaussian,
    Uniform,
    Laplace,
    StudentT5,
};

struct SeriesSpec {
    std::size_t n = 0;
    // First tau samples follow the pre-change regime, the rest the post-change
    // regime (so tau is the true boundary index). 0 selects n / 2.
    std::size_t tau = 0;
    ShiftKind shift = ShiftKind::MeanShift;
    NoiseKind noise = NoiseKind::Gaussian;

    double muBefore = 0.0; // level (MeanShift varies it; VarianceShift holds muBefore)
    double muAfter = 1.0;
    double varBefore = 1.0; // variance, not standard deviation
    double varAfter = 2.0;
    double phiBefore = 0.3; // AR(1) coefficient
    double phiAfter = 0.7;
    double innovationVar = 1.0; // AR(1) innovation variance

    std::uint64_t seed = 0;
};

struct GeneratedSeries {
    std::vector<double> values;
    std::size_t tau = 0; // resolved boundary index
    // Normalization bounds covering ~6 standard deviations of the wider
    // regime; heavy-tailed draws outside them are clamped downstream.
    double suggestedLow = 0.0;
    double suggestedHigh = 1.0;
};

GeneratedSeries genSeries(const SeriesSpec& spec);

} // namespace ecpd

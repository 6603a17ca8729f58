#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ecpd/plaintext.hpp"
#include "ecpd/summarize.hpp"

namespace ecpd {

// Local-noise privacy baseline: clip each sample, add calibrated Gaussian
// noise per sample, then run the cleartext detector on the perturbed series.
// The comparison axis for the encrypted approach, which pays no accuracy for
// privacy.

struct DpParams {
    double epsilon = 1.0;
    double delta = 1e-8;
    double clipBound = 1.0; // M: samples clipped to [-M, M]
};

// Gaussian-mechanism noise scale for one sample under (epsilon, delta), with
// per-sample sensitivity 2M: sigma = (sqrt(2) M / eps) (sqrt(L) + sqrt(L+eps)),
// L = ln(1/delta). Exact inverse of dpEpsilonForSigma.
double dpSigma(const DpParams& p);

// Privacy loss of Gaussian noise sigma at the given delta and clip bound:
// eps = Delta^2/(2 sigma^2) + (Delta/sigma) sqrt(2 ln(1/delta)), Delta = 2M.
double dpEpsilonForSigma(double sigma, double delta, double clipBound);

std::vector<double> clipSeries(const std::vector<double>& series, double bound);

struct DpSeries {
    std::vector<double> values; // clipped + noised
    double sigma = 0.0;
    // Normalization bounds for the noised scale: the clip range widened by
    // ~6 noise standard deviations.
    double low = 0.0;
    double high = 0.0;
};

DpSeries privatize(const std::vector<double>& series, const DpParams& params,
                   std::uint64_t seed);

struct DpDetection {
    PlainDetection detection;
    double sigma = 0.0;
    std::size_t clamped = 0; // noised samples outside the widened bounds
};

// End-to-end baseline: privatize, normalize into the widened bounds, detect
// with the cleartext pipeline. blockSize 0 selects the same automatic rule as
// the encrypted pipeline.
DpDetection detectDp(const std::vector<double>& series, std::size_t blockSize,
                     StatKind kind, const DpParams& params, std::uint64_t seed);

// |estimated - actual| / actual.
double relativeError(std::size_t estimated, std::size_t actual);

} // namespace ecpd

#include "ecpd/dp.hpp"

#include <algorithm>
#include <cmath>

#include "ecpd/pipeline.hpp"
#include "ecpd/rng.hpp"

namespace ecpd {

namespace {

void checkParams(const DpParams& p) {
    if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon)) {
        throw ParameterError("epsilon must be positive and finite");
    }
    if (!(p.delta > 0.0) || !(p.delta < 1.0)) {
        throw ParameterError("delta must lie in (0, 1)");
    }
    if (!(p.clipBound > 0.0) || !std::isfinite(p.clipBound)) {
        throw ParameterError("clip bound must be positive and finite");
    }
}

} // namespace

double dpSigma(const DpParams& p) {
    checkParams(p);
    const double bigL = std::log(1.0 / p.delta);
    return (std::sqrt(2.0) * p.clipBound / p.epsilon) *
           (std::sqrt(bigL) + std::sqrt(bigL + p.epsilon));
}

double dpEpsilonForSigma(double sigma, double delta, double clipBound) {
    if (!(sigma > 0.0) || !(delta > 0.0) || !(delta < 1.0) || !(clipBound > 0.0)) {
        throw ParameterError("invalid privacy accounting inputs");
    }
    const double sensitivity = 2.0 * clipBound;
    const double bigL = std::log(1.0 / delta);
    return sensitivity * sensitivity / (2.0 * sigma * sigma) +
           (sensitivity / sigma) * std::sqrt(2.0 * bigL);
}

std::vector<double> clipSeries(const std::vector<double>& series, double bound) {
    if (!(bound > 0.0)) {
        throw ParameterError("clip bound must be positive");
    }
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        out[i] = std::clamp(series[i], -bound, bound);
    }
    return out;
}

DpSeries privatize(const std::vector<double>& series, const DpParams& params,
                   std::uint64_t seed) {
    DpSeries out;
    out.sigma = dpSigma(params);
    out.values = clipSeries(series, params.clipBound);
    SplitMixRng rng(seed);
    for (double& v : out.values) {
        v += out.sigma * rng.gaussian();
    }
    out.low = -params.clipBound - 6.0 * out.sigma;
    out.high = params.clipBound + 6.0 * out.sigma;
    return out;
}

DpDetection detectDp(const std::vector<double>& series, std::size_t blockSize,
                     StatKind kind, const DpParams& params, std::uint64_t seed) {
    const DpSeries noised = privatize(series, params, seed);
    CPDConfig cfg;
    cfg.stat = kind;
    cfg.blockSize = blockSize;
    cfg.boundLow = noised.low;
    cfg.boundHigh = noised.high;
    DpDetection out;
    out.sigma = noised.sigma;
    // Mirror path only: the baseline runs in the clear.
    const std::size_t m = blockSize == 0 ? chooseBlockSize(noised.values.size())
                                         : blockSize;
    const Normalized norm = normalizeSeries(noised.values, noised.low, noised.high);
    out.clamped = norm.clamped;
    out.detection = detectPlain(norm.values, m, kind);
    out.detection.tauIndex = std::min(series.size(), out.detection.tauIndex);
    return out;
}

double relativeError(std::size_t estimated, std::size_t actual) {
    if (actual == 0) {
        throw ParameterError("relative error needs a nonzero reference");
    }
    const double e = static_cast<double>(estimated);
    const double a = static_cast<double>(actual);
    return std::abs(e - a) / a;
}

} // namespace ecpd

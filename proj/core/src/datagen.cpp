#include "ecpd/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "ecpd/backend.hpp"
#include "ecpd/rng.hpp"

namespace ecpd {

namespace {

// Unit-variance draw of the requested family.
double drawUnit(SplitMixRng& rng, NoiseKind kind) {
    switch (kind) {
    case NoiseKind::Gaussian:
        return rng.gaussian();
    case NoiseKind::Uniform:
        return rng.uniformSym(std::sqrt(3.0));
    case NoiseKind::Laplace:
        return rng.laplace(1.0 / std::sqrt(2.0));
    case NoiseKind::StudentT5:
        return rng.studentT5() / std::sqrt(5.0 / 3.0);
    }
    throw ParameterError("unknown noise family");
}

void checkSpec(const SeriesSpec& spec, std::size_t tau) {
    if (spec.n < 2) {
        throw ParameterError("generated series needs at least 2 samples");
    }
    if (tau < 1 || tau >= spec.n) {
        throw ParameterError("change index must lie strictly inside the series");
    }
    if (!(spec.varBefore > 0.0) || !(spec.varAfter > 0.0)) {
        throw ParameterError("variances must be positive");
    }
    if (!(spec.innovationVar > 0.0)) {
        throw ParameterError("innovation variance must be positive");
    }
    if (std::abs(spec.phiBefore) >= 1.0 || std::abs(spec.phiAfter) >= 1.0) {
        throw ParameterError("AR(1) coefficients must satisfy |phi| < 1");
    }
}

} // namespace

GeneratedSeries genSeries(const SeriesSpec& spec) {
    const std::size_t tau = spec.tau == 0 ? spec.n / 2 : spec.tau;
    checkSpec(spec, tau);

    SplitMixRng rng(spec.seed);
    GeneratedSeries out;
    out.tau = tau;
    out.values.resize(spec.n);

    switch (spec.shift) {
    case ShiftKind::MeanShift: {
        const double sd = std::sqrt(spec.varBefore);
        for (std::size_t t = 0; t < spec.n; ++t) {
            const double mu = t < tau ? spec.muBefore : spec.muAfter;
            out.values[t] = mu + sd * drawUnit(rng, spec.noise);
        }
        out.suggestedLow = std::min(spec.muBefore, spec.muAfter) - 6.0 * sd;
        out.suggestedHigh = std::max(spec.muBefore, spec.muAfter) + 6.0 * sd;
        break;
    }
    case ShiftKind::VarianceShift: {
        const double sdBefore = std::sqrt(spec.varBefore);
        const double sdAfter = std::sqrt(spec.varAfter);
        for (std::size_t t = 0; t < spec.n; ++t) {
            const double sd = t < tau ? sdBefore : sdAfter;
            out.values[t] = spec.muBefore + sd * drawUnit(rng, spec.noise);
        }
        const double sdMax = std::max(sdBefore, sdAfter);
        out.suggestedLow = spec.muBefore - 6.0 * sdMax;
        out.suggestedHigh = spec.muBefore + 6.0 * sdMax;
        break;
    }
    case ShiftKind::Ar1Shift: {
        const double innovSd = std::sqrt(spec.innovationVar);
        double prev = 0.0;
        for (std::size_t t = 0; t < spec.n; ++t) {
            const double phi = t < tau ? spec.phiBefore : spec.phiAfter;
            prev = phi * prev + innovSd * drawUnit(rng, spec.noise);
            out.values[t] = prev;
        }
        const double sdStat =
            innovSd / std::sqrt(1.0 - std::max(spec.phiBefore * spec.phiBefore,
                                               spec.phiAfter * spec.phiAfter));
        out.suggestedLow = -6.0 * sdStat;
        out.suggestedHigh = 6.0 * sdStat;
        break;
    }
    }
    return out;
}

} // namespace ecpd

#include "ecpd/compare.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace ecpd {

namespace {

// Odd degree-7 stage coefficients (c1, c3, c5, c7), exact dyadic rationals.
constexpr std::array<double, 4> kF = {35.0 / 16.0, -35.0 / 16.0, 21.0 / 16.0,
                                      -5.0 / 16.0};
constexpr std::array<double, 4> kG = {4589.0 / 1024.0, -16577.0 / 1024.0,
                                      25614.0 / 1024.0, -12860.0 / 1024.0};

void checkParams(const SignApproxParams& p) {
    if (p.df < 0 || p.dg < 0) {
        throw ParameterError("sign approximation stage counts must be non-negative");
    }
}

// One odd stage p(x) = x * (c1 + c3*y + y^2*(c5 + c7*y)), y = x^2.
// Exactly 4 cipher and 2 plain multiplications, 4 depth levels.
CipherVector evalOddStage(const CipherVector& x, const std::array<double, 4>& c) {
    CipherVector y = mul(x, x);
    CipherVector hi = addScalar(mulScalar(y, c[3]), c[2]);
    CipherVector y2 = mul(y, y);
    CipherVector t3 = mul(y2, hi);
    CipherVector t4 = mulScalar(y, c[1]);
    CipherVector inner = addScalar(add(t3, t4), c[0]);
    return mul(x, inner);
}

std::array<double, 4> scaleInput(const std::array<double, 4>& c, double s) {
    const double s2 = s * s;
    return {c[0] / s, c[1] / (s2 * s), c[2] / (s2 * s2 * s),
            c[3] / (s2 * s2 * s2 * s)};
}

std::array<double, 4> scaleOutput(const std::array<double, 4>& c, double f) {
    return {c[0] * f, c[1] * f, c[2] * f, c[3] * f};
}

// Composition core. Folds the input pre-division into the first stage and an
// output scale into the last stage; both folds cost nothing at runtime.
CipherVector composeCore(const CipherVector& x, const SignApproxParams& p,
                         double inputScale, double finalScale) {
    checkParams(p);
    if (!(inputScale > 0.0) || !std::isfinite(inputScale)) {
        throw ParameterError("comparison input scale must be positive and finite");
    }
    const int stages = p.df + p.dg;
    if (stages == 0) {
        const double factor = finalScale / inputScale;
        if (factor == 1.0) {
            return x;
        }
        return mulScalar(x, factor);
    }
    CipherVector cur = x;
    for (int i = 0; i < stages; ++i) {
        std::array<double, 4> c = (i < p.dg) ? kG : kF;
        if (i == 0 && inputScale != 1.0) {
            c = scaleInput(c, inputScale);
        }
        if (i == stages - 1 && finalScale != 1.0) {
            c = scaleOutput(c, finalScale);
        }
        cur = evalOddStage(cur, c);
    }
    return cur;
}

double evalOddStageScalar(double x, const std::array<double, 4>& c) {
    const double y = x * x;
    return x * (c[0] + c[1] * y + y * y * (c[2] + c[3] * y));
}

} // namespace

std::size_t compareMultCost(const SignApproxParams& p) {
    checkParams(p);
    return 6u * static_cast<std::size_t>(p.df + p.dg);
}

int compareDepthCost(const SignApproxParams& p) {
    checkParams(p);
    return 4 * (p.df + p.dg);
}

CipherVector composeSign(const CipherVector& x, const SignApproxParams& params,
                         double inputScale) {
    return composeCore(x, params, inputScale, 1.0);
}

CipherVector compare(const CipherVector& x, const CipherVector& y,
                     const SignApproxParams& params, double inputScale) {
    CipherVector diff = sub(x, y);
    CipherVector half = composeCore(diff, params, inputScale, 0.5);
    CipherVector out = addScalar(half, 0.5);
    x.context().noteCompare();
    return out;
}

CipherVector indicateTop(const CipherVector& ranks, std::size_t n,
                         const SignApproxParams& params) {
    if (n == 0) {
        throw ParameterError("indicateTop needs a positive rank ceiling");
    }
    const EvalContext& ctx = ranks.context();
    const double nd = static_cast<double>(n);
    // ranks - (n - 0.5): positive only at the top rank.
    CipherVector above = addScalar(ranks, -(nd - 0.5));
    CipherVector cAbove = addScalar(composeCore(above, params, nd, 0.5), 0.5);
    ctx.noteCompare();
    // (n + 0.5) - ranks: positive everywhere ranks are valid; guards overshoot.
    CipherVector below = subScalar(nd + 0.5, ranks);
    CipherVector cBelow = addScalar(composeCore(below, params, nd, 0.5), 0.5);
    ctx.noteCompare();
    return mul(cAbove, cBelow);
}

double scalarSign(double t, const SignApproxParams& params) {
    checkParams(params);
    double cur = t;
    for (int i = 0; i < params.dg; ++i) {
        cur = evalOddStageScalar(cur, kG);
    }
    for (int i = 0; i < params.df; ++i) {
        cur = evalOddStageScalar(cur, kF);
    }
    return cur;
}

double scalarCompare(double x, double y, const SignApproxParams& params) {
    return (scalarSign(x - y, params) + 1.0) / 2.0;
}

double resolutionBound(const SignApproxParams& params, double accuracy,
                       double step) {
    checkParams(params);
    if (!(accuracy > 0.0) || !(step > 0.0)) {
        throw ParameterError("resolution scan needs positive accuracy and step");
    }
    using Key = std::tuple<int, int, double, double>;
    static std::mutex mtx;
    static std::map<Key, double> cache;
    const Key key{params.df, params.dg, accuracy, step};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    const std::size_t points = static_cast<std::size_t>(std::ceil(1.0 / step));
    std::vector<double> err(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double d = std::min(1.0, static_cast<double>(k + 1) * step);
        err[k] = std::abs(scalarCompare(d, 0.0, params) - 1.0);
    }
    // gamma = smallest grid gap whose entire suffix stays within accuracy.
    double gamma = 1.0 + step;
    double suffixMax = 0.0;
    for (std::size_t k = points; k-- > 0;) {
        suffixMax = std::max(suffixMax, err[k]);
        if (suffixMax <= accuracy) {
            gamma = static_cast<double>(k + 1) * step;
        } else {
            break;
        }
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, gamma);
    return gamma;
}

} // namespace ecpd

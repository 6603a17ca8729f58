#pragma once

#include <cstddef>

#include "ecpd/backend.hpp"

namespace ecpd {

// Iteration counts for the composed odd-polynomial sign approximation
// sign(x) ~= f^(df)( g^(dg)(x) ) on [-1, 1]. g herds inputs away from zero,
// f sharpens toward +-1. The defaults trade depth against resolution along
// the published operating point.
struct SignApproxParams {
    int df = 2;
    int dg = 4;
};

// Multiplications consumed by one sign composition / slot-wise comparison
// (a pure function of the parameters: 6 per stage — 4 cipher, 2 plain).
std::size_t compareMultCost(const SignApproxParams& p);
// Depth levels consumed (4 per stage).
int compareDepthCost(const SignApproxParams& p);

// Slot-wise composed sign approximation. Maps values in [-1, 1] to ~ +-1.
// inputScale folds a pre-division of the input by that factor into the first
// stage's coefficients at zero operation cost (used to bring wider-range
// operands into the approximation interval).
CipherVector composeSign(const CipherVector& x, const SignApproxParams& params,
                         double inputScale = 1.0);

// Slot-wise comparison: ~1 where x > y, ~0 where x < y, exactly 0.5 where
// x == y. Requires |x - y| <= inputScale. The (sign+1)/2 affine step is folded
// into the final stage's coefficients, so the cost equals compareMultCost.
CipherVector compare(const CipherVector& x, const CipherVector& y,
                     const SignApproxParams& params = {}, double inputScale = 1.0);

// Slot-wise equality-with-N indicator for integer-valued slots in [1, N]:
// ~1 where the slot holds N, ~0 where it holds <= N-1. Two comparisons against
// the thresholds N -+ 0.5 (input scaling folded) and one product:
// 2*compareMultCost + 1 multiplications.
CipherVector indicateTop(const CipherVector& ranks, std::size_t n,
                         const SignApproxParams& params = {});

// Scalar reference of the same composition (plain math, no backend ops).
double scalarSign(double t, const SignApproxParams& params);
double scalarCompare(double x, double y, const SignApproxParams& params);

// Smallest gap gamma (on the given grid) such that every slot-wise comparison
// of operands separated by at least gamma is within `accuracy` of the exact
// 0/1 answer. Scanned on multiples of `step`; memoized per parameter set.
double resolutionBound(const SignApproxParams& params, double accuracy = 0.01,
                       double step = 1e-4);

} // namespace ecpd

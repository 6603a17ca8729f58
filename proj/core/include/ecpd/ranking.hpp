#pragma once

#include <cstddef>

#include "ecpd/backend.hpp"
#include "ecpd/compare.hpp"

namespace ecpd {

// Ranking and argmax over a row vector held in the first `n` slots of an
// N x N slot grid (dim = N, a power of two; remaining slots must be zero).
// Values are expected in [0, 1] so pairwise differences stay inside the
// comparator's approximation interval.
//
// All results live in the first row of the grid; slots outside the first
// `n` columns of that row carry residues and are not meaningful.

// Slot-wise ranks (1-based; ties share fractional mass: two equal maxima
// each receive rank n - 0.5). One comparison over the all-pairs grid plus
// one row-summing kernel; a pad-row zeroing multiplication is added only
// when n < dim.
CipherVector rank(const CipherVector& x, std::size_t n, std::size_t dim,
                  const SignApproxParams& params = {});

// One-hot argmax computed as rank + top-rank indicator: ~1 at the maximum,
// ~0 elsewhere. Costs 2*compareMultCost + 1 multiplications beyond the
// ranking step. A unique maximum decodes above 0.5; exact ties fall to 0.5.
CipherVector argmaxViaRank(const CipherVector& x, std::size_t n, std::size_t dim,
                           const SignApproxParams& params = {});

// One-hot argmax computed as a column product of pairwise comparison wins:
// slot j survives only if it beats every other slot. One comparison plus
// exactly ceil(log2(dim)) multiplications — the cheap path.
CipherVector argmaxFast(const CipherVector& x, std::size_t n, std::size_t dim,
                        const SignApproxParams& params = {});

} // namespace ecpd

#pragma once

#include "ecpd/backend.hpp"
#include "ecpd/compare.hpp"
#include "ecpd/matrix.hpp"

namespace ecpd {

// The per-block statistic a detection run tracks. Mean flags location shifts,
// Variance flags scale shifts, TurningRate flags oscillation-frequency shifts.
enum class StatKind {
    Mean,
    Variance,
    TurningRate,
};

// Per-block summary statistics over a block-packed series (one block per grid
// row; see BlockMatrix). Every summarizer returns a matrix whose first column
// holds the per-block statistic — slot (k, 0) for block k — with rotation
// residues elsewhere unless noted. Input values are expected in [0, 1].

// Per-block sample mean. The 1/len(block) scale rides on the summing kernel's
// cleanup mask, so the cost is log2(dim) rotations + 1 mask-mult. Rows beyond
// the populated blocks come out zero.
BlockMatrix blockMean(const BlockMatrix& x);

// Per-block unbiased sample variance (1/(len-1) normalization; a final block
// of length < 2 yields 0). Mean per row, broadcast, squared deviations, then
// a scaled column fold. When the grid carries padding columns, one plaintext
// multiplication zeroes the broadcast mean over the padding so the deviations
// vanish there.
BlockMatrix blockVariance(const BlockMatrix& x);

// Per-block turning rate: the fraction of the block's length-3 sliding
// windows whose middle element is a local extremum (i.e. the window is not
// monotone). The frequency-domain summary: direction changes per window.
// Blocks shorter than 3 yield 0.
//
// Composition: one slot-wise comparison of each element against its right
// neighbour, a window membership formed additively, and the weighted total
// w - (w*a)*a (w the per-row 1/(len-2) window weight, a the comparison sum)
// — exactly one plaintext and one ciphertext multiplication beyond the
// comparison, plus an unmasked column fold. Because the fold is unmasked,
// only the first column is clean; consumers mask when they need isolation.
BlockMatrix turningRates(const BlockMatrix& x, const SignApproxParams& params = {});

// The plain per-row weight vectors the summarizers fold into their masks;
// exposed for tests and for oracle-side mirroring of edge conventions
// (short final blocks, empty rows).
PlainVector meanScaleMask(const BlockMatrix& shape);
PlainVector varianceScaleMask(const BlockMatrix& shape);
PlainVector turningWindowWeights(const BlockMatrix& shape);

} // namespace ecpd

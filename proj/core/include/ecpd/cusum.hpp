#pragma once

#include <cstddef>

#include "ecpd/backend.hpp"
#include "ecpd/compare.hpp"
#include "ecpd/matrix.hpp"

namespace ecpd {

// Change-point localization over per-block statistics via a CUSUM contrast:
// for each candidate split j, the scaled gap between the prefix sum through
// block j and the grand total weighted by the prefix fraction. The split
// maximizing the squared gap is selected slot-wise with an encrypted argmax.

// Scaled prefix sums of a first-column vector: broadcast each row's first
// column across its row, multiply by an upper-triangular scale*[column >= row]
// matrix, and fold rows. The first output row holds scale * (s_0 + ... + s_j)
// at column j; rows below are unmasked fold residue. Costs 2*log2(dim)
// rotations and exactly one plaintext multiplication.
CipherVector partialSums(const CipherVector& columnVec, std::size_t dim,
                         double scale = 1.0);

struct CusumResult {
    // One-hot change indicator over the first `candidates` slots of the first
    // row: ~1 at the maximizing split, ~0 elsewhere (exact ties damp to 0.5).
    CipherVector oneHot;
    // Squared scaled gaps prior to the argmax, same layout. Decoded by the
    // caller for confidence margins; the gap scale is 4/candidates so all
    // values stay within [0, 1] for [0, 1]-valued statistics.
    CipherVector squaredGaps;
    // Number of candidate splits (the populated block rows).
    std::size_t candidates = 0;
};

// Full contrast-and-select over a summarizer output whose first column holds
// the per-block statistics (residues elsewhere are tolerated: the head of the
// computation isolates that column). fastArgmax selects the log-depth product
// argmax; the rank-based variant costs two extra threshold comparisons.
CusumResult cusumArgmax(const BlockMatrix& stats,
                        const SignApproxParams& params = {},
                        bool fastArgmax = true);

} // namespace ecpd

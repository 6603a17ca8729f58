#pragma once

#include <cstddef>
#include <vector>

#include "ecpd/backend.hpp"

namespace ecpd {

// A block-partitioned series packed row-major into a padded N x N square of
// SIMD slots: logical block row k occupies slots [k*dim, k*dim + cols), the
// remaining slots are zero. dim is a power of two >= max(rows, cols) and the
// backing vector's context holds exactly dim*dim slots.
struct BlockMatrix {
    std::size_t rows = 0;     // number of block rows actually populated (n_b)
    std::size_t cols = 0;     // block length (m)
    std::size_t lastCols = 0; // populated length of the final block row (m')
    std::size_t dim = 0;      // padded square dimension N (power of two)
    CipherVector data;

    BlockMatrix withData(CipherVector d) const {
        BlockMatrix out = *this;
        out.data = std::move(d);
        return out;
    }
};

std::size_t nextPowerOfTwo(std::size_t v);

// Partition of n samples into ceil(n/m) blocks of length m, the final block
// holding the n - (blocks-1)*m remainder samples.
struct BlockShape {
    std::size_t blocks = 0;  // n_b
    std::size_t lastLen = 0; // m'
};

BlockShape blockPartition(std::size_t n, std::size_t m);

// Mask builders over a dim x dim layout in `slots` total slots. The first two
// are the canonical kernel cleanup masks; exposed for reuse by consumers that
// need the same shapes as algorithmic (counted) operands.
PlainVector makeFirstRowMask(std::size_t slots, std::size_t dim);
PlainVector makeFirstColumnMask(std::size_t slots, std::size_t dim);

// --- rotate-accumulate kernels over a dim x dim square ----------------------
//
// Each kernel issues exactly log2(dim) rotations. The summing/transposing
// kernels end with one plaintext cleanup mask (tallied as a mask-mult) unless
// masked == false; the replication kernels never multiply. dim == 1 is the
// degenerate case: every kernel returns its input unchanged at zero cost.
//
// Unmasked variants leave rotation residue outside the contracted row/column:
// after sumRows the residue rows are full copies of the column-sum row when
// the context holds exactly dim*dim slots (the cyclic wraparound closes the
// recursion); only the first row is contractual. After sumColumns only each
// row's first column is contractual.

// Sums all rows into the first row (column-wise totals).
CipherVector sumRows(const CipherVector& x, std::size_t dim, bool masked = true);
// Sums each row into its first column (row-wise totals).
CipherVector sumColumns(const CipherVector& x, std::size_t dim, bool masked = true);
// Same kernels with a caller-provided cleanup mask replacing the canonical
// 0/1 mask — the way per-row or per-column scale factors ride along on the
// cleanup multiplication the kernel pays for anyway (still one mask-mult).
CipherVector sumRows(const CipherVector& x, std::size_t dim,
                     const PlainVector& finalMask);
CipherVector sumColumns(const CipherVector& x, std::size_t dim,
                        const PlainVector& finalMask);
// Replicates the first row across all rows. Requires all other rows zero.
CipherVector replicateRow(const CipherVector& x, std::size_t dim);
// Replicates each row's first column across that row. Requires other columns zero.
CipherVector replicateColumn(const CipherVector& x, std::size_t dim);
// Moves a first-row vector into the first column. Requires all other slots zero.
CipherVector transposeRow(const CipherVector& x, std::size_t dim, bool masked = true);
// Moves a first-column vector into the first row. Requires all other slots zero.
CipherVector transposeColumn(const CipherVector& x, std::size_t dim, bool masked = true);

// BlockMatrix conveniences (same semantics, same costs).
BlockMatrix sumRows(const BlockMatrix& m, bool masked = true);
BlockMatrix sumColumns(const BlockMatrix& m, bool masked = true);
BlockMatrix replicateRow(const BlockMatrix& m);
BlockMatrix replicateColumn(const BlockMatrix& m);
BlockMatrix transposeRow(const BlockMatrix& m, bool masked = true);
BlockMatrix transposeColumn(const BlockMatrix& m, bool masked = true);

// Decode-side helpers (no operation cost): read one logical row/column.
std::vector<double> readRow(const BlockMatrix& m, std::size_t row);
std::vector<double> readColumn(const BlockMatrix& m, std::size_t col);

} // namespace ecpd

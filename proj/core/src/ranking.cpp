#include "ecpd/ranking.hpp"

#include <stdexcept>

#include "ecpd/matrix.hpp"

namespace ecpd {

namespace {

void checkArgs(const CipherVector& x, std::size_t n, std::size_t dim) {
    if (!x.valid()) {
        throw ContextMismatchError("ranking requires an initialized cipher vector");
    }
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw ParameterError("ranking grid dimension must be a power of two");
    }
    if (n == 0 || n > dim) {
        throw ParameterError("ranking entry count must be in [1, dim]");
    }
    if (x.context().slotCount() < dim * dim) {
        throw CapacityError("ranking needs slot capacity for a dim x dim grid");
    }
}

// All-pairs comparison grid: slot (i, j) ~= cmp(x_j > x_i). Both operands are
// broadcast from the first-row input.
CipherVector pairwiseWins(const CipherVector& x, std::size_t dim,
                          const SignApproxParams& params) {
    CipherVector byRows = replicateRow(x, dim);
    CipherVector byCols = replicateColumn(transposeRow(x, dim), dim);
    return compare(byRows, byCols, params);
}

// Mask selecting the first `rows` full rows of the grid.
PlainVector rowBandMask(std::size_t slots, std::size_t dim, std::size_t rows) {
    PlainVector mask(slots, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            mask[r * dim + c] = 1.0;
        }
    }
    return mask;
}

} // namespace

CipherVector rank(const CipherVector& x, std::size_t n, std::size_t dim,
                  const SignApproxParams& params) {
    checkArgs(x, n, dim);
    CipherVector wins = pairwiseWins(x, dim, params);
    if (n < dim) {
        // Drop comparison rows against padding slots: they are not contestants.
        wins = mulPlain(wins, rowBandMask(x.context().slotCount(), dim, n));
    }
    // Column totals collect into the first row; the half restores the 1-based
    // offset net of the self-comparison's exact 0.5.
    return addScalar(sumRows(wins, dim), 0.5);
}

CipherVector argmaxViaRank(const CipherVector& x, std::size_t n, std::size_t dim,
                           const SignApproxParams& params) {
    CipherVector ranks = rank(x, n, dim, params);
    return indicateTop(ranks, n, params);
}

CipherVector argmaxFast(const CipherVector& x, std::size_t n, std::size_t dim,
                        const SignApproxParams& params) {
    checkArgs(x, n, dim);
    CipherVector wins = pairwiseWins(x, dim, params);
    // Lift the exact-0.5 self-comparison diagonal to 1 so it cannot damp the
    // column product.
    const std::size_t slots = x.context().slotCount();
    PlainVector diag(slots, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        diag[i * dim + i] = 0.5;
    }
    CipherVector cur = add(wins, diag);
    // Fold the product of each column's rows into the first row: after step k
    // slot (r, j) holds the product of rows r .. r + 2^(k+1) - 1 (cyclically).
    for (std::size_t span = 1; span < dim; span <<= 1) {
        cur = mul(cur, rotate(cur, static_cast<long long>(span * dim)));
    }
    return cur;
}

} // namespace ecpd

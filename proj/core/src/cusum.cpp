#include "ecpd/cusum.hpp"

#include <string>

#include "ecpd/ranking.hpp"

namespace ecpd {

namespace {

void checkDim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw ParameterError("grid dimension must be a power of two, got " +
                             std::to_string(dim));
    }
}

// scale * [column >= row] over the full grid.
PlainVector upperTriangular(std::size_t dim, double scale) {
    PlainVector tri(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            tri[i * dim + j] = scale;
        }
    }
    return tri;
}

// First column of the populated rows only.
PlainVector headColumnMask(std::size_t dim, std::size_t rows) {
    PlainVector mask(dim * dim, 0.0);
    for (std::size_t k = 0; k < rows; ++k) {
        mask[k * dim] = 1.0;
    }
    return mask;
}

// First-row weights (j+1) * scale / candidates for the real splits, held flat
// at scale beyond them so the padding columns cancel against the plateaued
// prefix sums. Zero outside the first row, which doubles as row isolation.
PlainVector totalWeights(std::size_t dim, std::size_t candidates, double scale) {
    PlainVector w(dim * dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        const double frac = j < candidates
                                ? static_cast<double>(j + 1) / static_cast<double>(candidates)
                                : 1.0;
        w[j] = scale * frac;
    }
    return w;
}

} // namespace

CipherVector partialSums(const CipherVector& columnVec, std::size_t dim,
                         double scale) {
    checkDim(dim);
    CipherVector spread = replicateColumn(columnVec, dim);
    CipherVector weighted = mulPlain(spread, upperTriangular(dim, scale));
    return sumRows(weighted, dim, /*masked=*/false);
}

CusumResult cusumArgmax(const BlockMatrix& stats, const SignApproxParams& params,
                        bool fastArgmax) {
    checkDim(stats.dim);
    if (stats.rows == 0 || stats.rows > stats.dim) {
        throw ParameterError("statistics rows must be in [1, dim]");
    }
    const std::size_t dim = stats.dim;
    const std::size_t nb = stats.rows;
    // Gap scale 4/nb: |prefix_j - frac_j * total| <= nb/4 for [0,1] statistics,
    // so scaled gaps live in [-1, 1] and their squares in [0, 1].
    const double scale = 4.0 / static_cast<double>(nb);

    // Isolate the statistics column (summarizers may leave fold residue).
    CipherVector s = mulPlain(stats.data, headColumnMask(dim, nb));

    // Prefix path: first row gets scale * (s_0 + ... + s_j) at column j.
    CipherVector prefixes = partialSums(s, dim, scale);
    CipherVector prefixRow = mulMask(prefixes, makeFirstRowMask(dim * dim, dim));

    // Total path: fold the column into the top-left slot, broadcast it across
    // the first row, and weight by the prefix fraction (plateaued over padding
    // so those columns cancel exactly against the plateaued prefixes).
    CipherVector total = replicateColumn(sumRows(s, dim, /*masked=*/false), dim);
    CipherVector weightedTotal = mulPlain(total, totalWeights(dim, nb, scale));

    CipherVector gap = sub(prefixRow, weightedTotal);
    CipherVector squared = mul(gap, gap);

    CusumResult out;
    out.candidates = nb;
    out.squaredGaps = squared;
    out.oneHot = fastArgmax ? argmaxFast(squared, nb, dim, params)
                            : argmaxViaRank(squared, nb, dim, params);
    return out;
}

} // namespace ecpd

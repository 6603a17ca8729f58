#include "ecpd/summarize.hpp"

#include <string>

namespace ecpd {

namespace {

void checkShape(const BlockMatrix& m) {
    if (!m.data.valid()) {
        throw ParameterError("summarizer applied to an empty block matrix");
    }
    if (m.dim == 0 || (m.dim & (m.dim - 1)) != 0) {
        throw ParameterError("block grid dimension must be a power of two");
    }
    if (m.rows == 0 || m.rows > m.dim || m.cols == 0 || m.cols > m.dim) {
        throw ParameterError("block grid is " + std::to_string(m.rows) + "x" +
                             std::to_string(m.cols) + " but dim is " +
                             std::to_string(m.dim));
    }
    if (m.lastCols == 0 || m.lastCols > m.cols) {
        throw ParameterError("final block length must be in [1, cols]");
    }
}

std::size_t rowLength(const BlockMatrix& m, std::size_t row) {
    return row + 1 == m.rows ? m.lastCols : m.cols;
}

// 1 over the populated columns of each populated row, 0 elsewhere. Zeroes a
// broadcast statistic over padding slots.
PlainVector padColumnMask(const BlockMatrix& m) {
    PlainVector mask(m.dim * m.dim, 0.0);
    for (std::size_t k = 0; k < m.rows; ++k) {
        for (std::size_t j = 0; j < rowLength(m, k); ++j) {
            mask[k * m.dim + j] = 1.0;
        }
    }
    return mask;
}

bool hasPaddingColumns(const BlockMatrix& m) {
    return m.cols < m.dim || m.lastCols < m.cols;
}

} // namespace

PlainVector meanScaleMask(const BlockMatrix& shape) {
    checkShape(shape);
    PlainVector mask(shape.dim * shape.dim, 0.0);
    for (std::size_t k = 0; k < shape.rows; ++k) {
        mask[k * shape.dim] = 1.0 / static_cast<double>(rowLength(shape, k));
    }
    return mask;
}

PlainVector varianceScaleMask(const BlockMatrix& shape) {
    checkShape(shape);
    PlainVector mask(shape.dim * shape.dim, 0.0);
    for (std::size_t k = 0; k < shape.rows; ++k) {
        const std::size_t len = rowLength(shape, k);
        mask[k * shape.dim] = len >= 2 ? 1.0 / static_cast<double>(len - 1) : 0.0;
    }
    return mask;
}

PlainVector turningWindowWeights(const BlockMatrix& shape) {
    checkShape(shape);
    PlainVector mask(shape.dim * shape.dim, 0.0);
    for (std::size_t k = 0; k < shape.rows; ++k) {
        const std::size_t len = rowLength(shape, k);
        if (len < 3) {
            continue;
        }
        const double w = 1.0 / static_cast<double>(len - 2);
        for (std::size_t j = 0; j + 2 < len; ++j) {
            mask[k * shape.dim + j] = w;
        }
    }
    return mask;
}

BlockMatrix blockMean(const BlockMatrix& x) {
    checkShape(x);
    return x.withData(sumColumns(x.data, x.dim, meanScaleMask(x)));
}

BlockMatrix blockVariance(const BlockMatrix& x) {
    checkShape(x);
    if (x.cols < 2) {
        throw ParameterError("block variance needs blocks of at least 2 samples");
    }
    CipherVector mean = sumColumns(x.data, x.dim, meanScaleMask(x));
    CipherVector broadcast = replicateColumn(mean, x.dim);
    if (hasPaddingColumns(x)) {
        // Padding slots hold 0 in the data; zero the broadcast mean there so
        // the deviations cancel instead of contributing (0 - mean)^2.
        broadcast = mulPlain(broadcast, padColumnMask(x));
    }
    CipherVector dev = sub(x.data, broadcast);
    CipherVector sq = mul(dev, dev);
    return x.withData(sumColumns(sq, x.dim, varianceScaleMask(x)));
}

BlockMatrix turningRates(const BlockMatrix& x, const SignApproxParams& params) {
    checkShape(x);
    if (x.cols < 3) {
        throw ParameterError("turning rates need blocks of at least 3 samples");
    }
    // downs[j] ~ 1 if x_j > x_{j+1}. Slots past each row's last window are
    // cross-block contaminated and carry zero weight below.
    CipherVector downs = compare(x.data, rotate(x.data, 1), params);
    // a[j] = downs[j] + downs[j+1] - 1: 0 on the non-monotone windows,
    // +-1 on the monotone ones; window membership is 1 - a^2.
    CipherVector a = addScalar(add(downs, rotate(downs, 1)), -1.0);
    const PlainVector weights = turningWindowWeights(x);
    CipherVector wa = mulPlain(a, weights);
    CipherVector contrib = sub(weights, mul(wa, a));
    // Unmasked fold: first column exact, the rest rotation residue.
    return x.withData(sumColumns(contrib, x.dim, /*masked=*/false));
}

} // namespace ecpd

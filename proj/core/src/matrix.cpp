#include "ecpd/matrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace ecpd {

namespace {

int log2OfPow2(std::size_t v) {
    int lg = 0;
    while ((std::size_t{1} << lg) < v) {
        ++lg;
    }
    return lg;
}

void checkKernelArgs(const CipherVector& x, std::size_t dim) {
    if (!x.valid()) {
        throw ContextMismatchError("kernel applied to an uninitialized vector");
    }
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw ParameterError("kernel dimension must be a power of two, got " +
                             std::to_string(dim));
    }
    if (x.size() < dim * dim) {
        throw CapacityError("a " + std::to_string(dim) + "x" + std::to_string(dim) +
                            " layout needs " + std::to_string(dim * dim) +
                            " slots, context holds " + std::to_string(x.size()));
    }
}

enum class MaskKind { FirstRow, FirstColumn };

// The two fixed cleanup masks are shared across every kernel invocation of the
// same shape; built once and cached (single writer, concurrent readers).
std::shared_ptr<const PlainVector> cachedMask(std::size_t slots, std::size_t dim,
                                              MaskKind kind) {
    static std::mutex gate;
    static std::map<std::tuple<std::size_t, std::size_t, MaskKind>,
                    std::shared_ptr<const PlainVector>>
        cache;
    std::lock_guard<std::mutex> lock(gate);
    auto key = std::make_tuple(slots, dim, kind);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    auto mask = std::make_shared<PlainVector>(
        kind == MaskKind::FirstRow ? makeFirstRowMask(slots, dim)
                                   : makeFirstColumnMask(slots, dim));
    cache.emplace(key, mask);
    return mask;
}

} // namespace

std::size_t nextPowerOfTwo(std::size_t v) {
    std::size_t p = 1;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

BlockShape blockPartition(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        throw ParameterError("block partition needs positive length and block size");
    }
    if (m > n) {
        throw ParameterError("block size " + std::to_string(m) +
                             " exceeds series length " + std::to_string(n));
    }
    BlockShape shape;
    shape.blocks = (n + m - 1) / m;
    shape.lastLen = n - (shape.blocks - 1) * m;
    return shape;
}

PlainVector makeFirstRowMask(std::size_t slots, std::size_t dim) {
    PlainVector mask(slots, 0.0);
    for (std::size_t j = 0; j < dim && j < slots; ++j) {
        mask[j] = 1.0;
    }
    return mask;
}

PlainVector makeFirstColumnMask(std::size_t slots, std::size_t dim) {
    PlainVector mask(slots, 0.0);
    for (std::size_t i = 0; i * dim < slots && i < dim; ++i) {
        mask[i * dim] = 1.0;
    }
    return mask;
}

namespace {

// Shared rotate-accumulate ladder: `step` is the slot distance between
// neighbours along the folded axis (dim for rows, 1 for columns).
CipherVector foldSum(const CipherVector& x, std::size_t dim, std::size_t step) {
    CipherVector acc = x;
    const int lg = log2OfPow2(dim);
    for (int i = 0; i < lg; ++i) {
        acc = add(acc, rotate(acc, static_cast<long long>(step << i)));
    }
    return acc;
}

} // namespace

CipherVector sumRows(const CipherVector& x, std::size_t dim, bool masked) {
    checkKernelArgs(x, dim);
    if (dim == 1) {
        return x;
    }
    CipherVector acc = foldSum(x, dim, dim);
    if (masked) {
        acc = mulMask(acc, *cachedMask(x.size(), dim, MaskKind::FirstRow));
    }
    return acc;
}

CipherVector sumColumns(const CipherVector& x, std::size_t dim, bool masked) {
    checkKernelArgs(x, dim);
    if (dim == 1) {
        return x;
    }
    CipherVector acc = foldSum(x, dim, 1);
    if (masked) {
        acc = mulMask(acc, *cachedMask(x.size(), dim, MaskKind::FirstColumn));
    }
    return acc;
}

CipherVector sumRows(const CipherVector& x, std::size_t dim,
                     const PlainVector& finalMask) {
    checkKernelArgs(x, dim);
    // The mask carries data (scale factors), so it applies even when dim == 1
    // collapses the rotation ladder.
    return mulMask(dim == 1 ? x : foldSum(x, dim, dim), finalMask);
}

CipherVector sumColumns(const CipherVector& x, std::size_t dim,
                        const PlainVector& finalMask) {
    checkKernelArgs(x, dim);
    return mulMask(dim == 1 ? x : foldSum(x, dim, 1), finalMask);
}

CipherVector replicateRow(const CipherVector& x, std::size_t dim) {
    checkKernelArgs(x, dim);
    if (dim == 1) {
        return x;
    }
    CipherVector acc = x;
    const int lg = log2OfPow2(dim);
    for (int i = 0; i < lg; ++i) {
        acc = add(acc, rotate(acc, -static_cast<long long>(dim << i)));
    }
    return acc;
}

CipherVector replicateColumn(const CipherVector& x, std::size_t dim) {
    checkKernelArgs(x, dim);
    if (dim == 1) {
        return x;
    }
    CipherVector acc = x;
    const int lg = log2OfPow2(dim);
    for (int i = 0; i < lg; ++i) {
        acc = add(acc, rotate(acc, -(1LL << i)));
    }
    return acc;
}

CipherVector transposeRow(const CipherVector& x, std::size_t dim, bool masked) {
    checkKernelArgs(x, dim);
    if (dim == 1) {
        return x;
    }
    CipherVector acc = x;
    const int lg = log2OfPow2(dim);
    const long long stride = static_cast<long long>(dim) * static_cast<long long>(dim - 1);
    for (int i = 1; i <= lg; ++i) {
        acc = add(acc, rotate(acc, -(stride >> i)));
    }
    if (masked) {
        acc = mulMask(acc, *cachedMask(x.size(), dim, MaskKind::FirstColumn));
    }
    return acc;
}

CipherVector transposeColumn(const CipherVector& x, std::size_t dim, bool masked) {
    checkKernelArgs(x, dim);
    if (dim == 1) {
        return x;
    }
    CipherVector acc = x;
    const int lg = log2OfPow2(dim);
    const long long stride = static_cast<long long>(dim) * static_cast<long long>(dim - 1);
    for (int i = 1; i <= lg; ++i) {
        acc = add(acc, rotate(acc, stride >> i));
    }
    if (masked) {
        acc = mulMask(acc, *cachedMask(x.size(), dim, MaskKind::FirstRow));
    }
    return acc;
}

BlockMatrix sumRows(const BlockMatrix& m, bool masked) {
    return m.withData(sumRows(m.data, m.dim, masked));
}

BlockMatrix sumColumns(const BlockMatrix& m, bool masked) {
    return m.withData(sumColumns(m.data, m.dim, masked));
}

BlockMatrix replicateRow(const BlockMatrix& m) {
    return m.withData(replicateRow(m.data, m.dim));
}

BlockMatrix replicateColumn(const BlockMatrix& m) {
    return m.withData(replicateColumn(m.data, m.dim));
}

BlockMatrix transposeRow(const BlockMatrix& m, bool masked) {
    return m.withData(transposeRow(m.data, m.dim, masked));
}

BlockMatrix transposeColumn(const BlockMatrix& m, bool masked) {
    return m.withData(transposeColumn(m.data, m.dim, masked));
}

std::vector<double> readRow(const BlockMatrix& m, std::size_t row) {
    if (row >= m.dim) {
        throw ParameterError("row index out of range");
    }
    const auto& slots = decode(m.data);
    std::vector<double> out(m.dim);
    for (std::size_t j = 0; j < m.dim; ++j) {
        out[j] = slots[row * m.dim + j];
    }
    return out;
}

std::vector<double> readColumn(const BlockMatrix& m, std::size_t col) {
    if (col >= m.dim) {
        throw ParameterError("column index out of range");
    }
    const auto& slots = decode(m.data);
    std::vector<double> out(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
        out[i] = slots[i * m.dim + col];
    }
    return out;
}

} // namespace ecpd

#include "ecpd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecpd/cusum.hpp"

namespace ecpd {

namespace {

constexpr std::size_t kMinSamples = 9;
constexpr std::size_t kMinBlocks = 3;

void checkSeries(const std::vector<double>& series) {
    if (series.size() < kMinSamples) {
        throw ParameterError("detection needs at least " +
                             std::to_string(kMinSamples) + " samples, got " +
                             std::to_string(series.size()));
    }
    for (double v : series) {
        if (!std::isfinite(v)) {
            throw ParameterError("series contains a non-finite sample");
        }
    }
}

std::size_t minBlockSizeFor(StatKind stat) {
    switch (stat) {
    case StatKind::Mean:
        return 1;
    case StatKind::Variance:
        return 2;
    case StatKind::TurningRate:
        return 3;
    }
    return 1;
}

std::size_t resolveBlockSize(std::size_t n, std::size_t requested, StatKind stat) {
    const std::size_t m = requested == 0 ? chooseBlockSize(n) : requested;
    if (m == 0 || m > n) {
        throw ParameterError("block size must be in [1, n]");
    }
    if (m < minBlockSizeFor(stat)) {
        throw ParameterError("block size " + std::to_string(m) +
                             " is below the minimum " +
                             std::to_string(minBlockSizeFor(stat)) +
                             " for the requested statistic");
    }
    if (blockPartition(n, m).blocks < kMinBlocks) {
        throw ParameterError("block size " + std::to_string(m) +
                             " leaves fewer than " + std::to_string(kMinBlocks) +
                             " blocks");
    }
    return m;
}

} // namespace

std::size_t chooseBlockSize(std::size_t n) {
    if (n == 0) {
        throw ParameterError("cannot choose a block size for an empty series");
    }
    const double root = std::sqrt(static_cast<double>(n));
    const std::size_t rounded = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(root)));
    // Snap to the closer neighbouring power of two when within 25% of sqrt(n);
    // ties prefer the larger (fewer, fuller blocks).
    std::size_t lower = std::size_t{1} << static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(rounded))));
    std::size_t upper = lower << 1;
    const double dLower = std::abs(static_cast<double>(lower) - root);
    const double dUpper = std::abs(static_cast<double>(upper) - root);
    const std::size_t snapped = dUpper <= dLower ? upper : lower;
    const double dist = std::min(dLower, dUpper);
    return dist <= 0.25 * root ? snapped : rounded;
}

Normalized normalizeSeries(const std::vector<double>& series, double low, double high) {
    if (!(low < high) || !std::isfinite(low) || !std::isfinite(high)) {
        throw ParameterError("normalization bounds must be finite with low < high");
    }
    Normalized out;
    out.values.resize(series.size());
    const double span = high - low;
    for (std::size_t i = 0; i < series.size(); ++i) {
        double v = (series[i] - low) / span;
        if (v < 0.0) {
            v = 0.0;
            ++out.clamped;
        } else if (v > 1.0) {
            v = 1.0;
            ++out.clamped;
        }
        out.values[i] = v;
    }
    return out;
}

std::size_t gridDimFor(std::size_t n, std::size_t blockSize) {
    const BlockShape shape = blockPartition(n, blockSize);
    return nextPowerOfTwo(std::max(shape.blocks, blockSize));
}

BlockMatrix encodeMatrix(EvalContext& ctx, const std::vector<double>& normalized,
                         std::size_t blockSize) {
    const BlockShape shape = blockPartition(normalized.size(), blockSize);
    const std::size_t dim = gridDimFor(normalized.size(), blockSize);
    if (ctx.slotCount() < dim * dim) {
        throw CapacityError("grid of dimension " + std::to_string(dim) +
                            " needs " + std::to_string(dim * dim) +
                            " slots, context holds " + std::to_string(ctx.slotCount()));
    }
    std::vector<double> slots(ctx.slotCount(), 0.0);
    for (std::size_t k = 0; k < shape.blocks; ++k) {
        const std::size_t len = k + 1 == shape.blocks ? shape.lastLen : blockSize;
        for (std::size_t j = 0; j < len; ++j) {
            slots[k * dim + j] = normalized[k * blockSize + j];
        }
    }
    BlockMatrix m;
    m.rows = shape.blocks;
    m.cols = blockSize;
    m.lastCols = shape.lastLen;
    m.dim = dim;
    m.data = encrypt(ctx, slots);
    return m;
}

ChangePointResult detect(const std::vector<double>& series, const CPDConfig& cfg) {
    checkSeries(series);
    const std::size_t n = series.size();
    const std::size_t m = resolveBlockSize(n, cfg.blockSize, cfg.stat);
    const Normalized norm = normalizeSeries(series, cfg.boundLow, cfg.boundHigh);
    const std::size_t dim = gridDimFor(n, m);

    EvalContext ctx(dim * dim, cfg.depthBudget, cfg.noiseStddev, cfg.seed);
    const BlockMatrix packed = encodeMatrix(ctx, norm.values, m);

    BlockMatrix stats;
    switch (cfg.stat) {
    case StatKind::Mean:
        stats = blockMean(packed);
        break;
    case StatKind::Variance:
        stats = blockVariance(packed);
        break;
    case StatKind::TurningRate:
        stats = turningRates(packed, cfg.sign);
        break;
    }

    const CusumResult contrast = cusumArgmax(stats, cfg.sign, cfg.fastArgmax);

    ChangePointResult out;
    const std::size_t nb = contrast.candidates;
    const auto& hotSlots = decode(contrast.oneHot);
    out.oneHot.assign(hotSlots.begin(), hotSlots.begin() + static_cast<long>(nb));
    // The product reduction drives every non-maximal column toward zero, so the
    // detected block is the first slot that clears 0.5.  When no slot does, the
    // gaps were below the comparator's resolution: surface a confidence failure
    // and fall back to the largest slot as the best-effort reading.
    std::size_t best = nb;
    for (std::size_t j = 0; j < nb; ++j) {
        if (out.oneHot[j] > 0.5) {
            best = j;
            break;
        }
    }
    out.confidenceOk = best < nb;
    if (!out.confidenceOk) {
        best = 0;
        for (std::size_t j = 1; j < nb; ++j) {
            if (out.oneHot[j] > out.oneHot[best]) {
                best = j;
            }
        }
    }
    out.tauBlock = best + 1;
    out.tauIndex = std::min(n, m * out.tauBlock);

    const auto& gapSlots = decode(contrast.squaredGaps);
    double top = 0.0, second = 0.0;
    std::size_t topAt = 0;
    for (std::size_t j = 0; j < nb; ++j) {
        const double g = std::sqrt(std::max(0.0, gapSlots[j]));
        if (g > top) {
            top = g;
            topAt = j;
        }
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (j != topAt) {
            second = std::max(second, std::sqrt(std::max(0.0, gapSlots[j])));
        }
    }

    out.diag.ops = ctx.counters();
    out.diag.maxDepth = ctx.maxDepthSeen();
    out.diag.clampedSamples = norm.clamped;
    out.diag.blocks = nb;
    out.diag.blockSize = m;
    out.diag.gridDim = dim;
    out.diag.peak = out.oneHot[best];
    out.diag.topGap = top;
    out.diag.secondGap = second;
    return out;
}

PlainDetection detectMirror(const std::vector<double>& series, const CPDConfig& cfg) {
    checkSeries(series);
    const std::size_t m = resolveBlockSize(series.size(), cfg.blockSize, cfg.stat);
    const Normalized norm = normalizeSeries(series, cfg.boundLow, cfg.boundHigh);
    PlainDetection det = detectPlain(norm.values, m, cfg.stat);
    det.tauIndex = std::min(series.size(), det.tauIndex);
    return det;
}

} // namespace ecpd

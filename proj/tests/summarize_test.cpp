#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <gtest/gtest.h>

#include "ecpd/backend.hpp"
#include "ecpd/matrix.hpp"
#include "ecpd/pipeline.hpp"
#include "ecpd/plaintext.hpp"
#include "ecpd/rng.hpp"
#include "ecpd/summarize.hpp"

namespace ecpd {
namespace {

// Values in [0, 1] whose adjacent gaps stay above `minGap`, so polynomial
// comparisons of neighbours are far from their resolution limit.
std::vector<double> gappedSeries(std::size_t n, double minGap, std::uint64_t seed) {
    SplitMixRng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    double prev = -1.0;
    while (out.size() < n) {
        const double v = rng.uniform01();
        if (prev >= 0.0 && std::abs(v - prev) < minGap) {
            continue;
        }
        out.push_back(v);
        prev = v;
    }
    return out;
}

TEST(SummarizeTest, BlockMeanPins) {
    {
        EvalContext ctx(4);
        const BlockMatrix x = encodeMatrix(ctx, {0.2, 0.4, 0.6, 0.8}, 2);
        const std::vector<double> mean = readColumn(blockMean(x), 0);
        EXPECT_NEAR(mean[0], 0.3, 1e-12);
        EXPECT_NEAR(mean[1], 0.7, 1e-12);
    }
    {
        EvalContext ctx(4);
        const BlockMatrix x = encodeMatrix(ctx, {0.4, 0.4, 0.4, 0.4}, 2);
        const std::vector<double> mean = readColumn(blockMean(x), 0);
        EXPECT_DOUBLE_EQ(mean[0], 0.4);
        EXPECT_DOUBLE_EQ(mean[1], 0.4);
    }
    {
        EvalContext ctx(4);
        const BlockMatrix x = encodeMatrix(ctx, {0.0, 1.0, 1.0, 1.0}, 2);
        const std::vector<double> mean = readColumn(blockMean(x), 0);
        EXPECT_DOUBLE_EQ(mean[0], 0.5);
        EXPECT_DOUBLE_EQ(mean[1], 1.0);
    }
}

TEST(SummarizeTest, BlockMeanLeavesUnpopulatedRowsZero) {
    EvalContext ctx(16);
    // 3 blocks on a 4-row grid: row 3 is padding and must stay exactly zero.
    const BlockMatrix x = encodeMatrix(ctx, {0.2, 0.4, 0.6, 0.8, 1.0, 0.0}, 2);
    ASSERT_EQ(x.rows, 3u);
    ASSERT_EQ(x.dim, 4u);
    const std::vector<double> mean = readColumn(blockMean(x), 0);
    EXPECT_NEAR(mean[0], 0.3, 1e-12);
    EXPECT_NEAR(mean[1], 0.7, 1e-12);
    EXPECT_NEAR(mean[2], 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(mean[3], 0.0);
}

TEST(SummarizeTest, BlockMeanCostIsOneMaskedFold) {
    EvalContext ctx(4);
    const BlockMatrix x = encodeMatrix(ctx, {0.2, 0.4, 0.6, 0.8}, 2);
    const OpCounters before = ctx.counters();
    const BlockMatrix mean = blockMean(x);
    const OpCounters d = ctx.counters() - before;
    EXPECT_EQ(d.maskMults, 1u);
    EXPECT_EQ(d.rotations, 1u); // log2(dim) with dim == 2
    EXPECT_EQ(d.algorithmMults(), 0u);
    EXPECT_EQ(mean.data.depth(), 1);
}

TEST(SummarizeTest, BlockVariancePins) {
    {
        EvalContext ctx(4);
        const BlockMatrix x = encodeMatrix(ctx, {0.0, 1.0}, 2);
        EXPECT_DOUBLE_EQ(readColumn(blockVariance(x), 0)[0], 0.5);
    }
    {
        EvalContext ctx(16);
        const BlockMatrix x = encodeMatrix(ctx, {0.0, 0.0, 1.0, 1.0}, 4);
        EXPECT_DOUBLE_EQ(readColumn(blockVariance(x), 0)[0], 1.0 / 3.0);
    }
    {
        EvalContext ctx(16);
        const BlockMatrix x = encodeMatrix(ctx, {0.7, 0.7, 0.7, 0.7}, 4);
        EXPECT_DOUBLE_EQ(readColumn(blockVariance(x), 0)[0], 0.0);
    }
}

TEST(SummarizeTest, BlockVarianceShortFinalBlockYieldsZero) {
    EvalContext ctx(16);
    // n = 10, m = 3: final block holds a single sample, so its divisor weight
    // is zero and the statistic must come out exactly 0.
    const std::vector<double> values = {0.1, 0.9, 0.4, 0.6, 0.2, 0.8, 0.3, 0.7, 0.5, 0.95};
    const BlockMatrix x = encodeMatrix(ctx, values, 3);
    ASSERT_EQ(x.rows, 4u);
    ASSERT_EQ(x.lastCols, 1u);
    const std::vector<double> var = readColumn(blockVariance(x), 0);
    const std::vector<double> want = blockSummaries(values, 3, StatKind::Variance);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(var[k], want[k], 1e-12) << "block " << k;
    }
    EXPECT_DOUBLE_EQ(var[3], 0.0);
}

TEST(SummarizeTest, BlockVarianceCostsWithAndWithoutPadding) {
    {
        // Full grid (cols == dim, full final block): no padding cleanup.
        EvalContext ctx(16);
        const std::vector<double> values = {0.1, 0.9, 0.4, 0.6, 0.2, 0.8, 0.3, 0.7,
                                            0.5, 0.0, 1.0, 0.45, 0.15, 0.85, 0.35, 0.65};
        const BlockMatrix x = encodeMatrix(ctx, values, 4);
        const OpCounters before = ctx.counters();
        (void)blockVariance(x);
        const OpCounters d = ctx.counters() - before;
        EXPECT_EQ(d.maskMults, 2u);
        EXPECT_EQ(d.cipherMults, 1u);
        EXPECT_EQ(d.plainMults, 0u);
        EXPECT_EQ(d.rotations, 6u); // 3 kernels x log2(4)
    }
    {
        // Padded grid: one plaintext multiplication zeroes the broadcast mean
        // over the padding columns.
        EvalContext ctx(16);
        const std::vector<double> values = {0.1, 0.9, 0.4, 0.6, 0.2, 0.8, 0.3, 0.7, 0.5, 0.95};
        const BlockMatrix x = encodeMatrix(ctx, values, 3);
        const OpCounters before = ctx.counters();
        (void)blockVariance(x);
        const OpCounters d = ctx.counters() - before;
        EXPECT_EQ(d.maskMults, 2u);
        EXPECT_EQ(d.cipherMults, 1u);
        EXPECT_EQ(d.plainMults, 1u);
        EXPECT_EQ(d.rotations, 6u);
    }
}

TEST(SummarizeTest, TurningRateTruthTableOverAllSixPatterns) {
    // One block per length-3 ordinal pattern, encoded as ranks / 4. Exactly
    // the four non-monotone patterns count as turning windows.
    std::vector<double> values;
    for (const auto& pattern : kOrdinalPatterns) {
        for (int r : pattern) {
            values.push_back(static_cast<double>(r) / 4.0);
        }
    }
    EvalContext ctx(64);
    const BlockMatrix x = encodeMatrix(ctx, values, 3);
    ASSERT_EQ(x.rows, 6u);
    const std::vector<double> rates = readColumn(turningRates(x), 0);
    for (std::size_t k = 0; k < 6; ++k) {
        const double want = isTurningPattern(kOrdinalPatterns[k]) ? 1.0 : 0.0;
        EXPECT_NEAR(rates[k], want, 0.02) << "pattern " << k;
    }
}

TEST(SummarizeTest, TurningRateWorkedBlock) {
    const std::vector<double> values = {0.42, 0.31, 0.50, 0.63, 0.29, 0.71, 0.18, 0.37};
    EvalContext ctx(64);
    const BlockMatrix x = encodeMatrix(ctx, values, 8);
    const double got = readColumn(turningRates(x), 0)[0];
    EXPECT_NEAR(got, 5.0 / 6.0, 0.01);
    EXPECT_DOUBLE_EQ(blockSummaries(values, 8, StatKind::TurningRate)[0], 5.0 / 6.0);
}

TEST(SummarizeTest, TurningRateShortFinalBlockYieldsZero) {
    EvalContext ctx(16);
    // n = 10, m = 4: final block holds 2 samples — fewer than one window — so
    // its weights vanish and the statistic is exactly zero.
    const std::vector<double> values = {0.1, 0.9, 0.4, 0.6, 0.2, 0.8, 0.3, 0.7, 0.5, 0.95};
    const BlockMatrix x = encodeMatrix(ctx, values, 4);
    ASSERT_EQ(x.rows, 3u);
    ASSERT_EQ(x.lastCols, 2u);
    const std::vector<double> rates = readColumn(turningRates(x), 0);
    EXPECT_NEAR(rates[2], 0.0, 1e-15);
}

TEST(SummarizeTest, TurningRateCostAndDepth) {
    EvalContext ctx(64);
    const std::vector<double> values = {0.42, 0.31, 0.50, 0.63, 0.29, 0.71, 0.18, 0.37};
    const BlockMatrix x = encodeMatrix(ctx, values, 8);
    const OpCounters before = ctx.counters();
    const BlockMatrix rates = turningRates(x);
    const OpCounters d = ctx.counters() - before;
    EXPECT_EQ(d.compares, 1u);
    EXPECT_EQ(d.maskMults, 0u);
    EXPECT_EQ(d.rotations, 3u + 2u); // fold (log2 dim) + neighbour/window shifts
    // Comparison cost plus one plaintext (weights) and one ciphertext product.
    EXPECT_EQ(d.algorithmMults(), compareMultCost({}) + 2);
    EXPECT_EQ(rates.data.depth(), compareDepthCost({}) + 2);
}

TEST(SummarizeTest, RandomBlocksMatchTheCleartextSummaries) {
    const std::array<std::size_t, 2> blockSizes = {8, 16};
    std::uint64_t seed = 1001;
    for (const std::size_t m : blockSizes) {
        const std::size_t n = 6 * m + m / 2; // short final block included
        const std::vector<double> values = gappedSeries(n, 0.05, seed++);
        EvalContext ctx(m * m >= 64 ? m * m : 64);
        const BlockMatrix x = encodeMatrix(ctx, values, m);

        const std::vector<double> encMean = readColumn(blockMean(x), 0);
        const std::vector<double> encVar = readColumn(blockVariance(x), 0);
        const std::vector<double> encTurn = readColumn(turningRates(x), 0);
        const std::vector<double> wantMean = blockSummaries(values, m, StatKind::Mean);
        const std::vector<double> wantVar = blockSummaries(values, m, StatKind::Variance);
        const std::vector<double> wantTurn = blockSummaries(values, m, StatKind::TurningRate);
        ASSERT_EQ(wantMean.size(), x.rows);
        for (std::size_t k = 0; k < x.rows; ++k) {
            EXPECT_NEAR(encMean[k], wantMean[k], 1e-9) << "m=" << m << " block " << k;
            EXPECT_NEAR(encVar[k], wantVar[k], 1e-9) << "m=" << m << " block " << k;
            EXPECT_NEAR(encTurn[k], wantTurn[k], 1e-6) << "m=" << m << " block " << k;
        }
    }
}

TEST(SummarizeTest, WeightMasksEncodeTheEdgeConventions) {
    EvalContext ctx(16);
    const std::vector<double> values = {0.1, 0.9, 0.4, 0.6, 0.2, 0.8, 0.3, 0.7, 0.5, 0.95};
    const BlockMatrix shape = encodeMatrix(ctx, values, 3); // rows 4, lastCols 1, dim 4

    const PlainVector meanMask = meanScaleMask(shape);
    ASSERT_GE(meanMask.size(), 16u);
    EXPECT_DOUBLE_EQ(meanMask[0], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(meanMask[4], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(meanMask[8], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(meanMask[12], 1.0); // final block holds one sample
    EXPECT_DOUBLE_EQ(meanMask[1], 0.0);
    EXPECT_DOUBLE_EQ(meanMask[5], 0.0);

    const PlainVector varMask = varianceScaleMask(shape);
    EXPECT_DOUBLE_EQ(varMask[0], 0.5);
    EXPECT_DOUBLE_EQ(varMask[8], 0.5);
    EXPECT_DOUBLE_EQ(varMask[12], 0.0); // length-1 block: divisor weight zero

    const PlainVector turnWeights = turningWindowWeights(shape);
    EXPECT_DOUBLE_EQ(turnWeights[0], 1.0); // 1 / (3 - 2), window at j = 0 only
    EXPECT_DOUBLE_EQ(turnWeights[1], 0.0);
    EXPECT_DOUBLE_EQ(turnWeights[2], 0.0);
    EXPECT_DOUBLE_EQ(turnWeights[4], 1.0);
    EXPECT_DOUBLE_EQ(turnWeights[12], 0.0); // final block too short for a window
    EXPECT_DOUBLE_EQ(turnWeights[13], 0.0);
}

TEST(SummarizeTest, ShortBlocksAreRejected) {
    EvalContext ctx(16);
    const BlockMatrix one = encodeMatrix(ctx, {0.1, 0.9, 0.4}, 1);
    EXPECT_THROW((void)blockVariance(one), ParameterError);
    EXPECT_THROW((void)turningRates(one), ParameterError);
    const BlockMatrix two = encodeMatrix(ctx, {0.1, 0.9, 0.4, 0.6}, 2);
    EXPECT_THROW((void)turningRates(two), ParameterError);
}

} // namespace
} // namespace ecpd

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "ecpd/backend.hpp"
#include "ecpd/compare.hpp"
#include "ecpd/datagen.hpp"
#include "ecpd/pipeline.hpp"

namespace ecpd {
namespace {

std::vector<double> stepSeries(std::size_t n, std::size_t tau, double low, double high) {
    std::vector<double> out(n, low);
    for (std::size_t t = tau; t < n; ++t) {
        out[t] = high;
    }
    return out;
}

TEST(PipelineTest, AutomaticBlockSizePins) {
    EXPECT_EQ(chooseBlockSize(9), 3u);
    EXPECT_EQ(chooseBlockSize(16), 4u);
    EXPECT_EQ(chooseBlockSize(100), 8u);       // 8 lies within 25% of sqrt(100)
    EXPECT_EQ(chooseBlockSize(1000), 32u);     // 32 within 25% of 31.6
    EXPECT_EQ(chooseBlockSize(10000), 100u);   // no power of two within 25%
    EXPECT_EQ(chooseBlockSize(40000), 200u);   // no power of two within 25%
    EXPECT_EQ(chooseBlockSize(1000000), 1024u);
}

TEST(PipelineTest, NormalizationMapsAndClamps) {
    {
        const Normalized norm = normalizeSeries({-1.0, 0.0, 1.0, 3.0}, -1.0, 3.0);
        EXPECT_EQ(norm.values, (std::vector<double>{0.0, 0.25, 0.5, 1.0}));
        EXPECT_EQ(norm.clamped, 0u);
    }
    {
        const Normalized norm = normalizeSeries({-2.0, 5.0, 1.0}, -1.0, 3.0);
        EXPECT_DOUBLE_EQ(norm.values[0], 0.0);
        EXPECT_DOUBLE_EQ(norm.values[1], 1.0);
        EXPECT_DOUBLE_EQ(norm.values[2], 0.5);
        EXPECT_EQ(norm.clamped, 2u);
    }
    EXPECT_THROW((void)normalizeSeries({1.0}, 2.0, 2.0), ParameterError);
    EXPECT_THROW((void)normalizeSeries({1.0}, 3.0, 2.0), ParameterError);
}

TEST(PipelineTest, GridSizingAndPacking) {
    EXPECT_EQ(gridDimFor(9, 3), 4u);
    EXPECT_EQ(gridDimFor(10, 3), 4u);
    EXPECT_EQ(gridDimFor(40000, 200), 256u);
    EXPECT_EQ(gridDimFor(100, 10), 16u);

    EvalContext ctx(16);
    const std::vector<double> values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const BlockMatrix m = encodeMatrix(ctx, values, 3);
    EXPECT_EQ(m.rows, 4u);
    EXPECT_EQ(m.cols, 3u);
    EXPECT_EQ(m.lastCols, 1u);
    EXPECT_EQ(m.dim, 4u);
    const std::vector<double>& slots = decode(m.data);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t t = k * 3 + j;
            const double want = (j < 3 && t < values.size()) ? values[t] : 0.0;
            EXPECT_DOUBLE_EQ(slots[k * 4 + j], want) << "slot (" << k << "," << j << ")";
        }
    }

    EvalContext small(16);
    EXPECT_THROW((void)encodeMatrix(small, std::vector<double>(100, 0.5), 10),
                 CapacityError);
}

TEST(PipelineTest, DetectsAMeanStep) {
    const std::vector<double> series = stepSeries(100, 50, 0.0, 1.0);
    CPDConfig cfg;
    cfg.stat = StatKind::Mean;
    cfg.blockSize = 10;
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;
    const ChangePointResult res = detect(series, cfg);

    EXPECT_EQ(res.tauBlock, 5u);
    EXPECT_EQ(res.tauIndex, 50u);
    EXPECT_TRUE(res.confidenceOk);
    EXPECT_GT(res.diag.peak, 0.5);
    EXPECT_EQ(res.diag.clampedSamples, 0u);
    EXPECT_EQ(res.diag.blocks, 10u);
    EXPECT_EQ(res.diag.blockSize, 10u);
    EXPECT_EQ(res.diag.gridDim, 16u);
    EXPECT_EQ(res.diag.maxDepth, 34); // statistic depth + comparison + ladder
    ASSERT_EQ(res.oneHot.size(), 10u);
    for (std::size_t k = 0; k < res.oneHot.size(); ++k) {
        if (k + 1 == res.tauBlock) {
            EXPECT_GT(res.oneHot[k], 0.5);
        } else {
            EXPECT_LT(res.oneHot[k], 0.5) << "block " << k;
        }
    }
    EXPECT_GT(res.diag.topGap, res.diag.secondGap);
    EXPECT_GE(res.diag.secondGap, 0.0);
}

TEST(PipelineTest, DepthWatermarksPerStatistic) {
    const std::vector<double> series = stepSeries(1024, 512, 0.2, 0.8);
    CPDConfig cfg;
    cfg.blockSize = 32; // 32 blocks on a 32-grid: log2(dim) = 5
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;

    cfg.stat = StatKind::Mean;
    EXPECT_EQ(detect(series, cfg).diag.maxDepth, 35);
    // One level below the padded-grid watermark: with every block full there
    // is no pad-correction product on the variance path.
    cfg.stat = StatKind::Variance;
    EXPECT_EQ(detect(series, cfg).diag.maxDepth, 37);
    cfg.stat = StatKind::TurningRate;
    EXPECT_EQ(detect(series, cfg).diag.maxDepth, 60);
}

TEST(PipelineTest, DepthBudgetOverflowSurfaces) {
    const std::vector<double> series = stepSeries(100, 50, 0.0, 1.0);
    CPDConfig cfg;
    cfg.stat = StatKind::TurningRate;
    cfg.blockSize = 10;
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;
    cfg.depthBudget = 10;
    EXPECT_THROW((void)detect(series, cfg), DepthOverflowError);
}

TEST(PipelineTest, ConstantSeriesReportsLowConfidence) {
    const std::vector<double> series(100, 0.5);
    CPDConfig cfg;
    cfg.stat = StatKind::Mean;
    cfg.blockSize = 10;
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;
    const ChangePointResult res = detect(series, cfg);
    EXPECT_FALSE(res.confidenceOk);
    for (const double v : res.oneHot) {
        EXPECT_LT(v, 0.5);
    }
    EXPECT_EQ(res.tauIndex,
              std::min<std::size_t>(series.size(), res.tauBlock * res.diag.blockSize));
}

TEST(PipelineTest, InputValidation) {
    CPDConfig cfg;
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;

    // Too short for three blocks of meaningful size.
    EXPECT_THROW((void)detect(std::vector<double>(8, 0.1), cfg), ParameterError);

    // Degenerate bounds.
    {
        CPDConfig bad = cfg;
        bad.boundLow = bad.boundHigh = 0.5;
        EXPECT_THROW((void)detect(stepSeries(100, 50, 0.0, 1.0), bad), ParameterError);
    }

    // Block size leaving fewer than three blocks.
    {
        CPDConfig bad = cfg;
        bad.blockSize = 5;
        EXPECT_THROW((void)detect(std::vector<double>(9, 0.1), bad), ParameterError);
    }

    // Per-statistic minimum block lengths.
    {
        CPDConfig bad = cfg;
        bad.stat = StatKind::Variance;
        bad.blockSize = 1;
        EXPECT_THROW((void)detect(stepSeries(100, 50, 0.0, 1.0), bad), ParameterError);
        bad.stat = StatKind::TurningRate;
        bad.blockSize = 2;
        EXPECT_THROW((void)detect(stepSeries(100, 50, 0.0, 1.0), bad), ParameterError);
    }

    // Non-finite samples.
    {
        std::vector<double> series = stepSeries(100, 50, 0.0, 1.0);
        series[10] = std::numeric_limits<double>::quiet_NaN();
        EXPECT_THROW((void)detect(series, cfg), ParameterError);
    }
}

TEST(PipelineTest, AgreesWithTheCleartextMirrorOnClearMargins) {
    const double gamma = resolutionBound({});
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SeriesSpec spec;
        spec.n = 1000;
        spec.shift = ShiftKind::MeanShift;
        spec.noise = NoiseKind::Gaussian;
        spec.muAfter = 3.0; // a clear level shift keeps most margins resolvable
        spec.seed = seed;
        const GeneratedSeries gen = genSeries(spec);

        CPDConfig cfg;
        cfg.stat = StatKind::Mean;
        cfg.boundLow = gen.suggestedLow;
        cfg.boundHigh = gen.suggestedHigh;

        const PlainDetection mirror = detectMirror(gen.values, cfg);
        if (mirror.cusum.margin() < gamma) {
            continue; // below the comparator's resolution: agreement not owed
        }
        ++checked;
        const ChangePointResult enc = detect(gen.values, cfg);
        EXPECT_EQ(enc.tauBlock, mirror.tauBlock) << "seed " << seed;
        EXPECT_EQ(enc.tauIndex, mirror.tauIndex) << "seed " << seed;
        EXPECT_TRUE(enc.confidenceOk) << "seed " << seed;
    }
    EXPECT_GE(checked, 15) << "suspiciously many sub-resolution margins";
}

TEST(PipelineTest, NoisyBackendIsSeedDeterministic) {
    const std::vector<double> series = stepSeries(100, 50, 0.0, 1.0);
    CPDConfig cfg;
    cfg.stat = StatKind::Mean;
    cfg.blockSize = 10;
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;
    cfg.noiseStddev = 0.001;
    cfg.seed = 7;

    const ChangePointResult a = detect(series, cfg);
    const ChangePointResult b = detect(series, cfg);
    EXPECT_EQ(a.oneHot, b.oneHot);
    EXPECT_EQ(a.tauBlock, b.tauBlock);
    EXPECT_EQ(a.diag.ops.totalMults(), b.diag.ops.totalMults());

    cfg.seed = 8;
    const ChangePointResult c = detect(series, cfg);
    EXPECT_NE(a.oneHot, c.oneHot);
    EXPECT_EQ(a.tauBlock, c.tauBlock); // noise at this scale never flips the call
}

TEST(PipelineTest, SelectionPathsAgreeAndTheirCostGapIsPinned) {
    const std::vector<double> series = stepSeries(100, 50, 0.0, 1.0);
    CPDConfig cfg;
    cfg.stat = StatKind::Mean;
    cfg.blockSize = 10; // grid dim 16
    cfg.boundLow = 0.0;
    cfg.boundHigh = 1.0;

    cfg.fastArgmax = true;
    const ChangePointResult fast = detect(series, cfg);
    cfg.fastArgmax = false;
    const ChangePointResult slow = detect(series, cfg);

    EXPECT_EQ(fast.tauBlock, slow.tauBlock);
    EXPECT_EQ(fast.tauIndex, slow.tauIndex);
    // Rank-based selection pays two extra comparisons (72 mults), the
    // indicator product, and a row mask for the partially filled grid, minus
    // the log2(16) ladder the product path would have spent.
    EXPECT_EQ(slow.diag.ops.algorithmMults() - fast.diag.ops.algorithmMults(),
              72u + 1u + 1u - 4u);
    EXPECT_EQ(slow.diag.ops.compares - fast.diag.ops.compares, 2u);
}

} // namespace
} // namespace ecpd

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ecpd/backend.hpp"
#include "ecpd/compare.hpp"
#include "ecpd/matrix.hpp"
#include "ecpd/plaintext.hpp"
#include "ecpd/summarize.hpp"

namespace ecpd {

// End-to-end detection: normalize, block-pack into the SIMD grid, summarize,
// contrast, select — entirely through the slot-semantics backend — and decode
// the selection plus run diagnostics.

struct CPDConfig {
    StatKind stat = StatKind::Mean;
    // Samples per block; 0 selects near sqrt(n), snapped to a power of two
    // when one lies within 25%.
    std::size_t blockSize = 0;
    // Normalization bounds mapped onto [0, 1]; samples outside are clamped
    // (and counted in the diagnostics).
    double boundLow = 0.0;
    double boundHigh = 1.0;
    SignApproxParams sign{};
    int depthBudget = kDefaultDepthBudget;
    // Per-multiplication slot noise of the emulated backend (0 = exact).
    double noiseStddev = 0.0;
    std::uint64_t seed = 0;
    bool fastArgmax = true;
};

struct DetectionDiagnostics {
    OpCounters ops;
    int maxDepth = 0;
    std::size_t clampedSamples = 0;
    std::size_t blocks = 0;    // n_b
    std::size_t blockSize = 0; // resolved m
    std::size_t gridDim = 0;   // N
    // Decoded confidence: the winning one-hot slot value (1 = clean win).
    double peak = 0.0;
    // Top and runner-up |scaled gap| read back from the contrast, comparable
    // against the comparator's resolution bound.
    double topGap = 0.0;
    double secondGap = 0.0;
};

struct ChangePointResult {
    std::size_t tauBlock = 0; // 1-based detected block
    std::size_t tauIndex = 0; // sample index blockSize * tauBlock (capped at n)
    // True when the winning slot decodes strictly above 0.5 — the selection
    // is trustworthy. False on damped/ambiguous selections; tauBlock still
    // reports the best reading.
    bool confidenceOk = false;
    std::vector<double> oneHot; // decoded selection, one entry per block
    DetectionDiagnostics diag;
};

// Automatic block size: nearest integer to sqrt(n), snapped to the nearest
// power of two when that lies within 25% of sqrt(n) (power-of-two blocks keep
// the grid minimal).
std::size_t chooseBlockSize(std::size_t n);

struct Normalized {
    std::vector<double> values;
    std::size_t clamped = 0;
};

// Affine map of [low, high] onto [0, 1], clamping (and counting) outliers.
Normalized normalizeSeries(const std::vector<double>& series, double low, double high);

// Packs a normalized series row-major into the padded square grid: block k in
// grid row k. The context must hold at least gridDim^2 slots.
BlockMatrix encodeMatrix(EvalContext& ctx, const std::vector<double>& normalized,
                         std::size_t blockSize);

// Grid dimension a series of n samples with the given block size needs.
std::size_t gridDimFor(std::size_t n, std::size_t blockSize);

// Full encrypted-path detection. Throws ParameterError on malformed input and
// DepthOverflowError when the configured budget cannot fit the circuit.
ChangePointResult detect(const std::vector<double>& series, const CPDConfig& cfg);

// The cleartext mirror under the same normalization and block-size resolution
// (the reference the encrypted path is compared against).
PlainDetection detectMirror(const std::vector<double>& series, const CPDConfig& cfg);

} // namespace ecpd

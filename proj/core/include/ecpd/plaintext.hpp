#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ecpd/summarize.hpp"

namespace ecpd {

// Cleartext reference path: the same block/summarize/contrast pipeline in
// exact double arithmetic (true comparisons instead of polynomial ones).
// Serves as the accuracy baseline the encrypted path is measured against and
// as the evaluation engine for the noise-based privacy baseline.

// The six length-3 ordinal patterns in lexicographic order. A pattern lists
// the ascending rank of each position: (2,1,3) means the middle value is the
// smallest and the last the largest.
inline constexpr std::array<std::array<int, 3>, 6> kOrdinalPatterns = {{
    {1, 2, 3},
    {1, 3, 2},
    {2, 1, 3},
    {2, 3, 1},
    {3, 1, 2},
    {3, 2, 1},
}};

// Ordinal pattern of a length-3 window. Ties rank by position (the earlier
// sample takes the smaller rank), so (1, 1, 1) -> (1, 2, 3).
std::array<int, 3> ordinalPattern(double a, double b, double c);

// Index of a pattern within kOrdinalPatterns.
std::size_t patternIndex(const std::array<int, 3>& pattern);

// True when the window is not monotone — its middle element is a strict local
// extremum under the positional tie rule. These are the direction-change
// windows the turning-rate statistic counts.
bool isTurningPattern(const std::array<int, 3>& pattern);

// Sliding-window pattern frequencies over the whole series, indexed per
// kOrdinalPatterns and normalized by the series length n (an n-2 window count
// over n samples, so an all-increasing series scores (n-2)/n on (1,2,3)).
std::array<double, 6> patternHistogram(const std::vector<double>& series);

// Per-block statistics with the same edge conventions as the encrypted
// summarizers: the final block keeps the remainder length; variance of a
// block shorter than 2 is 0; turning rate of a block shorter than 3 is 0.
std::vector<double> blockSummaries(const std::vector<double>& series,
                                   std::size_t blockSize, StatKind kind);

struct PlainCusum {
    // |scaled gap| per candidate split j (0-based): (4/n_b) * |prefix_j -
    // ((j+1)/n_b) * total|. The last entry is identically 0.
    std::vector<double> gaps;
    std::size_t tauBlock = 0; // 1-based argmax block (first on exact ties)
    double topGap = 0.0;      // largest gap
    double secondGap = 0.0;   // largest gap at any other split
    // Separation between the winning split and the runner-up; the confidence
    // margin the encrypted comparator needs to resolve the argmax.
    double margin() const { return topGap - secondGap; }
};

PlainCusum plainCusum(const std::vector<double>& blockStats);

struct PlainDetection {
    std::size_t tauBlock = 0; // 1-based block index of the detected change
    std::size_t tauIndex = 0; // sample index: blockSize * tauBlock
    std::vector<double> stats;
    PlainCusum cusum;
};

// Full cleartext detection over an (already normalized) series.
PlainDetection detectPlain(const std::vector<double>& series, std::size_t blockSize,
                           StatKind kind);

} // namespace ecpd

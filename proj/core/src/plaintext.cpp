#include "ecpd/plaintext.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "ecpd/matrix.hpp"

namespace ecpd {

std::array<int, 3> ordinalPattern(double a, double b, double c) {
    const std::array<double, 3> v = {a, b, c};
    std::array<int, 3> rank = {1, 1, 1};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (v[j] < v[i] || (v[j] == v[i] && j < i)) {
                ++rank[i];
            }
        }
    }
    return rank;
}

std::size_t patternIndex(const std::array<int, 3>& pattern) {
    for (std::size_t i = 0; i < kOrdinalPatterns.size(); ++i) {
        if (kOrdinalPatterns[i] == pattern) {
            return i;
        }
    }
    throw ParameterError("not a length-3 ordinal pattern");
}

bool isTurningPattern(const std::array<int, 3>& pattern) {
    patternIndex(pattern); // validate
    return pattern[1] != 2;
}

std::array<double, 6> patternHistogram(const std::vector<double>& series) {
    std::array<double, 6> hist = {};
    const std::size_t n = series.size();
    if (n < 3) {
        return hist;
    }
    for (std::size_t t = 0; t + 2 < n; ++t) {
        ++hist[patternIndex(ordinalPattern(series[t], series[t + 1], series[t + 2]))];
    }
    for (double& h : hist) {
        h /= static_cast<double>(n);
    }
    return hist;
}

std::vector<double> blockSummaries(const std::vector<double>& series,
                                   std::size_t blockSize, StatKind kind) {
    const BlockShape shape = blockPartition(series.size(), blockSize);
    std::vector<double> out(shape.blocks, 0.0);
    for (std::size_t k = 0; k < shape.blocks; ++k) {
        const std::size_t begin = k * blockSize;
        const std::size_t len = (k + 1 == shape.blocks) ? shape.lastLen : blockSize;
        switch (kind) {
        case StatKind::Mean: {
            double sum = 0.0;
            for (std::size_t j = 0; j < len; ++j) {
                sum += series[begin + j];
            }
            out[k] = sum / static_cast<double>(len);
            break;
        }
        case StatKind::Variance: {
            if (len < 2) {
                break;
            }
            double sum = 0.0;
            for (std::size_t j = 0; j < len; ++j) {
                sum += series[begin + j];
            }
            const double mean = sum / static_cast<double>(len);
            double ss = 0.0;
            for (std::size_t j = 0; j < len; ++j) {
                const double d = series[begin + j] - mean;
                ss += d * d;
            }
            out[k] = ss / static_cast<double>(len - 1);
            break;
        }
        case StatKind::TurningRate: {
            if (len < 3) {
                break;
            }
            std::size_t turns = 0;
            for (std::size_t j = 0; j + 2 < len; ++j) {
                if (isTurningPattern(ordinalPattern(series[begin + j],
                                                    series[begin + j + 1],
                                                    series[begin + j + 2]))) {
                    ++turns;
                }
            }
            out[k] = static_cast<double>(turns) / static_cast<double>(len - 2);
            break;
        }
        }
    }
    return out;
}

PlainCusum plainCusum(const std::vector<double>& blockStats) {
    const std::size_t nb = blockStats.size();
    if (nb == 0) {
        throw ParameterError("contrast needs at least one block statistic");
    }
    const double scale = 4.0 / static_cast<double>(nb);
    double total = 0.0;
    for (double s : blockStats) {
        total += s;
    }
    PlainCusum out;
    out.gaps.resize(nb, 0.0);
    double prefix = 0.0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < nb; ++j) {
        prefix += blockStats[j];
        const double frac = static_cast<double>(j + 1) / static_cast<double>(nb);
        out.gaps[j] = scale * std::abs(prefix - frac * total);
        if (out.gaps[j] > out.gaps[best]) {
            best = j;
        }
    }
    out.tauBlock = best + 1;
    out.topGap = out.gaps[best];
    for (std::size_t j = 0; j < nb; ++j) {
        if (j != best) {
            out.secondGap = std::max(out.secondGap, out.gaps[j]);
        }
    }
    return out;
}

PlainDetection detectPlain(const std::vector<double>& series, std::size_t blockSize,
                           StatKind kind) {
    PlainDetection det;
    det.stats = blockSummaries(series, blockSize, kind);
    det.cusum = plainCusum(det.stats);
    det.tauBlock = det.cusum.tauBlock;
    det.tauIndex = blockSize * det.tauBlock;
    return det;
}

} // namespace ecpd

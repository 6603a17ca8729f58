#pragma once

#include <cmath>
#include <cstdint>

namespace ecpd {

// Small deterministic generator (SplitMix64 core) with the handful of draws
// the generators and baselines need. Unlike <random>'s distributions, the
// exact output stream is pinned by this code, so seeds reproduce bit-identical
// series across platforms and standard libraries.
class SplitMixRng {
public:
    explicit SplitMixRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t nextU64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (one spare cached).
    double gaussian() {
        if (haveSpare_) {
            haveSpare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        if (u1 < 1e-300) {
            u1 = 1e-300;
        }
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(kTwoPi * u2);
        haveSpare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    // Zero-mean Laplace with scale b (variance 2 b^2), by inverse CDF.
    double laplace(double b) {
        const double u = uniform01() - 0.5;
        const double a = std::abs(u);
        const double t = a < 0.5 ? std::log1p(-2.0 * a) : -708.0; // log(0) guard
        return (u < 0 ? b : -b) * t;
    }

    // Student t with 5 degrees of freedom (variance 5/3): normal over the
    // square root of an independent chi-square(5)/5.
    double studentT5() {
        const double g = gaussian();
        double chi = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double z = gaussian();
            chi += z * z;
        }
        return g / std::sqrt(chi / 5.0);
    }

    // Uniform on [-w, w] (variance w^2 / 3).
    double uniformSym(double w) {
        return w * (2.0 * uniform01() - 1.0);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool haveSpare_ = false;
};

} // namespace ecpd

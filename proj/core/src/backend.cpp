#include "ecpd/backend.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ecpd {

namespace {

bool isPowerOfTwo(std::size_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

void checkSame(const CipherVector& a, const CipherVector& b) {
    if (!a.valid() || !b.valid()) {
        throw ContextMismatchError("operation on an uninitialized vector");
    }
    if (&a.context() != &b.context()) {
        throw ContextMismatchError("operands belong to different contexts");
    }
}

void checkValid(const CipherVector& a) {
    if (!a.valid()) {
        throw ContextMismatchError("operation on an uninitialized vector");
    }
}

void checkPlainSize(const EvalContext& ctx, const PlainVector& p) {
    if (p.size() > ctx.slotCount()) {
        throw CapacityError("plaintext operand has " + std::to_string(p.size()) +
                            " slots but the context holds " +
                            std::to_string(ctx.slotCount()));
    }
}

} // namespace

OpCounters operator-(const OpCounters& a, const OpCounters& b) {
    OpCounters d;
    d.cipherMults = a.cipherMults - b.cipherMults;
    d.plainMults = a.plainMults - b.plainMults;
    d.maskMults = a.maskMults - b.maskMults;
    d.rotations = a.rotations - b.rotations;
    d.additions = a.additions - b.additions;
    d.compares = a.compares - b.compares;
    return d;
}

EvalContext::EvalContext(std::size_t slotCount, int depthBudget, double noiseStddev,
                         std::uint64_t rngSeed)
    : slotCount_(slotCount),
      depthBudget_(depthBudget),
      noiseStddev_(noiseStddev),
      rngSeed_(rngSeed) {
    if (!isPowerOfTwo(slotCount) || slotCount > kMaxSlotCount) {
        throw ParameterError("slot count must be a power of two in [1, 2^22], got " +
                             std::to_string(slotCount));
    }
    if (depthBudget < 0) {
        throw ParameterError("depth budget must be non-negative");
    }
    if (!(noiseStddev >= 0.0) || !std::isfinite(noiseStddev)) {
        throw ParameterError("noise stddev must be finite and non-negative");
    }
}

OpCounters EvalContext::counters() const {
    OpCounters c;
    c.cipherMults = cipherMults_.load(std::memory_order_relaxed);
    c.plainMults = plainMults_.load(std::memory_order_relaxed);
    c.maskMults = maskMults_.load(std::memory_order_relaxed);
    c.rotations = rotations_.load(std::memory_order_relaxed);
    c.additions = additions_.load(std::memory_order_relaxed);
    c.compares = compares_.load(std::memory_order_relaxed);
    return c;
}

void EvalContext::noteDepth(int depth) const {
    int seen = maxDepthSeen_.load(std::memory_order_relaxed);
    while (depth > seen &&
           !maxDepthSeen_.compare_exchange_weak(seen, depth, std::memory_order_relaxed)) {
    }
}

namespace {

// Depth bookkeeping for a multiplication result, with the budget enforced when
// the level is consumed (the failure mode of a leveled scheme).
int consumeLevel(const EvalContext& ctx, int inputDepth) {
    int next = inputDepth + 1;
    if (next > ctx.depthBudget()) {
        throw DepthOverflowError("multiplication at depth " + std::to_string(inputDepth) +
                                 " exceeds the budget of " +
                                 std::to_string(ctx.depthBudget()) + " levels");
    }
    ctx.noteDepth(next);
    return next;
}

void maybeAddNoise(const EvalContext& ctx, std::vector<double>& slots) {
    double sigma = ctx.noiseStddev();
    if (sigma <= 0.0) {
        return;
    }
    // Deterministic per (context seed, multiplication ticket): reruns with the
    // same seed reproduce the same perturbations.
    std::uint64_t state = ctx.rngSeed() ^ (ctx.nextNoiseTicket() * 0xd1342543de82ef95ULL + 1);
    for (std::size_t i = 0; i + 1 < slots.size(); i += 2) {
        double u1 = uniform01(state);
        double u2 = uniform01(state);
        if (u1 < 1e-300) u1 = 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1)) * sigma;
        slots[i] += r * std::cos(2.0 * M_PI * u2);
        slots[i + 1] += r * std::sin(2.0 * M_PI * u2);
    }
    if (slots.size() % 2 == 1) {
        double u1 = std::max(uniform01(state), 1e-300);
        double u2 = uniform01(state);
        slots.back() += std::sqrt(-2.0 * std::log(u1)) * sigma * std::cos(2.0 * M_PI * u2);
    }
}

} // namespace

CipherVector makeResult(const EvalContext& ctx, std::vector<double> slots, int depth) {
    ctx.noteDepth(depth);
    return CipherVector(&ctx, std::move(slots), depth);
}

CipherVector encrypt(EvalContext& ctx, const std::vector<double>& values) {
    if (values.size() > ctx.slotCount()) {
        throw CapacityError("payload of " + std::to_string(values.size()) +
                            " values exceeds the " + std::to_string(ctx.slotCount()) +
                            "-slot capacity");
    }
    std::vector<double> slots(ctx.slotCount(), 0.0);
    std::copy(values.begin(), values.end(), slots.begin());
    return makeResult(ctx, std::move(slots), 0);
}

const std::vector<double>& decode(const CipherVector& x) {
    checkValid(x);
    return x.slots();
}

CipherVector add(const CipherVector& a, const CipherVector& b) {
    checkSame(a, b);
    const auto& ctx = a.context();
    std::vector<double> out(a.slots());
    const auto& bs = b.slots();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += bs[i];
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), std::max(a.depth(), b.depth()));
}

CipherVector sub(const CipherVector& a, const CipherVector& b) {
    checkSame(a, b);
    const auto& ctx = a.context();
    std::vector<double> out(a.slots());
    const auto& bs = b.slots();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= bs[i];
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), std::max(a.depth(), b.depth()));
}

CipherVector add(const CipherVector& a, const PlainVector& p) {
    checkValid(a);
    const auto& ctx = a.context();
    checkPlainSize(ctx, p);
    std::vector<double> out(a.slots());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += p[i];
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), a.depth());
}

CipherVector sub(const CipherVector& a, const PlainVector& p) {
    checkValid(a);
    const auto& ctx = a.context();
    checkPlainSize(ctx, p);
    std::vector<double> out(a.slots());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] -= p[i];
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), a.depth());
}

CipherVector sub(const PlainVector& p, const CipherVector& a) {
    checkValid(a);
    const auto& ctx = a.context();
    checkPlainSize(ctx, p);
    std::vector<double> out(a.size(), 0.0);
    const auto& as = a.slots();
    for (std::size_t i = 0; i < out.size(); ++i) {
        double pv = i < p.size() ? p[i] : 0.0;
        out[i] = pv - as[i];
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), a.depth());
}

CipherVector addScalar(const CipherVector& a, double c) {
    checkValid(a);
    const auto& ctx = a.context();
    std::vector<double> out(a.slots());
    for (double& v : out) {
        v += c;
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), a.depth());
}

CipherVector subScalar(double c, const CipherVector& a) {
    checkValid(a);
    const auto& ctx = a.context();
    std::vector<double> out(a.slots());
    for (double& v : out) {
        v = c - v;
    }
    ctx.noteAddition();
    return makeResult(ctx, std::move(out), a.depth());
}

CipherVector rotate(const CipherVector& a, long long k) {
    checkValid(a);
    const auto& ctx = a.context();
    const std::size_t n = a.size();
    long long shift = k % static_cast<long long>(n);
    if (shift < 0) {
        shift += static_cast<long long>(n);
    }
    std::vector<double> out(n);
    const auto& as = a.slots();
    // Left rotation: slot i receives slot (i + shift) mod n.
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = as[(i + static_cast<std::size_t>(shift)) % n];
    }
    ctx.noteRotation();
    return makeResult(ctx, std::move(out), a.depth());
}

CipherVector mul(const CipherVector& a, const CipherVector& b) {
    checkSame(a, b);
    const auto& ctx = a.context();
    int depth = consumeLevel(ctx, std::max(a.depth(), b.depth()));
    std::vector<double> out(a.slots());
    const auto& bs = b.slots();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= bs[i];
    }
    ctx.noteCipherMult();
    maybeAddNoise(ctx, out);
    return makeResult(ctx, std::move(out), depth);
}

namespace {

CipherVector mulWithPlain(const CipherVector& a, const PlainVector& p, bool kernelMask) {
    checkValid(a);
    const auto& ctx = a.context();
    checkPlainSize(ctx, p);
    int depth = consumeLevel(ctx, a.depth());
    std::vector<double> out(a.size(), 0.0);
    const auto& as = a.slots();
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = as[i] * p[i];
    }
    if (kernelMask) {
        ctx.noteMaskMult();
    } else {
        ctx.notePlainMult();
    }
    maybeAddNoise(ctx, out);
    return makeResult(ctx, std::move(out), depth);
}

} // namespace

CipherVector mulPlain(const CipherVector& a, const PlainVector& p) {
    return mulWithPlain(a, p, false);
}

CipherVector mulScalar(const CipherVector& a, double c) {
    checkValid(a);
    const auto& ctx = a.context();
    int depth = consumeLevel(ctx, a.depth());
    std::vector<double> out(a.slots());
    for (double& v : out) {
        v *= c;
    }
    ctx.notePlainMult();
    maybeAddNoise(ctx, out);
    return makeResult(ctx, std::move(out), depth);
}

CipherVector mulMask(const CipherVector& a, const PlainVector& p) {
    return mulWithPlain(a, p, true);
}

} // namespace ecpd

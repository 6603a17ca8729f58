#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecpd {

// Thrown when an operation would exceed the multiplicative depth budget.
// Mirrors the hard failure a leveled scheme hits when it runs out of levels:
// there is no recovering mid-computation, so callers must treat it as fatal
// for the current evaluation.
class DepthOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a payload does not fit the context's slot capacity.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when operands belong to different evaluation contexts.
class ContextMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown on invalid configuration values (non-power-of-two slot counts,
// negative noise, malformed block shapes, ...).
class ParameterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Snapshot of the operation tally of one evaluation context.
//
// cipherMults: ciphertext x ciphertext multiplications.
// plainMults:  ciphertext x plaintext multiplications issued by algorithms
//              (data-dependent coefficient vectors, triangular matrices,
//              membership weights, scalar foldings, ...).
// maskMults:   ciphertext x plaintext multiplications that are the fixed
//              cleanup masks inside the matrix kernels (row/column isolation
//              after a rotate-accumulate recursion). Tracked separately so op
//              ablations can be reported under the reference accounting,
//              which prices kernels as "rotations + one mask".
// All three consume one depth level each; rotations and additions are free
// depth-wise.
struct OpCounters {
    std::uint64_t cipherMults = 0;
    std::uint64_t plainMults = 0;
    std::uint64_t maskMults = 0;
    std::uint64_t rotations = 0;
    std::uint64_t additions = 0;
    std::uint64_t compares = 0;

    // Multiplications under the reference accounting (kernel masks excluded).
    std::uint64_t algorithmMults() const { return cipherMults + plainMults; }
    // Every multiplication issued, masks included.
    std::uint64_t totalMults() const { return cipherMults + plainMults + maskMults; }
};

OpCounters operator-(const OpCounters& a, const OpCounters& b);

inline constexpr std::size_t kMaxSlotCount = std::size_t{1} << 22;
inline constexpr int kDefaultDepthBudget = 65;

// Evaluation context for the slot-semantics emulator.
//
// Models the programming surface of a batched leveled scheme: a fixed number
// of SIMD slots, slot-wise add/multiply, cyclic rotations, and a hard
// multiplicative depth budget. Values are held in clear doubles — this is an
// emulator for circuit design and cost accounting, not an encryption layer —
// but all data flow in the modules above is expressed strictly through this
// interface, so the circuits port to a real backend unchanged.
//
// Immutable after construction except for the monotone instrumentation
// (counters, max-depth watermark), which is safe to update from concurrent
// evaluations.
class EvalContext {
public:
    explicit EvalContext(std::size_t slotCount,
                         int depthBudget = kDefaultDepthBudget,
                         double noiseStddev = 0.0,
                         std::uint64_t rngSeed = 0);

    EvalContext(const EvalContext&) = delete;
    EvalContext& operator=(const EvalContext&) = delete;

    std::size_t slotCount() const { return slotCount_; }
    int depthBudget() const { return depthBudget_; }
    double noiseStddev() const { return noiseStddev_; }
    std::uint64_t rngSeed() const { return rngSeed_; }

    OpCounters counters() const;
    int maxDepthSeen() const { return maxDepthSeen_.load(std::memory_order_relaxed); }

    // Instrumentation hooks for the operation layer. Monotone statistics, not
    // logical state, hence const with mutable atomics: the ops take contexts
    // through the const references the vectors hand out.
    void noteCipherMult() const { cipherMults_.fetch_add(1, std::memory_order_relaxed); }
    void notePlainMult() const { plainMults_.fetch_add(1, std::memory_order_relaxed); }
    void noteMaskMult() const { maskMults_.fetch_add(1, std::memory_order_relaxed); }
    void noteRotation() const { rotations_.fetch_add(1, std::memory_order_relaxed); }
    void noteAddition() const { additions_.fetch_add(1, std::memory_order_relaxed); }
    void noteCompare() const { compares_.fetch_add(1, std::memory_order_relaxed); }
    void noteDepth(int depth) const;
    std::uint64_t nextNoiseTicket() const {
        return noiseTicket_.fetch_add(1, std::memory_order_relaxed);
    }

private:
    std::size_t slotCount_;
    int depthBudget_;
    double noiseStddev_;
    std::uint64_t rngSeed_;

    mutable std::atomic<std::uint64_t> cipherMults_{0};
    mutable std::atomic<std::uint64_t> plainMults_{0};
    mutable std::atomic<std::uint64_t> maskMults_{0};
    mutable std::atomic<std::uint64_t> rotations_{0};
    mutable std::atomic<std::uint64_t> additions_{0};
    mutable std::atomic<std::uint64_t> compares_{0};
    mutable std::atomic<int> maxDepthSeen_{0};
    mutable std::atomic<std::uint64_t> noiseTicket_{0};
};

// One ciphertext-like SIMD register: slotCount() packed values plus the
// multiplicative depth already consumed to produce them. Value-immutable;
// every operation returns a fresh vector.
class CipherVector {
public:
    CipherVector() = default;

    const EvalContext& context() const { return *ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    std::size_t size() const { return slots_.size(); }
    int depth() const { return depth_; }
    const std::vector<double>& slots() const { return slots_; }

private:
    friend CipherVector encrypt(EvalContext& ctx, const std::vector<double>& values);
    friend CipherVector makeResult(const EvalContext& ctx, std::vector<double> slots,
                                   int depth);

    CipherVector(const EvalContext* ctx, std::vector<double> slots, int depth)
        : ctx_(ctx), slots_(std::move(slots)), depth_(depth) {}

    const EvalContext* ctx_ = nullptr;
    std::vector<double> slots_;
    int depth_ = 0;
};

// Plaintext operand: an unencrypted slot vector. Sizes up to slotCount are
// accepted and treated as zero-extended.
using PlainVector = std::vector<double>;

// --- data movement ---------------------------------------------------------

// Packs values (size <= slotCount, zero-extended) into a depth-0 vector.
CipherVector encrypt(EvalContext& ctx, const std::vector<double>& values);

// Reads all slots back. Exact under noiseStddev == 0.
const std::vector<double>& decode(const CipherVector& x);

// --- depth-free ops (additions, rotations) ---------------------------------

CipherVector add(const CipherVector& a, const CipherVector& b);
CipherVector sub(const CipherVector& a, const CipherVector& b);
CipherVector add(const CipherVector& a, const PlainVector& p);
CipherVector sub(const CipherVector& a, const PlainVector& p);
CipherVector sub(const PlainVector& p, const CipherVector& a);
CipherVector addScalar(const CipherVector& a, double c);
CipherVector subScalar(double c, const CipherVector& a);

// Cyclic rotation of the full slot vector; positive k rotates left
// (slot i receives slot i+k), negative k rotates right.
CipherVector rotate(const CipherVector& a, long long k);

// --- depth-consuming ops (one level each) -----------------------------------

// ciphertext x ciphertext
CipherVector mul(const CipherVector& a, const CipherVector& b);
// ciphertext x plaintext vector / scalar (algorithmic operand)
CipherVector mulPlain(const CipherVector& a, const PlainVector& p);
CipherVector mulScalar(const CipherVector& a, double c);
// ciphertext x plaintext mask, kernel-internal cleanup (separate tally)
CipherVector mulMask(const CipherVector& a, const PlainVector& p);

} // namespace ecpd

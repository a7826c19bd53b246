#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace mw {

/// Distance sentinel; large enough that +1 arithmetic never wraps.
constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// Thrown when an exact computation is requested beyond its configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed certificates, orders, flip specs, and the like.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by the label codec on truncated or corrupt bit streams.
struct CodecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic PRNG wrapper; everything randomized takes one of these.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }
    // uniform in [0, m)
    int below(int m) { return int(eng_() % uint64_t(m)); }
    bool coin() { return eng_() & 1; }
    double unit() { return double(eng_() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::mt19937_64 eng_;
};

inline int ceil_log2(uint64_t x) {
    int b = 0;
    while ((uint64_t{1} << b) < x) ++b;
    return b;
}

}  // namespace mw

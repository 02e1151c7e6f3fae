#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace infosel {

// 64-bit seed for every stochastic operation in the library.
using Seed = std::uint64_t;

// Counter-based deterministic generator ("splitmix64 counter mode").
//
// Every output word is a pure function of (root, counter), where the root is
// derived from the user seed and a chain of stream keys.  Derived streams are
// statistically independent and can be created in any order, which makes all
// sampling reproducible under parallel execution.  The exact draw order used
// by each consumer is documented in docs/prng.md.
class Rng {
public:
    explicit Rng(Seed seed) : root_(mix(seed ^ kDomain)) {}

    // Independent substream identified by an integer key.
    Rng stream(std::uint64_t key) const {
        Rng r(*this);
        r.root_ = mix(root_ ^ (kGamma * (key + 1)));
        r.counter_ = 0;
        return r;
    }
    Rng stream(std::uint64_t k1, std::uint64_t k2) const { return stream(k1).stream(k2); }
    Rng stream(std::uint64_t k1, std::uint64_t k2, std::uint64_t k3) const {
        return stream(k1).stream(k2).stream(k3);
    }

    std::uint64_t next_u64() { return mix(root_ + kGamma * ++counter_); }

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a logarithm argument.
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; always consumes exactly two words.
    double next_normal() {
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Uniform integer on [0, n); n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        // Multiply-shift mapping of the 53-bit fraction; bias is O(2^-53).
        auto v = static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
        return v >= n ? n - 1 : v;
    }

private:
    static constexpr std::uint64_t kDomain = 0xD1B54A32D192ED03ull;
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t root_;
    std::uint64_t counter_ = 0;
};

// Top-level stream keys.  Consumers derive their streams from a run seed as
// Rng(seed).stream(tag, ...); keeping the tags in one place prevents two
// modules from ever sharing a stream.  Derivation chains: docs/prng.md.
namespace streams {
inline constexpr std::uint64_t kGenerator = 1;  // stream(kGenerator, column, row)
inline constexpr std::uint64_t kSubnoise = 2;   // stream(kSubnoise, column_key)
inline constexpr std::uint64_t kSurrogate = 3;  // stream(kSurrogate, round, variable, permutation)
inline constexpr std::uint64_t kSplit = 4;      // stream(kSplit) for train/test row assignment
}  // namespace streams

// In-place Fisher-Yates shuffle drawing j = next_below(i + 1) for i = n-1 .. 1.
template <typename T>
void shuffle_in_place(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace infosel

#pragma once

#include <cstdint>

namespace cloudnet {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic stream derivation: the same (base, stream) pair yields the
// same seed everywhere, so parallel workers can own independent generators.
inline std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t stream) {
    return detail::mix64(base ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
}

// SplitMix64. Used instead of the <random> engines because its output
// sequence is fully specified, which keeps seeded runs byte-reproducible
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::mix64(state_);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // unbiased uniform in [0, n); n must be >= 1
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Independent child stream; does not advance this generator.
    Rng split(std::uint64_t stream) const {
        return Rng(derive_stream_seed(state_, stream));
    }

private:
    std::uint64_t state_;
};

}  // namespace cloudnet

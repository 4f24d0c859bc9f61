#pragma once

#include <cstdint>

namespace lipuq {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so sampling can be split across threads in any order and still
// produce identical output. The mixer is the splitmix64 finalizer, applied
// twice so that low-entropy seeds and sequential counters decorrelate.

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(detail::mix64(detail::mix64(seed) ^ (0xA5A5A5A5A5A5A5A5ULL + stream))) {}

    /// Raw 64 mixed bits for the given counter.
    std::uint64_t bits(std::uint64_t counter) const {
        return detail::mix64(key_ ^ (counter * 0xD1B54A32D192ED03ULL));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform over {0, 1, ..., n-1}; slight modulo bias is irrelevant for n << 2^64.
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        return bits(counter) % n;
    }

    bool coin(std::uint64_t counter) const { return bits(counter) & 1ULL; }

private:
    std::uint64_t key_;
};

} // namespace lipuq

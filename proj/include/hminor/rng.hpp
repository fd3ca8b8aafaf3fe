#pragma once

#include <cstdint>
#include <initializer_list>

namespace hminor {

__extension__ typedef unsigned __int128 uint128;

/// SplitMix64 finaliser. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Small counter-based random stream (SplitMix64).
///
/// Streams are cheap to create, so every walk gets its own stream derived
/// from (master seed, phase, index). Results then do not depend on the order
/// in which walks are scheduled.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). Multiply-high reduction; bias <= bound / 2^64.
    std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>((static_cast<uint128>((*this)()) * bound) >> 64);
    }

    /// Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Derive a stream from a master seed and a path of integer keys.
inline RandomStream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc908ULL);
    for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x3c6ef372fe94f82bULL));
    return RandomStream(h);
}

}  // namespace hminor

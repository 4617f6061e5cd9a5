#pragma once

#include <cstdint>

namespace corrwork {

/// Counter-based pseudo-random stream.
///
/// The n-th output (n = 1, 2, ...) is `mix64(key + n * 0x9E3779B97F4A7C15)`,
/// where `mix64` is the SplitMix64 finalizer:
///
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     z =  z ^ (z >> 31)
///
/// The key of a root stream is `mix64(seed)`. A derived stream for shard `s`
/// uses key `mix64(mix64(seed) ^ mix64(s + 0x632BE59BD9B4E019))`, so shards of
/// the same seed never share a key. Doubles take the top 53 bits of an output.
///
/// A stream is single-owner; give each worker its own derived stream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) noexcept;

    static RandomStream derive(std::uint64_t seed, std::uint64_t shard) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1).
    double next_unit() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

    static std::uint64_t mix64(std::uint64_t z) noexcept;

private:
    struct KeyTag {};
    RandomStream(KeyTag, std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace corrwork

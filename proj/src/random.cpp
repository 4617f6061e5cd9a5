#include "corrwork/random.hpp"

namespace corrwork {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kShardSalt = 0x632BE59BD9B4E019ULL;
}  // namespace

std::uint64_t RandomStream::mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t shard) noexcept {
    return RandomStream(KeyTag{}, mix64(mix64(seed) ^ mix64(shard + kShardSalt)));
}

std::uint64_t RandomStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RandomStream::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace corrwork

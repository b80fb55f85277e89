#pragma once

// Philox4x32-10 counter-based generator. A (seed, stream) pair selects an
// independent sequence, so replicate i of an experiment draws the same
// numbers regardless of thread count or evaluation order.

#include <array>
#include <cstdint>
#include <limits>

namespace lhp {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// The bare 10-round Philox4x32 bijection.
constexpr PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Substream tags; the low 8 bits of a stream id.
enum class Substream : std::uint8_t {
    count = 0,
    positions = 1,
    directions = 2,
    gaussian = 3,
};

/// Stream id for one replicate and purpose.
constexpr std::uint64_t stream_id(std::uint64_t replicate, Substream sub) {
    return (replicate << 8) | static_cast<std::uint64_t>(sub);
}

/// UniformRandomBitGenerator over Philox4x32-10. The key is the seed, the
/// upper counter half is the stream id and the lower half a block index.
class PhiloxEngine {
  public:
    using result_type = std::uint32_t;

    PhiloxEngine(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    PhiloxEngine(std::uint64_t seed, std::uint64_t replicate, Substream sub)
        : PhiloxEngine(seed, stream_id(replicate, sub)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (index_ == 4) refill();
        return buffer_[index_++];
    }

    /// Uniform double in (0, 1) with 53 random bits; never returns 0 or 1.
    double uniform_open() {
        const std::uint64_t hi = (*this)();
        const std::uint64_t lo = (*this)();
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t blocks_used() const { return block_; }

  private:
    void refill() {
        const PhiloxBlock ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                              static_cast<std::uint32_t>(stream_),
                              static_cast<std::uint32_t>(stream_ >> 32)};
        buffer_ = philox4x32_10(ctr, key_);
        ++block_;
        index_ = 0;
    }

    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    PhiloxBlock buffer_{};
    int index_ = 4;
};

}  // namespace lhp

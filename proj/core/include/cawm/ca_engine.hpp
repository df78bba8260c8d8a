#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cawm {

/// Cell states of a one-dimensional automaton, one byte per cell holding 0 or 1.
using BitVector = std::vector<std::uint8_t>;

/// Output column of an elementary CA rule, indexed by the neighbourhood
/// value left*4 + centre*2 + right.
class RuleTable {
public:
    /// Throws Error(InvalidRule) unless 0 <= rule <= 255.
    static RuleTable from_rule(int rule);

    bool output(unsigned neighbourhood) const noexcept { return outputs_[neighbourhood & 7u]; }
    int number() const noexcept { return number_; }
    const std::array<bool, 8>& outputs() const noexcept { return outputs_; }

private:
    RuleTable() = default;

    std::array<bool, 8> outputs_{};
    int number_ = 0;
};

RuleTable rule_table(int rule);

/// One synchronous update with periodic boundary. A single cell is its own
/// left and right neighbour; an empty state stays empty.
BitVector ca_step(const BitVector& state, const RuleTable& rule);

/// xorshift64* generator. A zero seed is remapped so the state never sits
/// on the all-zero orbit.
class Prng64 {
public:
    static constexpr std::uint64_t kZeroSeedReplacement = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kMultiplier = 0x2545F4914F6CDD1DULL;

    explicit constexpr Prng64(std::uint64_t seed) noexcept
        : state_(seed == 0 ? kZeroSeedReplacement : seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * kMultiplier;
    }

    /// Uniform double in [0, 1) from the top 53 bits of the next word.
    double next_unit() noexcept;

    /// Unbiased draw in [0, bound) by rejecting the short final bucket.
    /// bound must be non-zero.
    std::uint64_t below(std::uint64_t bound) noexcept;

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Deterministic initial state: successive Prng64 words, most significant bit first.
BitVector seed_state(std::uint64_t seed, std::size_t length);

}  // namespace cawm

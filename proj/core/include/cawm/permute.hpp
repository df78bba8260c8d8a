#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cawm/ca_engine.hpp"
#include "cawm/carrier.hpp"

namespace cawm {

/// A bijection on 0..N-1. Construction from arbitrary indices validates
/// bijectivity, so every Permutation in circulation is total.
class Permutation {
public:
    Permutation() = default;

    /// Throws Error(Dimension) when `indices` is not a bijection on 0..N-1.
    static Permutation from_indices(std::vector<std::size_t> indices);
    static Permutation identity(std::size_t length);
    static Permutation reversal(std::size_t length);

    std::size_t size() const noexcept { return map_.size(); }
    bool empty() const noexcept { return map_.empty(); }
    std::size_t operator[](std::size_t k) const noexcept { return map_[k]; }
    std::span<const std::size_t> indices() const noexcept { return map_; }

    bool operator==(const Permutation&) const = default;

private:
    struct Trusted {};
    Permutation(Trusted, std::vector<std::size_t> map) : map_(std::move(map)) {}

    friend Permutation scramble_from_initial(BitVector initial, int rule, std::size_t generations);
    friend Permutation invert(const Permutation& perm);

    std::vector<std::size_t> map_;
};

struct ScrambleKey {
    static constexpr int kDefaultRule = 7;
    static constexpr std::size_t kDefaultGenerations = 20;

    std::uint64_t seed = 0;
    int rule = kDefaultRule;
    std::size_t generations = kDefaultGenerations;

    /// Throws Error(InvalidRule) or Error(Range).
    void validate() const;

    bool operator==(const ScrambleKey&) const = default;
};

/// Harvests indices generation by generation: after each CA step, every
/// still-available position whose cell is 1 is appended in ascending order.
/// Stops when all positions are taken, or when a scan takes nothing and the
/// state is a fixed point. Leftovers follow in ascending order.
Permutation scramble_from_initial(BitVector initial, int rule, std::size_t generations);

/// scramble_from_initial(seed_state(key.seed, length), key.rule, key.generations).
Permutation scramble_permutation(std::size_t length, const ScrambleKey& key);

/// Q with Q[perm[k]] = k.
Permutation invert(const Permutation& perm);

/// Gather: out[k] = carrier[perm[k]]. Shape is kept.
/// Throws Error(Dimension) on a length mismatch.
Carrier apply_permutation(const Carrier& carrier, const Permutation& perm);

/// Per-generation bookkeeping of the harvest loop, for coverage studies.
struct ScrambleTrace {
    std::vector<std::size_t> assigned_per_generation;
    std::size_t leftovers = 0;
    bool stopped_early = false;
};

ScrambleTrace trace_scramble(BitVector initial, int rule, std::size_t generations);

}  // namespace cawm

#include "cawm/ca_engine.hpp"

#include <limits>
#include <string>

#include "cawm/error.hpp"

namespace cawm {

RuleTable RuleTable::from_rule(int rule) {
    if (rule < 0 || rule > 255) {
        throw Error(ErrorKind::InvalidRule, "rule " + std::to_string(rule) + " is outside 0..255");
    }
    RuleTable table;
    table.number_ = rule;
    for (unsigned k = 0; k < 8; ++k) {
        table.outputs_[k] = ((static_cast<unsigned>(rule) >> k) & 1u) != 0;
    }
    return table;
}

RuleTable rule_table(int rule) { return RuleTable::from_rule(rule); }

BitVector ca_step(const BitVector& state, const RuleTable& rule) {
    const std::size_t n = state.size();
    BitVector next(n);
    if (n == 0) return next;

    auto cell = [&](std::size_t i) -> unsigned { return state[i] != 0 ? 1u : 0u; };
    // Rolling window: (left, centre, right) packed as a 3-bit neighbourhood.
    unsigned window = (cell(n - 1) << 2) | (cell(0) << 1) | cell(n == 1 ? 0 : 1);
    for (std::size_t i = 0;; ++i) {
        next[i] = rule.output(window) ? 1 : 0;
        if (i + 1 == n) break;
        const std::size_t ahead = (i + 2) % n;
        window = ((window << 1) & 7u) | cell(ahead);
    }
    return next;
}

double Prng64::next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Prng64::below(std::uint64_t bound) noexcept {
    // Values under `threshold` belong to the incomplete final bucket.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

BitVector seed_state(std::uint64_t seed, std::size_t length) {
    BitVector bits(length);
    Prng64 rng(seed);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
        const unsigned offset = static_cast<unsigned>(i % 64);
        if (offset == 0) word = rng.next();
        bits[i] = static_cast<std::uint8_t>((word >> (63 - offset)) & 1u);
    }
    return bits;
}

}  // namespace cawm

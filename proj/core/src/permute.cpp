#include "cawm/permute.hpp"

#include <numeric>
#include <string>

#include "cawm/error.hpp"

namespace cawm {

Permutation Permutation::from_indices(std::vector<std::size_t> indices) {
    std::vector<bool> seen(indices.size(), false);
    for (std::size_t v : indices) {
        if (v >= indices.size() || seen[v]) {
            throw Error(ErrorKind::Dimension, "index list is not a permutation of 0.." +
                                                  std::to_string(indices.size()) + "-1");
        }
        seen[v] = true;
    }
    return Permutation(Trusted{}, std::move(indices));
}

Permutation Permutation::identity(std::size_t length) {
    std::vector<std::size_t> map(length);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(Trusted{}, std::move(map));
}

Permutation Permutation::reversal(std::size_t length) {
    std::vector<std::size_t> map(length);
    for (std::size_t k = 0; k < length; ++k) map[k] = length - 1 - k;
    return Permutation(Trusted{}, std::move(map));
}

void ScrambleKey::validate() const {
    (void)rule_table(rule);
    if (generations < 1) throw Error(ErrorKind::Range, "generations must be at least 1");
}

namespace {

// Shared by the permutation builder and the coverage trace.
template <typename OnAssign, typename OnGeneration>
bool run_harvest(BitVector state, const RuleTable& table, std::size_t generations,
                 std::vector<bool>& used, OnAssign&& on_assign, OnGeneration&& on_generation) {
    const std::size_t n = state.size();
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < generations && assigned < n; ++g) {
        state = ca_step(state, table);
        std::size_t fresh = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (state[i] != 0 && !used[i]) {
                used[i] = true;
                on_assign(i);
                ++fresh;
            }
        }
        assigned += fresh;
        on_generation(fresh);
        if (assigned == n) return true;
        if (fresh == 0 && ca_step(state, table) == state) return true;
    }
    return false;
}

}  // namespace

Permutation scramble_from_initial(BitVector initial, int rule, std::size_t generations) {
    const RuleTable table = rule_table(rule);
    if (generations < 1) throw Error(ErrorKind::Range, "generations must be at least 1");

    const std::size_t n = initial.size();
    std::vector<std::size_t> map;
    map.reserve(n);
    std::vector<bool> used(n, false);
    run_harvest(std::move(initial), table, generations, used,
                [&](std::size_t i) { map.push_back(i); }, [](std::size_t) {});
    for (std::size_t i = 0; i < n; ++i) {
        if (!used[i]) map.push_back(i);
    }
    return Permutation(Permutation::Trusted{}, std::move(map));
}

Permutation scramble_permutation(std::size_t length, const ScrambleKey& key) {
    key.validate();
    return scramble_from_initial(seed_state(key.seed, length), key.rule, key.generations);
}

ScrambleTrace trace_scramble(BitVector initial, int rule, std::size_t generations) {
    const RuleTable table = rule_table(rule);
    if (generations < 1) throw Error(ErrorKind::Range, "generations must be at least 1");

    ScrambleTrace trace;
    const std::size_t n = initial.size();
    std::vector<bool> used(n, false);
    trace.stopped_early = run_harvest(
        std::move(initial), table, generations, used, [](std::size_t) {},
        [&](std::size_t fresh) { trace.assigned_per_generation.push_back(fresh); });
    for (bool u : used) trace.leftovers += u ? 0 : 1;
    return trace;
}

Permutation invert(const Permutation& perm) {
    std::vector<std::size_t> inverse(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inverse[perm[k]] = k;
    return Permutation(Permutation::Trusted{}, std::move(inverse));
}

Carrier apply_permutation(const Carrier& carrier, const Permutation& perm) {
    if (perm.size() != carrier.size()) {
        throw Error(ErrorKind::Dimension, "permutation length " + std::to_string(perm.size()) +
                                              " does not match carrier length " +
                                              std::to_string(carrier.size()));
    }
    std::vector<std::uint8_t> out(carrier.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = carrier[perm[k]];
    return carrier.with_samples(std::move(out));
}

}  // namespace cawm

#include "cawm/baselines.hpp"

#include <numeric>
#include <utility>

namespace cawm {

Permutation fisher_yates_permutation(std::size_t length, std::uint64_t seed) {
    std::vector<std::size_t> map(length);
    std::iota(map.begin(), map.end(), std::size_t{0});
    Prng64 rng(seed);
    for (std::size_t i = length; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(map[i - 1], map[j]);
    }
    return Permutation::from_indices(std::move(map));
}

namespace {

WatermarkKey direct_key(std::size_t height, std::size_t width, std::size_t repetition, int bit_plane) {
    WatermarkKey key;
    key.bit_plane = bit_plane;
    key.repetition = repetition;
    key.mode = EmbedMode::Substitute;
    key.wm_height = height;
    key.wm_width = width;
    return key;
}

}  // namespace

Carrier lsb_embed_direct(const Carrier& carrier, const BitMatrix& wm, std::size_t repetition, int bit_plane) {
    return embed_with_permutation(carrier, wm, direct_key(wm.height(), wm.width(), repetition, bit_plane),
                                  Permutation::identity(carrier.size()));
}

BitMatrix lsb_extract_direct(const Carrier& carrier, std::size_t wm_height, std::size_t wm_width,
                             std::size_t repetition, int bit_plane) {
    return extract_with_permutation(carrier, direct_key(wm_height, wm_width, repetition, bit_plane),
                                    Permutation::identity(carrier.size()));
}

}  // namespace cawm

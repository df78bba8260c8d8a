#pragma once

#include <cstddef>
#include <cstdint>

#include "cawm/carrier.hpp"
#include "cawm/permute.hpp"
#include "cawm/watermark.hpp"

namespace cawm {

/// Seeded uniform shuffle of 0..length-1 (Fisher-Yates, Prng64, rejection sampling).
Permutation fisher_yates_permutation(std::size_t length, std::uint64_t seed);

/// Substitute-mode embedding with no scrambling: the repeated payload sits
/// in the first repetition*W samples in natural order.
Carrier lsb_embed_direct(const Carrier& carrier, const BitMatrix& wm, std::size_t repetition, int bit_plane);
BitMatrix lsb_extract_direct(const Carrier& carrier, std::size_t wm_height, std::size_t wm_width,
                             std::size_t repetition, int bit_plane);

}  // namespace cawm

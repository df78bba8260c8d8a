#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cawm/carrier.hpp"
#include "cawm/permute.hpp"

namespace cawm {

/// Binary payload, row-major, one byte (0 or 1) per bit.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t height, std::size_t width);
    /// Throws Error(Dimension) when bits.size() != height*width. Non-zero bytes read as 1.
    BitMatrix(std::size_t height, std::size_t width, std::vector<std::uint8_t> bits);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool bit(std::size_t i) const noexcept { return bits_[i] != 0; }
    bool at(std::size_t row, std::size_t col) const noexcept { return bits_[row * width_ + col] != 0; }
    void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    std::size_t count_ones() const noexcept;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint8_t> bits_;
};

enum class EmbedMode { Or, Substitute };

std::string_view to_string(EmbedMode mode) noexcept;
/// Accepts "or" and "substitute"; throws Error(Parse) otherwise.
EmbedMode parse_embed_mode(std::string_view text);

struct WatermarkKey {
    ScrambleKey scramble;
    int bit_plane = 0;
    std::size_t repetition = 9;
    EmbedMode mode = EmbedMode::Substitute;
    std::size_t wm_height = 0;
    std::size_t wm_width = 0;

    std::size_t payload_bits() const noexcept { return wm_height * wm_width; }
    std::size_t footprint() const noexcept { return repetition * payload_bits(); }

    /// Throws Error(InvalidRule | Range) for an out-of-range field.
    void validate() const;

    bool operator==(const WatermarkKey&) const = default;
};

/// Scramble, write the repeated payload into bit `bit_plane` of the first
/// repetition*W scrambled samples, unscramble.
Carrier embed(const Carrier& carrier, const BitMatrix& wm, const WatermarkKey& key);

/// Blind recovery: per-bit majority over the repeated copies.
BitMatrix extract(const Carrier& carrier, const WatermarkKey& key);

/// As embed/extract with the CA scramble replaced by `perm`.
Carrier embed_with_permutation(const Carrier& carrier, const BitMatrix& wm, const WatermarkKey& key,
                               const Permutation& perm);
BitMatrix extract_with_permutation(const Carrier& carrier, const WatermarkKey& key,
                                   const Permutation& perm);

}  // namespace cawm

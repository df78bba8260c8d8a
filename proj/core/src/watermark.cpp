#include "cawm/watermark.hpp"

#include <algorithm>
#include <string>

#include "cawm/error.hpp"

namespace cawm {

BitMatrix::BitMatrix(std::size_t height, std::size_t width)
    : height_(height), width_(width), bits_(height * width, 0) {}

BitMatrix::BitMatrix(std::size_t height, std::size_t width, std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
    if (bits_.size() != height * width) {
        throw Error(ErrorKind::Dimension, "watermark shape " + std::to_string(height) + "x" +
                                              std::to_string(width) + " does not match " +
                                              std::to_string(bits_.size()) + " bits");
    }
    for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t BitMatrix::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string_view to_string(EmbedMode mode) noexcept {
    return mode == EmbedMode::Or ? "or" : "substitute";
}

EmbedMode parse_embed_mode(std::string_view text) {
    if (text == "or") return EmbedMode::Or;
    if (text == "substitute") return EmbedMode::Substitute;
    throw Error(ErrorKind::Parse, "unknown embedding mode '" + std::string(text) +
                                      "' (expected \"or\" or \"substitute\")");
}

void WatermarkKey::validate() const {
    scramble.validate();
    if (bit_plane < 0 || bit_plane > 7) {
        throw Error(ErrorKind::Range, "bit_plane " + std::to_string(bit_plane) + " is outside 0..7");
    }
    if (repetition < 1 || repetition % 2 == 0) {
        throw Error(ErrorKind::Range, "repetition must be odd and at least 1, got " +
                                          std::to_string(repetition));
    }
    if (wm_height == 0 || wm_width == 0) {
        throw Error(ErrorKind::Range, "watermark dimensions must be positive");
    }
}

namespace {

void check_capacity(const WatermarkKey& key, std::size_t samples) {
    if (key.footprint() > samples) {
        throw Error(ErrorKind::Capacity, "payload of " + std::to_string(key.repetition) + " x " +
                                             std::to_string(key.payload_bits()) +
                                             " bits exceeds carrier of " + std::to_string(samples) +
                                             " samples");
    }
}

void check_permutation(const Permutation& perm, std::size_t samples) {
    if (perm.size() != samples) {
        throw Error(ErrorKind::Dimension, "permutation length " + std::to_string(perm.size()) +
                                              " does not match carrier length " +
                                              std::to_string(samples));
    }
}

}  // namespace

Carrier embed_with_permutation(const Carrier& carrier, const BitMatrix& wm, const WatermarkKey& key,
                               const Permutation& perm) {
    key.validate();
    if (wm.height() != key.wm_height || wm.width() != key.wm_width) {
        throw Error(ErrorKind::Dimension, "watermark is " + std::to_string(wm.height()) + "x" +
                                              std::to_string(wm.width()) + " but key expects " +
                                              std::to_string(key.wm_height) + "x" +
                                              std::to_string(key.wm_width));
    }
    check_capacity(key, carrier.size());
    check_permutation(perm, carrier.size());

    // Scrambled position p is original position perm[p]; writing there is the
    // same as modifying the scrambled carrier and applying the inverse.
    Carrier out = carrier;
    const auto mask = static_cast<std::uint8_t>(1u << key.bit_plane);
    const std::size_t w = wm.size();
    for (std::size_t c = 0; c < key.repetition; ++c) {
        for (std::size_t i = 0; i < w; ++i) {
            std::uint8_t& sample = out[perm[c * w + i]];
            const bool payload = wm.bit(i);
            if (key.mode == EmbedMode::Or) {
                if (payload) sample |= mask;
            } else {
                sample = payload ? (sample | mask) : (sample & static_cast<std::uint8_t>(~mask));
            }
        }
    }
    return out;
}

BitMatrix extract_with_permutation(const Carrier& carrier, const WatermarkKey& key,
                                   const Permutation& perm) {
    key.validate();
    check_capacity(key, carrier.size());
    check_permutation(perm, carrier.size());

    BitMatrix wm(key.wm_height, key.wm_width);
    const std::size_t w = wm.size();
    for (std::size_t i = 0; i < w; ++i) {
        std::size_t ones = 0;
        for (std::size_t c = 0; c < key.repetition; ++c) {
            ones += (carrier[perm[c * w + i]] >> key.bit_plane) & 1u;
        }
        wm.set(i, 2 * ones > key.repetition);
    }
    return wm;
}

Carrier embed(const Carrier& carrier, const BitMatrix& wm, const WatermarkKey& key) {
    key.validate();
    return embed_with_permutation(carrier, wm, key, scramble_permutation(carrier.size(), key.scramble));
}

BitMatrix extract(const Carrier& carrier, const WatermarkKey& key) {
    key.validate();
    check_capacity(key, carrier.size());
    return extract_with_permutation(carrier, key, scramble_permutation(carrier.size(), key.scramble));
}

}  // namespace cawm

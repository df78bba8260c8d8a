#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "cawm/carrier.hpp"

namespace cawm {

enum class AttackKind { Noise, Crop, Jpeg };

std::string_view to_string(AttackKind kind) noexcept;
/// "noise", "crop" or "jpeg"; throws Error(Parse) otherwise.
AttackKind parse_attack_kind(std::string_view text);

struct AttackSpec {
    AttackKind kind = AttackKind::Noise;
    /// Noise density or crop fraction in [0, 1]; JPEG quality in [1, 100].
    double param = 0.0;
    std::uint64_t seed = 0;

    /// Throws Error(Range) when param is outside the range for `kind`.
    void validate() const;
};

/// Impulse noise: each sample is hit with probability `density` and set to
/// 0 or 255 on a further generator bit.
Carrier salt_pepper(const Carrier& image, double density, std::uint64_t seed);

/// Zero-fills one rectangle covering about `fraction` of the area at a
/// generator-chosen position.
Carrier crop_delete(const Carrier& image, double fraction, std::uint64_t seed);

/// Zero-fills the rectangle sized for `fraction` with its top-left corner at
/// (top, left), clipped to the image.
Carrier crop_delete_at(const Carrier& image, double fraction, std::size_t top, std::size_t left);

struct Rect {
    std::size_t top = 0;
    std::size_t left = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    bool operator==(const Rect&) const = default;
};

/// Rectangle sides: round(H * sqrt(fraction)) by round(W * sqrt(fraction)).
Rect crop_extent(const Shape& shape, double fraction);
/// Rectangle crop_delete would fill for this seed.
Rect crop_rect(const Shape& shape, double fraction, std::uint64_t seed);

/// Baseline grayscale JPEG encode at `quality`, then decode.
/// Throws Error(Range) for quality outside 1..100, Error(Codec) on codec failure.
Carrier jpeg_roundtrip(const Carrier& image, int quality);

Carrier apply_attack(const Carrier& image, const AttackSpec& spec);

}  // namespace cawm

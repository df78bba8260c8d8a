#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cawm {

struct Shape {
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t area() const noexcept { return height * width; }
    bool operator==(const Shape&) const = default;
};

/// Host data as a flat run of 8-bit samples. Images keep their (height, width)
/// and are stored row-major.
class Carrier {
public:
    Carrier() = default;

    static Carrier stream(std::vector<std::uint8_t> samples);
    /// Throws Error(Dimension) when height*width != samples.size().
    static Carrier image(std::size_t height, std::size_t width, std::vector<std::uint8_t> samples);

    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    const std::optional<Shape>& shape() const noexcept { return shape_; }

    /// Requires a shape; throws Error(Dimension) otherwise.
    const Shape& image_shape() const;

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }
    std::span<std::uint8_t> samples() noexcept { return samples_; }

    std::uint8_t operator[](std::size_t i) const noexcept { return samples_[i]; }
    std::uint8_t& operator[](std::size_t i) noexcept { return samples_[i]; }
    std::uint8_t at(std::size_t row, std::size_t col) const { return samples_[row * image_shape().width + col]; }

    /// Same shape, new samples.
    Carrier with_samples(std::vector<std::uint8_t> samples) const;

    bool operator==(const Carrier&) const = default;

private:
    std::vector<std::uint8_t> samples_;
    std::optional<Shape> shape_;
};

/// Integer Rec.601 luma, floor((299 R + 587 G + 114 B + 500) / 1000).
constexpr std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

}  // namespace cawm

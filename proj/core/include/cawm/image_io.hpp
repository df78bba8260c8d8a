#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cawm/carrier.hpp"
#include "cawm/watermark.hpp"

namespace cawm::io {

struct LoadedImage {
    Carrier image;
    /// Set when the file held colour samples that were folded to luma.
    bool converted_from_color = false;
};

/// Binary PGM (P5, maxval <= 255).
LoadedImage decode_pgm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_pgm(const Carrier& image);

/// 8-bit grayscale PNG out; gray, gray+alpha, RGB(A) and palette PNG in.
LoadedImage decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const Carrier& image);

/// Dispatches on the file signature. Throws Error(Io) or Error(Parse).
LoadedImage read_image(const std::filesystem::path& path);
/// Format from the extension: ".png" writes PNG, anything else PGM.
void write_image(const std::filesystem::path& path, const Carrier& image);

/// Writes through a sibling temporary file and renames, so a failed write
/// leaves no partial output.
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Samples >= 128 become 1.
BitMatrix threshold_watermark(const Carrier& image);
/// 1 -> 255, 0 -> 0.
Carrier watermark_image(const BitMatrix& wm);

}  // namespace cawm::io

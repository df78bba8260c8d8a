#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cawm/watermark.hpp"

namespace cawm::tools {

/// Key document: a flat JSON object with exactly the fields seed, rule,
/// generations, bit_plane, repetition, mode, wm_height and wm_width.
/// Missing or unknown fields, wrong types and out-of-range values are
/// rejected with Error(Parse) or the key's own validation error.
WatermarkKey parse_key(std::string_view text);
std::string format_key(const WatermarkKey& key);

WatermarkKey load_key(const std::filesystem::path& path);
void save_key(const std::filesystem::path& path, const WatermarkKey& key);

}  // namespace cawm::tools

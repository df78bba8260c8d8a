#include "cawm_tools/keyfile.hpp"

#include <array>
#include <limits>

#include <json.hpp>

#include "cawm/error.hpp"
#include "cawm/image_io.hpp"

namespace cawm::tools {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 8> kFields = {
    "seed", "rule", "generations", "bit_plane", "repetition", "mode", "wm_height", "wm_width",
};

std::uint64_t unsigned_field(const json& doc, const char* name, std::uint64_t max) {
    const json& v = doc.at(name);
    if (!v.is_number_integer()) {
        throw Error(ErrorKind::Parse, std::string("key field '") + name + "' must be a non-negative integer");
    }
    if (v.is_number_unsigned()) {
        const auto value = v.get<std::uint64_t>();
        if (value > max) throw Error(ErrorKind::Parse, std::string("key field '") + name + "' is too large");
        return value;
    }
    const auto value = v.get<std::int64_t>();
    if (value < 0) throw Error(ErrorKind::Parse, std::string("key field '") + name + "' must not be negative");
    if (static_cast<std::uint64_t>(value) > max) {
        throw Error(ErrorKind::Parse, std::string("key field '") + name + "' is too large");
    }
    return static_cast<std::uint64_t>(value);
}

}  // namespace

WatermarkKey parse_key(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("key file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Parse, "key file must hold a JSON object");
    for (const auto& item : doc.items()) {
        bool known = false;
        for (auto f : kFields) known = known || item.key() == f;
        if (!known) throw Error(ErrorKind::Parse, "unknown key field '" + item.key() + "'");
    }
    for (auto f : kFields) {
        if (!doc.contains(f)) throw Error(ErrorKind::Parse, "key field '" + std::string(f) + "' is missing");
    }

    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    constexpr std::uint64_t kMaxDim = 1u << 20;
    WatermarkKey key;
    key.scramble.seed = unsigned_field(doc, "seed", kMax);
    key.scramble.rule = static_cast<int>(unsigned_field(doc, "rule", 255));
    key.scramble.generations = unsigned_field(doc, "generations", 1u << 20);
    key.bit_plane = static_cast<int>(unsigned_field(doc, "bit_plane", 7));
    key.repetition = unsigned_field(doc, "repetition", 1u << 20);
    key.wm_height = unsigned_field(doc, "wm_height", kMaxDim);
    key.wm_width = unsigned_field(doc, "wm_width", kMaxDim);
    if (!doc.at("mode").is_string()) throw Error(ErrorKind::Parse, "key field 'mode' must be a string");
    key.mode = parse_embed_mode(doc.at("mode").get<std::string>());
    key.validate();
    return key;
}

std::string format_key(const WatermarkKey& key) {
    nlohmann::ordered_json doc;
    doc["seed"] = key.scramble.seed;
    doc["rule"] = key.scramble.rule;
    doc["generations"] = key.scramble.generations;
    doc["bit_plane"] = key.bit_plane;
    doc["repetition"] = key.repetition;
    doc["mode"] = std::string(to_string(key.mode));
    doc["wm_height"] = key.wm_height;
    doc["wm_width"] = key.wm_width;
    return doc.dump(2) + "\n";
}

WatermarkKey load_key(const std::filesystem::path& path) {
    const auto bytes = io::read_file(path);
    return parse_key(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void save_key(const std::filesystem::path& path, const WatermarkKey& key) {
    key.validate();
    const std::string text = format_key(key);
    io::write_file_atomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace cawm::tools

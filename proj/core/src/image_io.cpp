#include "cawm/image_io.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <png.h>

#include "cawm/error.hpp"

namespace cawm::io {

namespace {

// Netpbm header tokens are separated by whitespace; '#' starts a comment
// that runs to the end of the line.
class PnmHeaderReader {
public:
    explicit PnmHeaderReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::size_t next_number() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw Error(ErrorKind::Parse, "malformed PGM header");
        }
        std::size_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_++] - '0');
            if (value > (1u << 30)) throw Error(ErrorKind::Parse, "PGM header value too large");
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw Error(ErrorKind::Parse, "malformed PGM header");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 2;
};

bool has_png_signature(const std::vector<std::uint8_t>& bytes) {
    static constexpr std::uint8_t kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), kSig, 8) == 0;
}

}  // namespace

LoadedImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw Error(ErrorKind::Parse, "not a binary PGM (P5) file");
    }
    PnmHeaderReader header(bytes);
    const std::size_t width = header.next_number();
    const std::size_t height = header.next_number();
    const std::size_t maxval = header.next_number();
    if (maxval == 0 || maxval > 255) {
        throw Error(ErrorKind::Parse, "PGM maxval " + std::to_string(maxval) + " is not in 1..255");
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t count = width * height;
    if (bytes.size() - offset < count) throw Error(ErrorKind::Parse, "truncated PGM raster");

    std::vector<std::uint8_t> samples(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                      bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
    for (auto v : samples) {
        if (v > maxval) throw Error(ErrorKind::Parse, "PGM sample exceeds maxval");
    }
    return {Carrier::image(height, width, std::move(samples)), false};
}

std::vector<std::uint8_t> encode_pgm(const Carrier& image) {
    const Shape& shape = image.image_shape();
    const std::string header =
        "P5\n" + std::to_string(shape.width) + " " + std::to_string(shape.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.samples().begin(), image.samples().end());
    return out;
}

LoadedImage decode_png(const std::vector<std::uint8_t>& bytes) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        std::string msg = png.message;
        png_image_free(&png);
        throw Error(ErrorKind::Parse, "PNG decode failed: " + msg);
    }
    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, raw.data(), 0, nullptr)) {
        std::string msg = png.message;
        png_image_free(&png);
        throw Error(ErrorKind::Parse, "PNG decode failed: " + msg);
    }
    const std::size_t height = png.height;
    const std::size_t width = png.width;
    if (!color) return {Carrier::image(height, width, std::move(raw)), false};

    std::vector<std::uint8_t> gray(height * width);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        gray[i] = luma601(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
    }
    return {Carrier::image(height, width, std::move(gray)), true};
}

std::vector<std::uint8_t> encode_png(const Carrier& image) {
    const Shape& shape = image.image_shape();
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(shape.width);
    png.height = static_cast<png_uint_32>(shape.height);
    png.format = PNG_FORMAT_GRAY;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.samples().data(), 0, nullptr)) {
        throw Error(ErrorKind::Io, std::string("PNG encode failed: ") + png.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&png, out.data(), &size, 0, image.samples().data(), 0, nullptr)) {
        throw Error(ErrorKind::Io, std::string("PNG encode failed: ") + png.message);
    }
    out.resize(size);
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorKind::Io, "read error on '" + path.string() + "'");
    return bytes;
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(ErrorKind::Io, "write error on '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot move output into place at '" + path.string() + "'");
    }
}

LoadedImage read_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    if (has_png_signature(bytes)) return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
    throw Error(ErrorKind::Parse, "'" + path.string() + "' is neither PNG nor binary PGM");
}

void write_image(const std::filesystem::path& path, const Carrier& image) {
    std::string ext = path.extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    write_file_atomic(path, ext == ".png" ? encode_png(image) : encode_pgm(image));
}

BitMatrix threshold_watermark(const Carrier& image) {
    const Shape& shape = image.image_shape();
    std::vector<std::uint8_t> bits(image.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = image[i] >= 128 ? 1 : 0;
    return BitMatrix(shape.height, shape.width, std::move(bits));
}

Carrier watermark_image(const BitMatrix& wm) {
    std::vector<std::uint8_t> px(wm.size());
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = wm.bit(i) ? 255 : 0;
    return Carrier::image(wm.height(), wm.width(), std::move(px));
}

}  // namespace cawm::io

#include "cawm/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <jpeglib.h>

#include "cawm/ca_engine.hpp"
#include "cawm/error.hpp"

namespace cawm {

std::string_view to_string(AttackKind kind) noexcept {
    switch (kind) {
        case AttackKind::Noise: return "noise";
        case AttackKind::Crop: return "crop";
        case AttackKind::Jpeg: return "jpeg";
    }
    return "unknown";
}

AttackKind parse_attack_kind(std::string_view text) {
    if (text == "noise") return AttackKind::Noise;
    if (text == "crop") return AttackKind::Crop;
    if (text == "jpeg") return AttackKind::Jpeg;
    throw Error(ErrorKind::Parse, "unknown attack kind '" + std::string(text) +
                                      "' (expected noise, crop or jpeg)");
}

namespace {

void require_fraction(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorKind::Range, std::string(what) + " " + std::to_string(value) + " is outside [0, 1]");
    }
}

void require_quality(double quality) {
    if (!(quality >= 1.0 && quality <= 100.0) || quality != std::floor(quality)) {
        throw Error(ErrorKind::Range, "JPEG quality " + std::to_string(quality) +
                                          " is not an integer in 1..100");
    }
}

}  // namespace

void AttackSpec::validate() const {
    switch (kind) {
        case AttackKind::Noise: require_fraction(param, "noise density"); break;
        case AttackKind::Crop: require_fraction(param, "crop fraction"); break;
        case AttackKind::Jpeg: require_quality(param); break;
    }
}

Carrier salt_pepper(const Carrier& image, double density, std::uint64_t seed) {
    require_fraction(density, "noise density");
    (void)image.image_shape();
    Carrier out = image;
    Prng64 rng(seed);
    for (auto& sample : out.samples()) {
        if (rng.next_unit() < density) {
            sample = (rng.next() >> 63) != 0 ? 255 : 0;
        }
    }
    return out;
}

Rect crop_extent(const Shape& shape, double fraction) {
    require_fraction(fraction, "crop fraction");
    const double side = std::sqrt(fraction);
    Rect r;
    r.height = std::min(shape.height, static_cast<std::size_t>(std::llround(side * static_cast<double>(shape.height))));
    r.width = std::min(shape.width, static_cast<std::size_t>(std::llround(side * static_cast<double>(shape.width))));
    return r;
}

Rect crop_rect(const Shape& shape, double fraction, std::uint64_t seed) {
    Rect r = crop_extent(shape, fraction);
    Prng64 rng(seed);
    r.top = static_cast<std::size_t>(rng.below(shape.height - r.height + 1));
    r.left = static_cast<std::size_t>(rng.below(shape.width - r.width + 1));
    return r;
}

Carrier crop_delete_at(const Carrier& image, double fraction, std::size_t top, std::size_t left) {
    const Shape& shape = image.image_shape();
    const Rect extent = crop_extent(shape, fraction);
    Carrier out = image;
    const std::size_t bottom = std::min(shape.height, top + extent.height);
    const std::size_t right = std::min(shape.width, left + extent.width);
    for (std::size_t i = top; i < bottom; ++i) {
        for (std::size_t j = left; j < right; ++j) out[i * shape.width + j] = 0;
    }
    return out;
}

Carrier crop_delete(const Carrier& image, double fraction, std::uint64_t seed) {
    const Rect r = crop_rect(image.image_shape(), fraction, seed);
    return crop_delete_at(image, fraction, r.top, r.left);
}

namespace {

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf escape;
    char message[JMSG_LENGTH_MAX];
};

extern "C" void jpeg_error_escape(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->escape, 1);
}

// libjpeg reports failure through longjmp; these helpers keep every C++
// object with a destructor out of the frames it unwinds.
bool encode_gray(const std::uint8_t* pixels, unsigned width, unsigned height, int quality,
                 unsigned char** buffer, unsigned long* size, char* message) {
    jpeg_compress_struct cinfo{};
    JpegErrorManager err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_escape;
    if (setjmp(err.escape)) {
        std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
        jpeg_destroy_compress(&cinfo);
        return false;
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, buffer, size);
    cinfo.image_width = width;
    cinfo.image_height = height;
    cinfo.input_components = 1;
    cinfo.in_color_space = JCS_GRAYSCALE;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    cinfo.dct_method = JDCT_ISLOW;
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(pixels + static_cast<std::size_t>(cinfo.next_scanline) * width);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
    return true;
}

bool decode_gray(const unsigned char* data, unsigned long size, std::uint8_t* pixels, unsigned width,
                 unsigned height, char* message) {
    jpeg_decompress_struct cinfo{};
    JpegErrorManager err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_escape;
    if (setjmp(err.escape)) {
        std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, data, size);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_GRAYSCALE;
    cinfo.dct_method = JDCT_ISLOW;
    jpeg_start_decompress(&cinfo);
    if (cinfo.output_width != width || cinfo.output_height != height || cinfo.output_components != 1) {
        std::snprintf(message, JMSG_LENGTH_MAX, "decoded JPEG has unexpected geometry");
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = pixels + static_cast<std::size_t>(cinfo.output_scanline) * width;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

struct JpegBuffer {
    unsigned char* data = nullptr;
    unsigned long size = 0;
    ~JpegBuffer() { std::free(data); }
};

}  // namespace

Carrier jpeg_roundtrip(const Carrier& image, int quality) {
    require_quality(quality);
    const Shape& shape = image.image_shape();
    if (shape.area() == 0) return image;

    char message[JMSG_LENGTH_MAX] = {};
    JpegBuffer encoded;
    if (!encode_gray(image.samples().data(), static_cast<unsigned>(shape.width),
                     static_cast<unsigned>(shape.height), quality, &encoded.data, &encoded.size, message)) {
        throw Error(ErrorKind::Codec, std::string("JPEG encode failed: ") + message);
    }
    std::vector<std::uint8_t> pixels(shape.area());
    if (!decode_gray(encoded.data, encoded.size, pixels.data(), static_cast<unsigned>(shape.width),
                     static_cast<unsigned>(shape.height), message)) {
        throw Error(ErrorKind::Codec, std::string("JPEG decode failed: ") + message);
    }
    return image.with_samples(std::move(pixels));
}

Carrier apply_attack(const Carrier& image, const AttackSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case AttackKind::Noise: return salt_pepper(image, spec.param, spec.seed);
        case AttackKind::Crop: return crop_delete(image, spec.param, spec.seed);
        case AttackKind::Jpeg: return jpeg_roundtrip(image, static_cast<int>(spec.param));
    }
    return image;
}

}  // namespace cawm

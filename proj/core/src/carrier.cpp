#include "cawm/carrier.hpp"

#include <string>

#include "cawm/error.hpp"

namespace cawm {

Carrier Carrier::stream(std::vector<std::uint8_t> samples) {
    Carrier c;
    c.samples_ = std::move(samples);
    return c;
}

Carrier Carrier::image(std::size_t height, std::size_t width, std::vector<std::uint8_t> samples) {
    if (height * width != samples.size()) {
        throw Error(ErrorKind::Dimension, "image shape " + std::to_string(height) + "x" +
                                              std::to_string(width) + " does not match " +
                                              std::to_string(samples.size()) + " samples");
    }
    Carrier c;
    c.samples_ = std::move(samples);
    c.shape_ = Shape{height, width};
    return c;
}

const Shape& Carrier::image_shape() const {
    if (!shape_) throw Error(ErrorKind::Dimension, "carrier has no image shape");
    return *shape_;
}

Carrier Carrier::with_samples(std::vector<std::uint8_t> samples) const {
    if (shape_) return image(shape_->height, shape_->width, std::move(samples));
    return stream(std::move(samples));
}

}  // namespace cawm

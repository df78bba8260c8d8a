#include "cawm/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cawm/error.hpp"

namespace cawm {

namespace {

void require_same_shape(const Carrier& a, const Carrier& b) {
    if (a.size() != b.size() || a.shape() != b.shape()) {
        throw Error(ErrorKind::Dimension, "inputs differ in dimensions");
    }
}

void require_same_shape(const BitMatrix& a, const BitMatrix& b) {
    if (a.height() != b.height() || a.width() != b.width()) {
        throw Error(ErrorKind::Dimension, "watermarks differ in dimensions");
    }
}

}  // namespace

double gray_difference_mean(const Carrier& image) {
    const Shape& shape = image.image_shape();
    const std::size_t rows = shape.height;
    const std::size_t cols = shape.width;
    if (rows < 3 || cols < 3) {
        throw Error(ErrorKind::Dimension, "gray difference needs at least 3x3, got " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
    }
    auto sq = [](int d) { return static_cast<double>(d * d); };
    const auto px = image.samples();
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        for (std::size_t j = 1; j + 1 < cols; ++j) {
            const int c = px[i * cols + j];
            const double gd = sq(c - px[(i - 1) * cols + j]) + sq(c - px[(i + 1) * cols + j]) +
                              sq(c - px[i * cols + j - 1]) + sq(c - px[i * cols + j + 1]);
            total += gd / 4.0;
        }
    }
    return total / static_cast<double>((rows - 2) * (cols - 2));
}

Gdd gdd(const Carrier& original, const Carrier& test) {
    require_same_shape(original, test);
    const double e = gray_difference_mean(original);
    const double e_test = gray_difference_mean(test);
    Gdd out;
    out.raw = e_test - e;
    const double sum = e_test + e;
    out.normalized = sum == 0.0 ? 0.0 : out.raw / sum;
    return out;
}

double ber(const BitMatrix& a, const BitMatrix& b) {
    require_same_shape(a, b);
    if (a.size() == 0) throw Error(ErrorKind::Dimension, "bit error rate of an empty watermark");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < a.size(); ++i) errors += a.bit(i) != b.bit(i) ? 1 : 0;
    return static_cast<double>(errors) / static_cast<double>(a.size());
}

double nc(const BitMatrix& reference, const BitMatrix& b) {
    require_same_shape(reference, b);
    std::size_t ones = 0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference.bit(i)) {
            ++ones;
            kept += b.bit(i) ? 1 : 0;
        }
    }
    if (ones == 0) throw Error(ErrorKind::UndefinedReference, "reference watermark has no 1-bits");
    return static_cast<double>(kept) / static_cast<double>(ones);
}

double psnr(const Carrier& a, const Carrier& b) {
    require_same_shape(a, b);
    if (a.empty()) throw Error(ErrorKind::Dimension, "PSNR of empty inputs");
    double sse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        sse += static_cast<double>(d * d);
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

Histogram histogram(const Carrier& image) {
    Histogram counts{};
    for (std::uint8_t v : image.samples()) ++counts[v];
    return counts;
}

EvalReport evaluate(const Carrier& original, const Carrier& scrambled, const Carrier& marked,
                    const BitMatrix& embedded, const BitMatrix& extracted) {
    EvalReport r;
    r.e_gd_original = gray_difference_mean(original);
    r.e_gd_test = gray_difference_mean(scrambled);
    const Gdd g = gdd(original, scrambled);
    r.gdd_normalized = g.normalized;
    r.gdd_raw = g.raw;
    r.psnr_db = psnr(original, marked);
    r.ber = ber(embedded, extracted);
    r.nc = embedded.count_ones() == 0 ? 0.0 : nc(embedded, extracted);
    r.histogram_equal = histogram(original) == histogram(scrambled);
    return r;
}

}  // namespace cawm

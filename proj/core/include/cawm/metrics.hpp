#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "cawm/carrier.hpp"
#include "cawm/watermark.hpp"

namespace cawm {

/// Mean over interior pixels of GD(i,j) = 1/4 * sum over the four von Neumann
/// neighbours of (P(i,j) - P(neighbour))^2. The one-pixel border is excluded.
/// Throws Error(Dimension) for images smaller than 3x3.
double gray_difference_mean(const Carrier& image);

struct Gdd {
    /// (E' - E) / (E' + E), 0 when both vanish.
    double normalized = 0.0;
    /// E' - E.
    double raw = 0.0;
};

/// Scrambling degree of `test` relative to `original`.
Gdd gdd(const Carrier& original, const Carrier& test);

double ber(const BitMatrix& a, const BitMatrix& b);

/// Fraction of the reference's 1-bits that are also set in `b`.
/// Throws Error(UndefinedReference) when `reference` has no 1-bits.
double nc(const BitMatrix& reference, const BitMatrix& b);

/// 10 log10(255^2 / MSE); +inf for identical inputs.
double psnr(const Carrier& a, const Carrier& b);

using Histogram = std::array<std::size_t, 256>;
Histogram histogram(const Carrier& image);

struct EvalReport {
    double e_gd_original = 0.0;
    double e_gd_test = 0.0;
    double gdd_normalized = 0.0;
    double gdd_raw = 0.0;
    double psnr_db = 0.0;
    double ber = 0.0;
    double nc = 0.0;
    bool histogram_equal = false;
};

/// Bundles the scrambling metrics of (original, scrambled) with the fidelity
/// metrics of (original, marked) and (embedded, extracted).
EvalReport evaluate(const Carrier& original, const Carrier& scrambled, const Carrier& marked,
                    const BitMatrix& embedded, const BitMatrix& extracted);

}  // namespace cawm

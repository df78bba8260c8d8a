#include "cawm/metrics.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "cawm/error.hpp"
#include "cawm/permute.hpp"
#include "support/oracles.hpp"

namespace cawm {
namespace {

Carrier checkerboard(std::size_t h, std::size_t w) {
    std::vector<std::uint8_t> px(h * w);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) px[i * w + j] = ((i + j) % 2) ? 255 : 0;
    return Carrier::image(h, w, std::move(px));
}

Carrier constant(std::size_t h, std::size_t w, std::uint8_t v) {
    return Carrier::image(h, w, std::vector<std::uint8_t>(h * w, v));
}

TEST(GrayDifferenceTest, ClosedForms) {
    EXPECT_EQ(gray_difference_mean(constant(7, 9, 0)), 0.0);
    EXPECT_EQ(gray_difference_mean(constant(7, 9, 200)), 0.0);
    EXPECT_EQ(gray_difference_mean(checkerboard(8, 8)), 65025.0);
    EXPECT_EQ(gray_difference_mean(Carrier::image(3, 3, {0, 0, 0, 0, 255, 0, 0, 0, 0})), 65025.0);
}

TEST(GrayDifferenceTest, BorderIsExcluded) {
    // Only (1,1) is interior; its neighbours are all 10, the corners do not count.
    const Carrier img = Carrier::image(3, 3, {200, 10, 200, 10, 12, 10, 200, 10, 200});
    EXPECT_DOUBLE_EQ(gray_difference_mean(img), 4.0);
}

TEST(GrayDifferenceTest, TooSmall) {
    EXPECT_THROW((void)gray_difference_mean(constant(2, 5, 0)), Error);
    EXPECT_THROW((void)gray_difference_mean(constant(5, 2, 0)), Error);
    EXPECT_THROW((void)gray_difference_mean(Carrier::stream({1, 2, 3, 4, 5, 6, 7, 8, 9})), Error);
}

TEST(GrayDifferenceTest, MatchesNaiveReference) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t h = 3 + rng() % 10, w = 3 + rng() % 10;
        const auto px = oracle::random_bytes(rng, h * w);
        const double ref = oracle::gray_difference_mean(px, h, w);
        const double got = gray_difference_mean(Carrier::image(h, w, px));
        ASSERT_LE(std::abs(got - ref), 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST(GrayDifferenceTest, ReflectionInvariant) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto px = oracle::random_bytes(rng, 100);
        const double a = gray_difference_mean(Carrier::image(10, 10, px));
        for (auto& v : px) v = static_cast<std::uint8_t>(255 - v);
        EXPECT_DOUBLE_EQ(gray_difference_mean(Carrier::image(10, 10, px)), a);
    }
}

TEST(GddTest, ClosedForms) {
    const Carrier flat = constant(6, 6, 90);
    const Carrier board = checkerboard(6, 6);
    const Gdd same = gdd(board, board);
    EXPECT_EQ(same.normalized, 0.0);
    EXPECT_EQ(same.raw, 0.0);
    EXPECT_EQ(gdd(flat, flat).normalized, 0.0);

    const Gdd up = gdd(flat, board);
    EXPECT_EQ(up.normalized, 1.0);
    EXPECT_EQ(up.raw, 65025.0);
    EXPECT_EQ(gdd(board, flat).normalized, -1.0);
}

TEST(GddTest, AntisymmetricAndBounded) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const Carrier a = Carrier::image(8, 8, oracle::random_bytes(rng, 64));
        const Carrier b = Carrier::image(8, 8, oracle::random_bytes(rng, 64));
        const double ab = gdd(a, b).normalized;
        EXPECT_DOUBLE_EQ(ab, -gdd(b, a).normalized);
        EXPECT_GE(ab, -1.0);
        EXPECT_LE(ab, 1.0);
    }
}

TEST(GddTest, DimensionMismatch) {
    EXPECT_THROW((void)gdd(constant(4, 4, 0), constant(4, 5, 0)), Error);
    EXPECT_THROW((void)gdd(constant(4, 4, 0), constant(2, 8, 0)), Error);
}

TEST(BerTest, Values) {
    const BitMatrix a(1, 4, {1, 0, 1, 1});
    EXPECT_EQ(ber(a, a), 0.0);
    EXPECT_EQ(ber(a, BitMatrix(1, 4, {0, 1, 0, 0})), 1.0);
    EXPECT_EQ(ber(a, BitMatrix(1, 4, {1, 1, 1, 0})), 0.5);
    EXPECT_EQ(ber(BitMatrix(1, 4, {1, 1, 1, 0}), a), 0.5);
}

TEST(BerTest, Errors) {
    EXPECT_THROW((void)ber(BitMatrix(1, 4), BitMatrix(2, 2)), Error);
    EXPECT_THROW((void)ber(BitMatrix(0, 0), BitMatrix(0, 0)), Error);
}

TEST(NcTest, Values) {
    const BitMatrix a(1, 4, {1, 1, 0, 0});
    EXPECT_EQ(nc(a, a), 1.0);
    EXPECT_EQ(nc(a, BitMatrix(1, 4)), 0.0);
    EXPECT_EQ(nc(a, BitMatrix(1, 4, {1, 0, 1, 0})), 0.5);
}

TEST(NcTest, Errors) {
    try {
        (void)nc(BitMatrix(1, 4), BitMatrix(1, 4, {1, 1, 1, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UndefinedReference);
    }
    EXPECT_THROW((void)nc(BitMatrix(1, 4, {1, 0, 0, 0}), BitMatrix(4, 1)), Error);
}

TEST(PsnrTest, Values) {
    const Carrier a = constant(4, 4, 0);
    EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
    EXPECT_EQ(psnr(a, constant(4, 4, 255)), 0.0);
    EXPECT_NEAR(psnr(Carrier::stream({0}), Carrier::stream({1})), 48.1308036086791, 1e-9);
    EXPECT_THROW((void)psnr(a, constant(2, 8, 0)), Error);
    EXPECT_THROW((void)psnr(Carrier::stream({}), Carrier::stream({})), Error);
}

TEST(HistogramTest, Counts) {
    const Histogram h = histogram(Carrier::stream({0, 0, 255}));
    EXPECT_EQ(h[0], 2u);
    EXPECT_EQ(h[255], 1u);
    std::size_t total = 0;
    for (auto c : h) total += c;
    EXPECT_EQ(total, 3u);
    const Histogram empty = histogram(Carrier::stream({}));
    for (auto c : empty) EXPECT_EQ(c, 0u);
}

TEST(HistogramTest, PermutationInvariant) {
    std::mt19937_64 rng(31);
    const Carrier x = Carrier::image(32, 32, oracle::random_bytes(rng, 1024));
    EXPECT_EQ(histogram(apply_permutation(x, scramble_permutation(1024, ScrambleKey{5}))), histogram(x));
}

TEST(EvaluateTest, BundlesMetrics) {
    std::mt19937_64 rng(37);
    const Carrier x = Carrier::image(16, 16, oracle::random_bytes(rng, 256));
    const Carrier s = apply_permutation(x, Permutation::reversal(256));
    const BitMatrix wm(2, 2, {1, 0, 1, 1});
    const EvalReport r = evaluate(x, s, x, wm, wm);
    EXPECT_TRUE(r.histogram_equal);
    EXPECT_EQ(r.ber, 0.0);
    EXPECT_EQ(r.nc, 1.0);
    EXPECT_TRUE(std::isinf(r.psnr_db));
    EXPECT_DOUBLE_EQ(r.gdd_raw, r.e_gd_test - r.e_gd_original);
}

}  // namespace
}  // namespace cawm

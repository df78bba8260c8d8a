// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cawm/attacks.hpp"
#include "cawm/baselines.hpp"
#include "cawm/image_io.hpp"
#include "cawm/metrics.hpp"
#include "cawm/permute.hpp"
#include "cawm/watermark.hpp"
#include "cawm_tools/bench.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"

namespace {

using namespace cawm;
namespace fs = std::filesystem;

// Frozen values. T_GDD: camera256, seed 1, rule 7, 20 generations measured
// 0.898551; the threshold keeps ~0.01 headroom.
constexpr double kGddThreshold = 0.89;
// Impulse density 0.4: each copy of a 1-bit errs with p = 0.4 * 0.5 = 0.2,
// nine-vote majority fails with 0.01958, so E[NC] = 0.9804 with sd ~0.007 over
// the logo's 422 ones. Threshold sits ~4.5 sd below.
constexpr double kNoiseNcThreshold = 0.95;
// Lowest plane whose JPEG q80 BER stayed below 0.25 for keys 1, 42, 2024
// in the calibration sweep (plane 2: 0.275-0.301, plane 3: 0.148-0.176).
constexpr int kJpegPlane = 3;
constexpr double kJpegBerLimit = 0.25;
constexpr double kPsnrFloor = 51.0;
constexpr std::uint64_t kKeySeed = 1;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %-4s %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Carrier cover() { return io::read_image(testing::data_path("camera256.pgm")).image; }
BitMatrix logo() { return io::threshold_watermark(io::read_image(testing::data_path("logo32.pgm")).image); }

WatermarkKey suite_key(int plane = 0, std::uint64_t seed = kKeySeed) {
    WatermarkKey k;
    k.scramble = ScrambleKey{seed, 7, 20};
    k.bit_plane = plane;
    k.repetition = 9;
    k.mode = EmbedMode::Substitute;
    k.wm_height = 32;
    k.wm_width = 32;
    return k;
}

bool bijective(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v : p.indices()) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Outcome bijectivity_sweep() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20261016);
    int runs = 0;
    for (std::size_t n : {0u, 1u, 2u, 3u, 64u, 4096u}) {
        for (int k = 0; k < 100; ++k) {
            const ScrambleKey key{rng()};
            if (!bijective(scramble_permutation(n, key))) {
                return {false, "length " + std::to_string(n) + " seed " + std::to_string(key.seed)};
            }
            ++runs;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {secs < 10.0, std::to_string(runs) + " permutations valid in " + fmt("%.3f s (limit 10 s)", secs)};
}

Outcome round_trip() {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const std::size_t h = 1 + rng() % 256, w = 1 + rng() % 256;
        const Carrier x = Carrier::image(h, w, oracle::random_bytes(rng, h * w));
        const Permutation j = scramble_permutation(x.size(), ScrambleKey{rng()});
        if (apply_permutation(apply_permutation(x, j), invert(j)) != x) {
            return {false, "unscramble mismatch on image " + std::to_string(t)};
        }
    }
    const Carrier c = cover();
    const BitMatrix wm = logo();
    const double rate = ber(wm, extract(embed(c, wm, suite_key()), suite_key()));
    return {rate == 0.0, "100 random images byte-exact; embed->extract BER " + fmt("%.6f", rate)};
}

Outcome histogram_invariance() {
    std::vector<Carrier> images = {cover(), io::read_image(testing::data_path("camera64.pgm")).image};
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t h = 1 + rng() % 256, w = 1 + rng() % 256;
        images.push_back(Carrier::image(h, w, oracle::random_bytes(rng, h * w)));
    }
    for (const auto& x : images) {
        if (histogram(apply_permutation(x, scramble_permutation(x.size(), ScrambleKey{rng()}))) != histogram(x)) {
            return {false, "histogram changed"};
        }
    }
    return {true, std::to_string(images.size()) + " images, histograms identical"};
}

Outcome metric_oracles() {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto px = oracle::random_bytes(rng, 25);
        const double ref = oracle::gray_difference_mean(px, 5, 5);
        const double got = gray_difference_mean(Carrier::image(5, 5, px));
        const double rel = ref == 0.0 ? std::abs(got) : std::abs(got - ref) / std::abs(ref);
        worst = std::max(worst, rel);
    }
    const double flat = gray_difference_mean(Carrier::image(16, 16, std::vector<std::uint8_t>(256, 77)));
    std::vector<std::uint8_t> board(256);
    for (std::size_t i = 0; i < 256; ++i) board[i] = ((i / 16 + i % 16) % 2) ? 255 : 0;
    const double check = gray_difference_mean(Carrier::image(16, 16, board));
    const Carrier c = cover();
    const Gdd self = gdd(c, c);
    const bool ok = worst <= 1e-12 && flat == 0.0 && check == 65025.0 && self.normalized == 0.0 && self.raw == 0.0;
    return {ok, "max rel err " + fmt("%.3g", worst) + ", constant " + fmt("%g", flat) + ", checkerboard " +
                    fmt("%g", check) + ", gdd(x,x) " + fmt("%g", self.normalized)};
}

Outcome ca_oracle() {
    long long states = 0;
    for (int rule = 0; rule < 256; ++rule) {
        const RuleTable t = rule_table(rule);
        for (std::size_t n = 1; n <= 12; ++n) {
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                BitVector s(n);
                for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1u;
                if (ca_step(s, t) != oracle::ca_step(s, rule)) {
                    return {false, "rule " + std::to_string(rule) + " mask " + std::to_string(mask)};
                }
                ++states;
            }
        }
    }
    const RuleTable r7 = rule_table(7);
    for (std::size_t n = 1; n <= 64; ++n) {
        const BitVector zeros(n, 0), ones(n, 1);
        if (ca_step(zeros, r7) != ones || ca_step(ones, r7) != zeros) {
            return {false, "rule 7 cycle broken at length " + std::to_string(n)};
        }
    }
    return {true, std::to_string(states) + " (rule, state) pairs agree; rule 7 0<->1 cycle holds for 1..64"};
}

Outcome hand_trace() {
    const Permutation p = scramble_from_initial({1, 0, 1, 0}, 7, 20);
    const bool ok = p == Permutation::from_indices({0, 2, 1, 3});
    std::string got;
    for (auto v : p.indices()) got += std::to_string(v) + " ";
    return {ok, "J = [ " + got + "]"};
}

Outcome scrambling_degree() {
    const Carrier c = cover();
    const Gdd g = gdd(c, apply_permutation(c, scramble_permutation(c.size(), suite_key().scramble)));
    return {g.normalized >= kGddThreshold,
            "normalized GDD " + fmt("%.6f", g.normalized) + " >= " + fmt("%.2f", kGddThreshold) + " (raw " +
                fmt("%.3f)", g.raw)};
}

Outcome robustness_noise() {
    const Carrier c = cover();
    const BitMatrix wm = logo();
    const WatermarkKey key = suite_key();
    const double value = nc(wm, extract(salt_pepper(embed(c, wm, key), 0.4, 7), key));
    const double expected = 1.0 - oracle::majority_failure(0.2, 9);
    return {value >= kNoiseNcThreshold, "density 0.4: NC " + fmt("%.4f", value) + " >= " +
                                            fmt("%.2f", kNoiseNcThreshold) + " (binomial expectation " +
                                            fmt("%.4f)", expected)};
}

Outcome robustness_crop() {
    // 128x128 zero rectangle over the top-left corner, where the direct
    // baseline keeps its payload.
    const Carrier c = cover();
    const BitMatrix wm = logo();
    const WatermarkKey key = suite_key();
    const double ca = ber(wm, extract(crop_delete_at(embed(c, wm, key), 0.25, 0, 0), key));
    const double direct = ber(wm, lsb_extract_direct(crop_delete_at(lsb_embed_direct(c, wm, 9, 0), 0.25, 0, 0), 32, 32, 9, 0));

    // Same comparison over keys 1..20, so the verdict does not rest on one key.
    double sum = 0.0;
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const WatermarkKey k = suite_key(0, seed);
        const double b = ber(wm, extract(crop_delete_at(embed(c, wm, k), 0.25, 0, 0), k));
        sum += b;
        wins += b < direct ? 1 : 0;
    }
    const double mean = sum / 20.0;
    return {ca < direct && mean < direct,
            "corner crop 0.25: CA BER " + fmt("%.4f", ca) + " vs direct " + fmt("%.4f", direct) +
                "; 20-key mean " + fmt("%.4f", mean) + ", CA lower for " + std::to_string(wins) + "/20 keys"};
}

Outcome robustness_jpeg() {
    const Carrier c = cover();
    const BitMatrix wm = logo();
    const WatermarkKey plane0 = suite_key(0);
    const double ber0 = ber(wm, extract(jpeg_roundtrip(embed(c, wm, plane0), 80), plane0));
    std::printf("[INFO] 8c   JPEG q80 at bit plane 0: BER %.4f (recorded, not gated)\n", ber0);
    const WatermarkKey high = suite_key(kJpegPlane);
    const Carrier marked = embed(c, wm, high);
    const double rate = ber(wm, extract(jpeg_roundtrip(marked, 80), high));
    return {rate < kJpegBerLimit, "JPEG q80 at bit plane " + std::to_string(kJpegPlane) + ": BER " +
                                      fmt("%.4f", rate) + " < " + fmt("%.2f", kJpegBerLimit) + " (PSNR " +
                                      fmt("%.2f dB)", psnr(c, marked))};
}

Outcome robustness_grid() {
    const auto start = std::chrono::steady_clock::now();
    for (auto [name, f] : std::vector<std::pair<const char*, Outcome (*)()>>{
             {"8a", robustness_noise}, {"8b", robustness_crop}, {"8c", robustness_jpeg}}) {
        report(name, "robustness", f);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {secs < 120.0, "grid finished in " + fmt("%.2f s (limit 120 s)", secs)};
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "cawm_acceptance_bench";
    fs::remove_all(root);
    auto run_once = [&](const char* sub) {
        tools::BenchConfig cfg;
        cfg.covers = {testing::data_path("camera256.pgm")};
        cfg.watermark = testing::data_path("logo32.pgm");
        cfg.key = suite_key();
        cfg.attacks = {{AttackKind::Noise, {0.1, 0.4}}, {AttackKind::Crop, {0.25}}, {AttackKind::Jpeg, {30, 80}}};
        cfg.seeds = {1, 2};
        cfg.output = root / sub;
        (void)tools::run_bench(cfg);
        return io::read_file(cfg.output / "report.csv");
    };
    const auto a = run_once("a");
    const auto b = run_once("b");
    fs::remove_all(root);
    return {a == b && !a.empty(), "two bench runs: " + std::to_string(a.size()) + " CSV bytes, " +
                                      (a == b ? "identical" : "DIFFERENT")};
}

Outcome imperceptibility() {
    const Carrier c = cover();
    const BitMatrix wm = logo();
    WatermarkKey single = suite_key();
    single.repetition = 1;
    const double p1024 = psnr(c, embed(c, wm, single));
    const double p9216 = psnr(c, embed(c, wm, suite_key()));
    // Footprint bound: MSE <= changed/N at plane 0.
    const double bound = 10.0 * std::log10(255.0 * 255.0 * 65536.0 / 1024.0);
    return {p1024 >= kPsnrFloor && p1024 >= bound && p9216 >= kPsnrFloor,
            "1024-sample payload " + fmt("%.2f dB", p1024) + " (analytic floor " + fmt("%.2f)", bound) +
                ", 9x1024 payload " + fmt("%.2f dB", p9216)};
}

}  // namespace

int main() {
    report("1", "bijectivity sweep", bijectivity_sweep);
    report("2", "round-trip exactness", round_trip);
    report("3", "histogram invariance", histogram_invariance);
    report("4", "metric oracles", metric_oracles);
    report("5", "CA oracle", ca_oracle);
    report("6", "hand-traced permutation", hand_trace);
    report("7", "scrambling degree", scrambling_degree);
    report("8", "robustness grid", robustness_grid);
    report("9", "determinism", determinism);
    report("10", "imperceptibility", imperceptibility);
    std::printf("%s: %d criterion check(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cawm/attacks.hpp"
#include "cawm/watermark.hpp"

namespace cawm::tools {

enum class Method { CaScramble, FisherYates, DirectLsb };

/// Report name: "ca-rule-<rule>", "fisher-yates" or "direct-lsb".
std::string method_name(Method method, const WatermarkKey& key);

struct AttackGrid {
    AttackKind kind = AttackKind::Noise;
    std::vector<double> params;
};

struct BenchConfig {
    std::vector<std::filesystem::path> covers;
    std::filesystem::path watermark;
    WatermarkKey key;
    std::vector<Method> methods = {Method::CaScramble, Method::FisherYates, Method::DirectLsb};
    std::vector<AttackGrid> attacks;
    /// Attack seeds; every grid cell is repeated once per seed.
    std::vector<std::uint64_t> seeds = {1};
    std::filesystem::path output;
    /// Worker threads. Row order does not depend on it.
    std::size_t jobs = 1;

    /// Throws Error(Parse) for an empty grid or outputs overlapping inputs.
    void validate() const;
};

/// JSON config. Relative paths resolve against `base_dir`. Attack entries
/// list "values" or a "from"/"to"/"step" range. "key" is a key-file path or
/// an inline key object.
BenchConfig parse_bench_config(std::string_view text, const std::filesystem::path& base_dir);
BenchConfig load_bench_config(const std::filesystem::path& path);

struct BenchRow {
    std::string method;
    std::string cover;
    AttackKind attack = AttackKind::Noise;
    double param = 0.0;
    std::uint64_t seed = 0;
    double ber = 0.0;
    double nc = 0.0;
    /// Cover against attacked marked image.
    double psnr_db = 0.0;
    /// Scrambling degree and E(GD) of the method's permuted cover.
    double gdd = 0.0;
    double e_gd = 0.0;
    std::string error;

    bool ok() const noexcept { return error.empty(); }
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::size_t failed = 0;
};

inline constexpr std::string_view kCsvHeader = "method,cover,attack,param,seed,ber,nc,psnr_db,gdd,e_gd,status";

/// Runs every (cover, method, attack, param, seed) cell, writing per-cell
/// images under output/cells, output/report.csv and output/summary.json.
/// Failed cells are recorded and do not stop the run.
BenchResult run_bench(const BenchConfig& config);

std::string format_csv(const std::vector<BenchRow>& rows);
std::string format_summary(const BenchConfig& config, const BenchResult& result);

/// "%g"-style parameter text used in reports and directory names.
std::string format_param(double value);

}  // namespace cawm::tools

#include "cawm_tools/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "cawm/baselines.hpp"
#include "cawm/error.hpp"
#include "cawm/image_io.hpp"
#include "cawm/metrics.hpp"
#include "cawm/permute.hpp"
#include "cawm_tools/keyfile.hpp"

namespace cawm::tools {

namespace fs = std::filesystem;
using nlohmann::json;

std::string method_name(Method method, const WatermarkKey& key) {
    switch (method) {
        case Method::CaScramble: return "ca-rule-" + std::to_string(key.scramble.rule);
        case Method::FisherYates: return "fisher-yates";
        case Method::DirectLsb: return "direct-lsb";
    }
    return "unknown";
}

std::string format_param(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

namespace {

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

Method parse_method(const std::string& name) {
    if (name.rfind("ca-rule-", 0) == 0 || name == "ca") return Method::CaScramble;
    if (name == "fisher-yates") return Method::FisherYates;
    if (name == "direct-lsb") return Method::DirectLsb;
    throw Error(ErrorKind::Parse, "unknown bench method '" + name + "'");
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::vector<double> expand_range(double from, double to, double step) {
    if (!(step > 0.0) || to < from) throw Error(ErrorKind::Parse, "attack range needs from <= to and step > 0");
    std::vector<double> values;
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
        // Rounded to 1e-9 so 0.1 + 2*0.1 reports as 0.3.
        values.push_back(std::round((from + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
    return values;
}

bool is_within(const fs::path& inner, const fs::path& outer) {
    const fs::path a = fs::weakly_canonical(inner);
    const fs::path b = fs::weakly_canonical(outer);
    auto mismatch = std::mismatch(b.begin(), b.end(), a.begin(), a.end());
    return mismatch.first == b.end();
}

}  // namespace

void BenchConfig::validate() const {
    if (covers.empty()) throw Error(ErrorKind::Parse, "bench config lists no covers");
    if (methods.empty()) throw Error(ErrorKind::Parse, "bench config lists no methods");
    if (seeds.empty()) throw Error(ErrorKind::Parse, "bench config lists no seeds");
    if (output.empty()) throw Error(ErrorKind::Parse, "bench config has no output directory");
    std::size_t cells = 0;
    for (const auto& grid : attacks) {
        for (double p : grid.params) AttackSpec{grid.kind, p, 0}.validate();
        cells += grid.params.size();
    }
    if (cells == 0) throw Error(ErrorKind::Parse, "bench attack grid is empty");
    std::vector<fs::path> inputs = covers;
    inputs.push_back(watermark);
    for (const auto& in : inputs) {
        if (is_within(in, output)) {
            throw Error(ErrorKind::Parse, "input '" + in.string() + "' lies inside the output directory");
        }
    }
    key.validate();
}

BenchConfig parse_bench_config(std::string_view text, const fs::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("bench config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Parse, "bench config must hold a JSON object");

    BenchConfig config;
    try {
        for (const auto& c : doc.at("covers")) config.covers.push_back(resolve(base_dir, c.get<std::string>()));
        config.watermark = resolve(base_dir, doc.at("watermark").get<std::string>());
        const json& key = doc.at("key");
        config.key = key.is_string() ? load_key(resolve(base_dir, key.get<std::string>())) : parse_key(key.dump());
        if (doc.contains("methods")) {
            config.methods.clear();
            for (const auto& m : doc.at("methods")) config.methods.push_back(parse_method(m.get<std::string>()));
        }
        for (const auto& a : doc.at("attacks")) {
            AttackGrid grid;
            grid.kind = parse_attack_kind(a.at("kind").get<std::string>());
            if (a.contains("values")) {
                grid.params = a.at("values").get<std::vector<double>>();
            } else {
                grid.params = expand_range(a.at("from").get<double>(), a.at("to").get<double>(),
                                           a.at("step").get<double>());
            }
            config.attacks.push_back(std::move(grid));
        }
        if (doc.contains("seeds")) config.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
        config.output = resolve(base_dir, doc.at("output").get<std::string>());
        if (doc.contains("jobs")) config.jobs = std::max<std::size_t>(1, doc.at("jobs").get<std::size_t>());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("bench config: ") + e.what());
    }
    config.validate();
    return config;
}

BenchConfig load_bench_config(const fs::path& path) {
    const auto bytes = io::read_file(path);
    return parse_bench_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                              path.parent_path());
}

namespace {

struct PreparedCover {
    std::string name;
    Carrier image;
};

struct PreparedMethod {
    Method method;
    std::string name;
    Permutation perm;
    double gdd = 0.0;
    double e_gd = 0.0;
};

struct Cell {
    std::size_t cover;
    std::size_t method;
    AttackKind kind;
    double param;
    std::uint64_t seed;
};

Permutation method_permutation(Method method, std::size_t length, const WatermarkKey& key) {
    switch (method) {
        case Method::CaScramble: return scramble_permutation(length, key.scramble);
        case Method::FisherYates: return fisher_yates_permutation(length, key.scramble.seed);
        case Method::DirectLsb: return Permutation::identity(length);
    }
    return Permutation::identity(length);
}

fs::path cell_dir(const BenchConfig& config, const BenchRow& row) {
    return config.output / "cells" / row.method / row.cover /
           (std::string(to_string(row.attack)) + "-" + format_param(row.param) + "-s" + std::to_string(row.seed));
}

}  // namespace

std::string format_csv(const std::vector<BenchRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += r.method + ',' + r.cover + ',' + std::string(to_string(r.attack)) + ',' + format_param(r.param) +
               ',' + std::to_string(r.seed) + ',';
        if (r.ok()) {
            out += format_number(r.ber) + ',' + format_number(r.nc) + ',' + format_number(r.psnr_db) + ',' +
                   format_number(r.gdd) + ',' + format_number(r.e_gd) + ",ok";
        } else {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out += ",,,,,error: " + msg;
        }
        out += '\n';
    }
    return out;
}

std::string format_summary(const BenchConfig& config, const BenchResult& result) {
    struct Acc {
        std::size_t runs = 0;
        double ber = 0.0, nc = 0.0, psnr = 0.0;
        double gdd = 0.0, e_gd = 0.0;
    };
    // Keyed by first appearance so the summary follows grid order.
    std::vector<std::tuple<std::string, std::string, std::string>> order;
    std::map<std::tuple<std::string, std::string, std::string>, Acc> groups;
    for (const auto& r : result.rows) {
        if (!r.ok()) continue;
        auto key = std::make_tuple(r.method, std::string(to_string(r.attack)), format_param(r.param));
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        Acc& acc = it->second;
        ++acc.runs;
        acc.ber += r.ber;
        acc.nc += r.nc;
        acc.psnr += r.psnr_db;
        acc.gdd += r.gdd;
        acc.e_gd += r.e_gd;
    }

    auto number = [](double v) -> json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };

    nlohmann::ordered_json doc;
    doc["key"] = json::parse(format_key(config.key));
    doc["cells"] = result.rows.size();
    doc["failed"] = result.failed;
    doc["seeds"] = config.seeds;
    doc["not_implemented"] = {"dct", "ca-2d-rule-224", "game-of-life"};
    auto groups_json = nlohmann::ordered_json::array();
    for (const auto& key : order) {
        const Acc& acc = groups.at(key);
        const double n = static_cast<double>(acc.runs);
        nlohmann::ordered_json g;
        g["method"] = std::get<0>(key);
        g["attack"] = std::get<1>(key);
        g["param"] = std::get<2>(key);
        g["runs"] = acc.runs;
        g["mean_ber"] = acc.ber / n;
        g["mean_nc"] = acc.nc / n;
        g["mean_psnr_db"] = number(acc.psnr / n);
        g["gdd"] = acc.gdd / n;
        g["e_gd"] = acc.e_gd / n;
        groups_json.push_back(std::move(g));
    }
    doc["groups"] = std::move(groups_json);
    return doc.dump(2) + "\n";
}

BenchResult run_bench(const BenchConfig& config) {
    config.validate();

    const io::LoadedImage wm_file = io::read_image(config.watermark);
    const BitMatrix wm = io::threshold_watermark(wm_file.image);
    WatermarkKey key = config.key;
    if (wm.height() != key.wm_height || wm.width() != key.wm_width) {
        throw Error(ErrorKind::Dimension, "watermark image is " + std::to_string(wm.height()) + "x" +
                                              std::to_string(wm.width()) + " but the key expects " +
                                              std::to_string(key.wm_height) + "x" + std::to_string(key.wm_width));
    }

    std::vector<PreparedCover> covers;
    for (const auto& path : config.covers) {
        covers.push_back({path.stem().string(), io::read_image(path).image});
    }

    // One permutation per (cover, method); cells only read them.
    std::vector<std::vector<PreparedMethod>> methods(covers.size());
    std::vector<std::string> prepare_errors(covers.size());
    for (std::size_t c = 0; c < covers.size(); ++c) {
        try {
            for (Method m : config.methods) {
                PreparedMethod pm{m, method_name(m, key), method_permutation(m, covers[c].image.size(), key)};
                const Carrier scrambled = apply_permutation(covers[c].image, pm.perm);
                const Gdd g = gdd(covers[c].image, scrambled);
                pm.gdd = g.normalized;
                pm.e_gd = gray_difference_mean(scrambled);
                methods[c].push_back(std::move(pm));
            }
        } catch (const std::exception& e) {
            prepare_errors[c] = e.what();
            methods[c].clear();
        }
    }

    std::vector<Cell> cells;
    for (std::size_t c = 0; c < covers.size(); ++c) {
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            for (const auto& grid : config.attacks) {
                for (double p : grid.params) {
                    for (std::uint64_t s : config.seeds) cells.push_back({c, m, grid.kind, p, s});
                }
            }
        }
    }

    BenchResult result;
    result.rows.resize(cells.size());
    std::mutex fs_mutex;

    auto run_cell = [&](std::size_t index) {
        const Cell& cell = cells[index];
        BenchRow& row = result.rows[index];
        row.method = method_name(config.methods[cell.method], key);
        row.cover = covers[cell.cover].name;
        row.attack = cell.kind;
        row.param = cell.param;
        row.seed = cell.seed;
        try {
            if (!prepare_errors[cell.cover].empty()) throw Error(ErrorKind::Io, prepare_errors[cell.cover]);
            const PreparedMethod& pm = methods[cell.cover][cell.method];
            const Carrier& cover = covers[cell.cover].image;
            const Carrier marked = embed_with_permutation(cover, wm, key, pm.perm);
            const Carrier attacked = apply_attack(marked, AttackSpec{cell.kind, cell.param, cell.seed});
            const BitMatrix extracted = extract_with_permutation(attacked, key, pm.perm);
            row.ber = ber(wm, extracted);
            row.nc = wm.count_ones() == 0 ? 0.0 : nc(wm, extracted);
            row.psnr_db = psnr(cover, attacked);
            row.gdd = pm.gdd;
            row.e_gd = pm.e_gd;

            const fs::path dir = cell_dir(config, row);
            {
                std::lock_guard lock(fs_mutex);
                fs::create_directories(dir);
            }
            io::write_image(dir / "attacked.png", attacked);
            io::write_image(dir / "extracted.png", io::watermark_image(extracted));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    const std::size_t workers = std::min(config.jobs, std::max<std::size_t>(1, cells.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
            });
        }
    }

    for (const auto& row : result.rows) result.failed += row.ok() ? 0 : 1;

    fs::create_directories(config.output);
    const std::string csv = format_csv(result.rows);
    io::write_file_atomic(config.output / "report.csv", std::vector<std::uint8_t>(csv.begin(), csv.end()));
    const std::string summary = format_summary(config, result);
    io::write_file_atomic(config.output / "summary.json",
                          std::vector<std::uint8_t>(summary.begin(), summary.end()));
    return result;
}

}  // namespace cawm::tools

#include "cawm_tools/cli.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cawm/attacks.hpp"
#include "cawm/error.hpp"
#include "cawm/image_io.hpp"
#include "cawm/metrics.hpp"
#include "cawm/permute.hpp"
#include "cawm/watermark.hpp"
#include "cawm_tools/bench.hpp"
#include "cawm_tools/keyfile.hpp"

namespace cawm::tools {

namespace {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Io:
        case ErrorKind::Codec:
            return kExitFailure;
        default:
            return kExitUsage;
    }
}

Carrier load_gray(const fs::path& path, std::ostream& err) {
    io::LoadedImage loaded = io::read_image(path);
    if (loaded.converted_from_color) {
        err << "warning: '" << path.string() << "' is a colour image; converted to 8-bit grayscale\n";
    }
    return std::move(loaded.image);
}

struct Options {
    std::string in;
    std::string out;
    std::string key;
    std::string wm;
    std::string kind;
    std::string mode;
    std::string config;
    double param = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> operands;

    // keygen
    int rule = ScrambleKey::kDefaultRule;
    std::size_t generations = ScrambleKey::kDefaultGenerations;
    int bit_plane = 0;
    std::size_t repetition = 9;
};

int cmd_scramble(const Options& o, bool inverse, std::ostream& err) {
    const WatermarkKey key = load_key(o.key);
    const Carrier image = load_gray(o.in, err);
    Permutation perm = scramble_permutation(image.size(), key.scramble);
    if (inverse) perm = invert(perm);
    io::write_image(o.out, apply_permutation(image, perm));
    return kExitOk;
}

int cmd_embed(const Options& o, std::ostream& err) {
    WatermarkKey key = load_key(o.key);
    if (!o.mode.empty()) key.mode = parse_embed_mode(o.mode);
    const Carrier cover = load_gray(o.in, err);
    const BitMatrix wm = io::threshold_watermark(load_gray(o.wm, err));
    io::write_image(o.out, embed(cover, wm, key));
    return kExitOk;
}

int cmd_extract(const Options& o, std::ostream& err) {
    const WatermarkKey key = load_key(o.key);
    const Carrier marked = load_gray(o.in, err);
    io::write_image(o.out, io::watermark_image(extract(marked, key)));
    return kExitOk;
}

int cmd_attack(const Options& o, std::ostream& err) {
    const AttackSpec spec{parse_attack_kind(o.kind), o.param, o.seed};
    spec.validate();
    const Carrier image = load_gray(o.in, err);
    io::write_image(o.out, apply_attack(image, spec));
    return kExitOk;
}

nlohmann::json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

int cmd_metrics(const Options& o, std::ostream& out, std::ostream& err) {
    const std::size_t needed = (o.kind == "egd" || o.kind == "histogram") ? 1 : 2;
    if (o.operands.size() != needed) {
        throw Error(ErrorKind::Parse, "metric '" + o.kind + "' takes " + std::to_string(needed) + " image(s)");
    }
    nlohmann::ordered_json doc;
    doc["kind"] = o.kind;
    const Carrier a = load_gray(o.operands[0], err);
    if (o.kind == "egd") {
        doc["value"] = gray_difference_mean(a);
    } else if (o.kind == "histogram") {
        doc["value"] = histogram(a);
    } else {
        const Carrier b = load_gray(o.operands[1], err);
        if (o.kind == "gdd") {
            const Gdd g = gdd(a, b);
            doc["value"] = g.normalized;
            doc["raw"] = g.raw;
        } else if (o.kind == "psnr") {
            doc["value"] = json_number(psnr(a, b));
        } else if (o.kind == "ber") {
            doc["value"] = ber(io::threshold_watermark(a), io::threshold_watermark(b));
        } else if (o.kind == "nc") {
            doc["value"] = nc(io::threshold_watermark(a), io::threshold_watermark(b));
        } else if (o.kind == "histeq") {
            doc["value"] = histogram(a) == histogram(b);
        } else {
            throw Error(ErrorKind::Parse, "unknown metric '" + o.kind + "'");
        }
    }
    out << doc.dump() << "\n";
    return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    const BenchConfig config = load_bench_config(o.config);
    const BenchResult result = run_bench(config);
    out << "bench: " << result.rows.size() << " cells, " << result.failed << " failed; report in "
        << (config.output / "report.csv").string() << "\n";
    for (const auto& row : result.rows) {
        if (!row.ok()) {
            err << "cell " << row.method << "/" << row.cover << "/" << to_string(row.attack) << "/"
                << format_param(row.param) << "/s" << row.seed << " failed: " << row.error << "\n";
        }
    }
    return result.failed == 0 ? kExitOk : kExitFailure;
}

int cmd_keygen(const Options& o, std::ostream& err) {
    WatermarkKey key;
    key.scramble.seed = o.seed;
    key.scramble.rule = o.rule;
    key.scramble.generations = o.generations;
    key.bit_plane = o.bit_plane;
    key.repetition = o.repetition;
    if (!o.mode.empty()) key.mode = parse_embed_mode(o.mode);
    const BitMatrix wm = io::threshold_watermark(load_gray(o.wm, err));
    key.wm_height = wm.height();
    key.wm_width = wm.width();
    save_key(o.out, key);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cellular-automaton scrambling watermark toolkit", "cawm"};
    app.require_subcommand(1);
    Options o;

    auto* scramble = app.add_subcommand("scramble", "Permute an image with the key's CA scramble");
    auto* unscramble = app.add_subcommand("unscramble", "Undo scramble");
    for (auto* sub : {scramble, unscramble}) {
        sub->add_option("--in", o.in, "Input image (PGM or PNG)")->required();
        sub->add_option("--out", o.out, "Output image (.png or PGM)")->required();
        sub->add_option("--key", o.key, "Key file")->required();
    }

    auto* embed_cmd = app.add_subcommand("embed", "Hide a watermark in a cover image");
    embed_cmd->add_option("--in", o.in, "Cover image")->required();
    embed_cmd->add_option("--wm", o.wm, "Watermark image, thresholded at 128")->required();
    embed_cmd->add_option("--out", o.out, "Marked image")->required();
    embed_cmd->add_option("--key", o.key, "Key file")->required();
    embed_cmd->add_option("--mode", o.mode, "Override the key's mode: or | substitute");

    auto* extract_cmd = app.add_subcommand("extract", "Recover a watermark with the key");
    extract_cmd->add_option("--in", o.in, "Marked image")->required();
    extract_cmd->add_option("--out", o.out, "Bilevel watermark image")->required();
    extract_cmd->add_option("--key", o.key, "Key file")->required();

    auto* attack = app.add_subcommand("attack", "Apply a noise, crop or JPEG attack");
    attack->add_option("--kind", o.kind, "noise | crop | jpeg")->required();
    attack->add_option("--param", o.param, "Density, area fraction or JPEG quality")->required();
    attack->add_option("--seed", o.seed, "Seed for stochastic attacks");
    attack->add_option("--in", o.in, "Input image")->required();
    attack->add_option("--out", o.out, "Attacked image")->required();

    auto* metrics = app.add_subcommand("metrics", "Print one metric as a JSON object");
    metrics->add_option("--kind", o.kind, "egd | gdd | psnr | ber | nc | histogram | histeq")->required();
    metrics->add_option("images", o.operands, "Image operands")->required();

    auto* bench = app.add_subcommand("bench", "Run the embed/attack/extract grid");
    bench->add_option("--config", o.config, "Bench config (JSON)")->required();

    auto* keygen = app.add_subcommand("keygen", "Write a key file sized for a watermark");
    keygen->add_option("--wm", o.wm, "Watermark image")->required();
    keygen->add_option("--out", o.out, "Key file to write")->required();
    keygen->add_option("--seed", o.seed, "Scramble seed")->required();
    keygen->add_option("--mode", o.mode, "or | substitute");
    keygen->add_option("--rule", o.rule, "Elementary CA rule");
    keygen->add_option("--generations", o.generations, "CA generations");
    keygen->add_option("--bit-plane", o.bit_plane, "Bit plane 0..7");
    keygen->add_option("--repetition", o.repetition, "Odd repetition factor");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (scramble->parsed()) return cmd_scramble(o, false, err);
        if (unscramble->parsed()) return cmd_scramble(o, true, err);
        if (embed_cmd->parsed()) return cmd_embed(o, err);
        if (extract_cmd->parsed()) return cmd_extract(o, err);
        if (attack->parsed()) return cmd_attack(o, err);
        if (metrics->parsed()) return cmd_metrics(o, out, err);
        if (bench->parsed()) return cmd_bench(o, out, err);
        if (keygen->parsed()) return cmd_keygen(o, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace cawm::tools

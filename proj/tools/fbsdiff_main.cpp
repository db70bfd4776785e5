// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

// fbsdiff command line: translate, bands, mask, invert.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

#include "fbsdiff/backends.hpp"
#include "fbsdiff/bands.hpp"
#include "fbsdiff/config.hpp"
#include "fbsdiff/errors.hpp"
#include "fbsdiff/image_io.hpp"
#include "fbsdiff/latent_io.hpp"
#include "fbsdiff/masks.hpp"
#include "fbsdiff/pipeline.hpp"

namespace {

using namespace fbsdiff;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// String-typed options keyed by their config-file name, so flag values can be
/// layered over a config file before any conversion happens.
struct FlagTable {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void add(CLI::App* app, const std::string& key, const std::string& help) {
        options[key] = app->add_option("--" + key, values[key], help);
    }

    KeyValues given() const {
        KeyValues out;
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) out.emplace_back(key, values.at(key));
        }
        return out;
    }
};

std::string require_path(const std::optional<std::string>& value, const char* flag) {
    if (!value || value->empty()) throw Error(ErrorKind::kUsage, std::string("missing required --") + flag);
    return *value;
}

int cmd_translate(const FlagTable& flags, const std::string& config_path, bool once) {
    KeyValues file;
    if (!config_path.empty()) file = read_config_file(config_path);
    KeyValues given = flags.given();
    if (once) given.emplace_back("once-substitution", "true");
    const CliConfig cli = resolve_config(file, given);
    const std::string ref = require_path(cli.ref, "ref");
    const std::string out = require_path(cli.out, "out");

    const PipelineConfig& cfg = cli.pipeline;
    const ImageBuffer reference = read_png(ref);
    auto denoiser = make_denoiser(cfg.denoiser);
    auto codec = make_codec(cfg.codec);

    RunReport report;
    const ImageBuffer result = run(reference, cfg, *denoiser, *codec, &report);
    write_png(out, result);
    if (cli.manifest) write_file(*cli.manifest, format_manifest(cfg, report));
    std::cout << "wrote " << out << " (" << result.width << "x" << result.height << ", "
              << cfg.steps - report.trajectory.boundary << " calibration + " << report.trajectory.boundary
              << " free steps, mask " << cfg.mask.describe() << ")\n";
    return 0;
}

int cmd_bands(const std::string& ref, const std::string& codec_text, const BandThresholds& th,
              const std::string& prefix, const std::string& report_path) {
    if (th.th_mp1 >= th.th_mp2) throw Error(ErrorKind::kUsage, "--th-mp1 must be less than --th-mp2");
    const ImageBuffer image = read_png(ref);
    auto codec = make_codec(CodecSpec::parse(codec_text));
    const BandDecomposition bands = decompose_bands(codec->encode(image), th);

    std::ostringstream report;
    report.precision(10);
    report << "total-energy = " << bands.total_energy << '\n';
    using Entry = std::pair<const char*, const BandComponent*>;
    for (const auto& [name, band] : {Entry{"low", &bands.low}, Entry{"mid", &bands.mid}, Entry{"high", &bands.high}}) {
        const std::string path = prefix + "-" + name + ".png";
        write_png(path, codec->decode(band->spatial));
        report << name << ".mask = " << band->spec.describe() << '\n'
               << name << ".energy = " << band->energy << '\n'
               << name << ".fraction = " << band->fraction << '\n'
               << name << ".image = " << path << '\n';
    }
    if (!report_path.empty()) write_file(report_path, report.str());
    std::cout << report.str();
    return 0;
}

int cmd_mask(const std::string& mode, const BandThresholds& th, std::size_t height, std::size_t width,
             const std::string& out) {
    const auto kind = parse_mask_kind(mode);
    if (!kind) throw Error(ErrorKind::kUsage, "--mode expects low, mid, high, full or empty");
    MaskSpec spec;
    switch (*kind) {
    case MaskKind::kLow:
        spec = MaskSpec::low(th.th_lp);
        break;
    case MaskKind::kHigh:
        spec = MaskSpec::high(th.th_hp);
        break;
    case MaskKind::kMid:
        if (th.th_mp1 >= th.th_mp2) throw Error(ErrorKind::kUsage, "--th-mp1 must be less than --th-mp2");
        spec = MaskSpec::mid(th.th_mp1, th.th_mp2);
        break;
    case MaskKind::kFull:
        spec = MaskSpec::full();
        break;
    case MaskKind::kEmpty:
        spec = MaskSpec::empty();
        break;
    }
    const BandMask mask = make_mask(spec, height, width);
    write_file(out, to_pgm(mask));
    std::cout << spec.describe() << " " << height << "x" << width << " popcount = " << mask_popcount(mask) << '\n';
    return 0;
}

int cmd_invert(const std::string& ref, const std::string& denoiser_text, const std::string& codec_text, int t_inv,
               const std::string& mode_text, const std::string& out) {
    const auto mode = parse_inversion_noise(mode_text);
    if (!mode) throw Error(ErrorKind::kUsage, "--inversion-eps expects next or current");
    const Schedule schedule = build_schedule();
    if (t_inv < 1 || t_inv > schedule.n_train()) {
        throw Error(ErrorKind::kUsage, "--t-inv must lie in [1, " + std::to_string(schedule.n_train()) + "]");
    }
    const ImageBuffer image = read_png(ref);
    auto codec = make_codec(CodecSpec::parse(codec_text));
    auto denoiser = make_denoiser(DenoiserSpec::parse(denoiser_text));
    const FeatureMap z = invert(codec->encode(image), t_inv, *denoiser, schedule, *mode);
    write_latent(out, z);
    std::cout << "wrote " << out << " (" << to_string(z.shape()) << ")\n";
    return 0;
}

void add_threshold_options(CLI::App* app, BandThresholds& th) {
    app->add_option("--th-lp", th.th_lp, "low band: x+y <= th-lp")->capture_default_str();
    app->add_option("--th-hp", th.th_hp, "high band: x+y > th-hp")->capture_default_str();
    app->add_option("--th-mp1", th.th_mp1, "mid band lower bound (exclusive)")->capture_default_str();
    app->add_option("--th-mp2", th.th_mp2, "mid band upper bound (inclusive)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Text-driven image translation by DCT frequency band substitution between DDIM trajectories"};
    app.require_subcommand(1);

    // translate
    auto* translate = app.add_subcommand("translate", "translate a reference image toward a prompt");
    FlagTable flags;
    flags.add(translate, "ref", "reference PNG");
    flags.add(translate, "prompt", "target text");
    flags.add(translate, "mode", "band type: low | mid | high");
    flags.add(translate, "th-lp", "low band threshold (default 80)");
    flags.add(translate, "th-hp", "high band threshold (default 5)");
    flags.add(translate, "th-mp1", "mid band lower threshold (default 5)");
    flags.add(translate, "th-mp2", "mid band upper threshold (default 80)");
    flags.add(translate, "lambda", "non-calibration fraction (default 0.45)");
    flags.add(translate, "omega", "classifier-free guidance scale (default 7.5)");
    flags.add(translate, "t-inv", "inversion steps (default 1000)");
    flags.add(translate, "steps", "reconstruction/sampling steps (default 50)");
    flags.add(translate, "seed", "seed for the initial sampling noise (default 0)");
    flags.add(translate, "denoiser", "oracle[:sigma] | remote:HOST:PORT");
    flags.add(translate, "codec", "identity | avgpool:K | remote:HOST:PORT");
    flags.add(translate, "inversion-eps", "next | current (timestep of the inversion noise query)");
    flags.add(translate, "out", "output PNG");
    flags.add(translate, "manifest", "optional run manifest path");
    std::string config_path;
    translate->add_option("--config", config_path, "key = value config file");
    bool once = false;
    translate->add_flag("--once-substitution", once, "ablation: substitute only at step lambda*T");

    // bands
    auto* bands = app.add_subcommand("bands", "split an image into low/mid/high DCT band reconstructions");
    std::string bands_ref, bands_codec = "identity", bands_prefix, bands_report;
    BandThresholds bands_th;
    bands->add_option("--ref", bands_ref, "input PNG")->required();
    bands->add_option("--codec", bands_codec, "identity | avgpool:K | remote:HOST:PORT")->capture_default_str();
    bands->add_option("--out", bands_prefix, "output prefix; writes PREFIX-{low,mid,high}.png")->required();
    bands->add_option("--report", bands_report, "optional energy report path");
    add_threshold_options(bands, bands_th);

    // mask
    auto* mask = app.add_subcommand("mask", "export a band mask as a PGM image");
    std::string mask_mode = "low", mask_out;
    std::size_t mask_h = 64, mask_w = 64;
    BandThresholds mask_th;
    mask->add_option("--mode", mask_mode, "low | mid | high | full | empty")->capture_default_str();
    mask->add_option("--height", mask_h, "spectrum height")->capture_default_str()->check(CLI::PositiveNumber);
    mask->add_option("--width", mask_w, "spectrum width")->capture_default_str()->check(CLI::PositiveNumber);
    mask->add_option("--out", mask_out, "output PGM")->required();
    add_threshold_options(mask, mask_th);

    // invert
    auto* inv = app.add_subcommand("invert", "dump the DDIM-inverted latent of an image");
    std::string inv_ref, inv_denoiser = "oracle", inv_codec = "identity", inv_mode = "next", inv_out;
    int inv_steps = 1000;
    inv->add_option("--ref", inv_ref, "input PNG")->required();
    inv->add_option("--denoiser", inv_denoiser, "oracle[:sigma] | remote:HOST:PORT")->capture_default_str();
    inv->add_option("--codec", inv_codec, "identity | avgpool:K | remote:HOST:PORT")->capture_default_str();
    inv->add_option("--t-inv", inv_steps, "inversion steps")->capture_default_str();
    inv->add_option("--inversion-eps", inv_mode, "next | current")->capture_default_str();
    inv->add_option("--out", inv_out, "output latent file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*translate) return cmd_translate(flags, config_path, once);
        if (*bands) return cmd_bands(bands_ref, bands_codec, bands_th, bands_prefix, bands_report);
        if (*mask) return cmd_mask(mask_mode, mask_th, mask_h, mask_w, mask_out);
        if (*inv) return cmd_invert(inv_ref, inv_denoiser, inv_codec, inv_steps, inv_mode, inv_out);
    } catch (const Error& e) {
        std::cerr << "fbsdiff: " << e.what() << '\n';
        return e.kind() == ErrorKind::kUsage ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "fbsdiff: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

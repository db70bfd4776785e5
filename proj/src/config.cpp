// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::kUsage, message); }

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
    Int out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        usage("--" + key + " expects an integer, got '" + value + "'");
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
        usage("--" + key + " expects a number, got '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    usage("--" + key + " expects true or false, got '" + value + "'");
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys{
        "ref",   "prompt", "mode",  "th-lp",    "th-hp", "th-mp1", "th-mp2",        "lambda",
        "omega", "t-inv",  "steps", "seed",     "denoiser", "codec", "inversion-eps", "once-substitution",
        "out",   "manifest"};
    return keys;
}

KeyValues parse_config_text(std::string_view text, const std::string& origin) {
    KeyValues out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            usage(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty()) usage(origin + ":" + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

KeyValues read_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) usage("cannot read config file " + path.string());
    const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return parse_config_text(text, path.string());
}

CliConfig resolve_config(const KeyValues& file, const KeyValues& flags) {
    // Later entries win, so flags are applied after the file.
    KeyValues merged = file;
    merged.insert(merged.end(), flags.begin(), flags.end());

    CliConfig cli;
    PipelineConfig& cfg = cli.pipeline;
    std::string mode = "low";
    int th_lp = 80, th_hp = 5, th_mp1 = 5, th_mp2 = 80;

    const auto& known = config_keys();
    for (const auto& [key, value] : merged) {
        if (std::find(known.begin(), known.end(), key) == known.end()) usage("unknown option '" + key + "'");
        if (key == "ref") {
            cli.ref = value;
        } else if (key == "out") {
            cli.out = value;
        } else if (key == "manifest") {
            cli.manifest = value;
        } else if (key == "prompt") {
            cfg.prompt = value;
        } else if (key == "mode") {
            mode = value;
        } else if (key == "th-lp") {
            th_lp = parse_int<int>(key, value);
        } else if (key == "th-hp") {
            th_hp = parse_int<int>(key, value);
        } else if (key == "th-mp1") {
            th_mp1 = parse_int<int>(key, value);
        } else if (key == "th-mp2") {
            th_mp2 = parse_int<int>(key, value);
        } else if (key == "lambda") {
            cfg.lambda = parse_real(key, value);
        } else if (key == "omega") {
            cfg.omega = parse_real(key, value);
        } else if (key == "t-inv") {
            cfg.t_inv = parse_int<int>(key, value);
        } else if (key == "steps") {
            cfg.steps = parse_int<int>(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_int<std::uint64_t>(key, value);
        } else if (key == "denoiser") {
            cfg.denoiser = DenoiserSpec::parse(value);
        } else if (key == "codec") {
            cfg.codec = CodecSpec::parse(value);
        } else if (key == "inversion-eps") {
            const auto parsed = parse_inversion_noise(value);
            if (!parsed) usage("--inversion-eps expects next or current, got '" + value + "'");
            cfg.inversion_noise = *parsed;
        } else if (key == "once-substitution") {
            cfg.once_substitution = parse_bool(key, value);
        }
    }

    if (th_mp1 >= th_mp2) {
        usage("--th-mp1 (" + std::to_string(th_mp1) + ") must be less than --th-mp2 (" + std::to_string(th_mp2) + ")");
    }
    const auto kind = parse_mask_kind(mode);
    if (!kind) usage("--mode expects low, mid or high, got '" + mode + "'");
    switch (*kind) {
    case MaskKind::kLow:
        cfg.mask = MaskSpec::low(th_lp);
        break;
    case MaskKind::kHigh:
        cfg.mask = MaskSpec::high(th_hp);
        break;
    case MaskKind::kMid:
        cfg.mask = MaskSpec::mid(th_mp1, th_mp2);
        break;
    case MaskKind::kFull:
        cfg.mask = MaskSpec::full();
        break;
    case MaskKind::kEmpty:
        cfg.mask = MaskSpec::empty();
        break;
    }

    try {
        cfg.validate();
    } catch (const Error& e) {
        usage(e.detail());
    }
    return cli;
}

std::string format_manifest(const PipelineConfig& config, const RunReport& report) {
    std::ostringstream os;
    os << "# fbsdiff run manifest\n";
    os << "prompt = " << config.prompt << '\n';
    os << "mask = " << config.mask.describe() << '\n';
    os << "lambda = " << shortest(config.lambda) << '\n';
    os << "omega = " << shortest(config.omega) << '\n';
    os << "t-inv = " << config.t_inv << '\n';
    os << "steps = " << config.steps << '\n';
    os << "calibration-steps = " << config.steps - report.trajectory.boundary << '\n';
    os << "non-calibration-steps = " << report.trajectory.boundary << '\n';
    os << "seed = " << config.seed << '\n';
    os << "rng = " << report.rng_algorithm << '\n';
    os << "denoiser = " << config.denoiser.to_string() << '\n';
    os << "codec = " << config.codec.to_string() << '\n';
    os << "schedule = linear(n_train=" << config.n_train << ", beta_start=" << shortest(config.beta_start)
       << ", beta_end=" << shortest(config.beta_end) << ")\n";
    os << "inversion-eps = " << to_string(config.inversion_noise) << '\n';
    os << "once-substitution = " << (config.once_substitution ? "true" : "false") << '\n';
    os << "timing.encode-s = " << shortest(report.timings.encode_s) << '\n';
    os << "timing.invert-s = " << shortest(report.timings.invert_s) << '\n';
    os << "timing.calibration-s = " << shortest(report.timings.calibration_s) << '\n';
    os << "timing.sampling-s = " << shortest(report.timings.free_sampling_s) << '\n';
    os << "timing.decode-s = " << shortest(report.timings.decode_s) << '\n';
    return os.str();
}

}  // namespace fbsdiff

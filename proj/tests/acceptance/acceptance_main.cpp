// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "fbsdiff/config.hpp"
#include "fbsdiff/denoiser.hpp"
#include "fbsdiff/errors.hpp"
#include "fbsdiff/fbs.hpp"
#include "fbsdiff/image_io.hpp"
#include "fbsdiff/masks.hpp"
#include "fbsdiff/pipeline.hpp"
#include "fbsdiff/schedule.hpp"
#include "fbsdiff/spectral.hpp"

namespace {

using namespace fbsdiff;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[violated: " << what << "] ";
        }
    }
};

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

template <typename T = float>
Tensor<T, SpatialDomain> random_map(const Shape& shape, std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Tensor<T, SpatialDomain> z(shape);
    for (T& v : z.data()) v = static_cast<T>(n01(rng));
    return z;
}

void transform_suite(Outcome& o) {
    std::mt19937_64 rng(101);
    double worst_rt = 0.0, worst_parseval = 0.0;
    const auto start = Clock::now();
    for (int i = 0; i < 100; ++i) {
        const FeatureMap z = random_map(Shape{4, 64, 64}, rng);
        const Spectrum f = dct2(z);
        worst_rt = std::max(worst_rt, max_abs_diff(idct2(f), z));
        const double ez = squared_norm(z), ef = squared_norm(f);
        worst_parseval = std::max(worst_parseval, std::abs(ef - ez) / ez);
    }
    const double secs = elapsed(start);
    o.require(worst_rt <= 1e-5, "round trip <= 1e-5");
    o.require(worst_parseval <= 1e-4, "Parseval <= 1e-4 relative");
    o.require(secs < 10.0, "runtime < 10 s");
    o.detail << "100 maps 4x64x64, max round-trip " << worst_rt << ", max Parseval " << worst_parseval << ", "
             << secs << " s";
}

void mask_suite(Outcome& o) {
    std::mt19937_64 rng(102);
    std::uniform_int_distribution<int> extent(1, 96), th(-10, 200);
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const auto h = static_cast<std::size_t>(extent(rng)), w = static_cast<std::size_t>(extent(rng));
        int a = th(rng), b = th(rng);
        if (a == b) ++b;
        if (a > b) std::swap(a, b);
        const BandMask low_a = make_mask(MaskSpec::low(a), h, w);
        const BandMask low_b = make_mask(MaskSpec::low(b), h, w);
        const BandMask high_a = make_mask(MaskSpec::high(a), h, w);
        const BandMask mid = make_mask(MaskSpec::mid(a, b), h, w);
        for (std::size_t k = 0; k < h * w; ++k) {
            if (high_a.bits()[k] != 1 - low_a.bits()[k]) ++violations;
            if (mid.bits()[k] != (low_b.bits()[k] & (1 - low_a.bits()[k]))) ++violations;
            if (low_a.bits()[k] > low_b.bits()[k]) ++violations;
        }
    }
    std::size_t enumerated = 0;
    for (std::size_t x = 0; x < 64; ++x)
        for (std::size_t y = 0; y < 64; ++y) enumerated += x + y <= 80 ? 1 : 0;
    const std::size_t popcount = mask_popcount(make_mask(MaskSpec::low(80), 64, 64));
    o.require(violations == 0, "identities exact");
    o.require(popcount == 3015 && enumerated == 3015, "popcount(low, 80, 64x64) = 3015");
    o.detail << "200 combinations, " << violations << " identity violations, popcount " << popcount
             << " (enumeration " << enumerated << ")";
}

void fbs_suite(Outcome& o) {
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<int> extent(4, 48), th(0, 60), kind(0, 2);
    double capture = 0.0, preserve = 0.0, full = 0.0, zero = 0.0, idem = 0.0;
    const int cases = 120;
    for (int i = 0; i < cases; ++i) {
        const auto h = static_cast<std::size_t>(extent(rng)), w = static_cast<std::size_t>(extent(rng));
        const Shape s{4, h, w};
        const FeatureMap g = random_map(s, rng), t = random_map(s, rng);
        const int a = th(rng), b = a + 1 + th(rng);
        const int which = kind(rng);
        const MaskSpec spec = which == 0 ? MaskSpec::low(a) : which == 1 ? MaskSpec::high(a) : MaskSpec::mid(a, b);
        const BandMask m = make_mask(spec, h, w);
        const FeatureMap out = substitute_band(g, t, m);
        const Spectrum fo = dct2(out), fg = dct2(g), ft = dct2(t);
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t k = 0; k < h * w; ++k) {
                const double d = std::abs(static_cast<double>(fo.channel(c)[k]) -
                                          (m.bits()[k] ? fg.channel(c)[k] : ft.channel(c)[k]));
                (m.bits()[k] ? capture : preserve) = std::max(m.bits()[k] ? capture : preserve, d);
            }
        full = std::max(full, max_abs_diff(substitute_band(g, t, make_mask(MaskSpec::full(), h, w)), g));
        zero = std::max(zero, max_abs_diff(substitute_band(g, t, make_mask(MaskSpec::empty(), h, w)), t));
        idem = std::max(idem, max_abs_diff(substitute_band(g, out, m), out));
    }
    o.require(capture <= 1e-4, "band capture <= 1e-4");
    o.require(preserve <= 1e-4, "band preservation <= 1e-4");
    o.require(full <= 1e-5 && zero <= 1e-5, "full/zero mask identities <= 1e-5");
    o.require(idem <= 1e-4, "idempotence <= 1e-4");
    o.detail << cases << " cases, capture " << capture << ", preservation " << preserve << ", full " << full
             << ", zero " << zero << ", idempotence " << idem;
}

void schedule_denoiser_suite(Outcome& o) {
    const Schedule s = build_schedule();
    std::mt19937_64 rng(104);
    double identity = 0.0;
    for (int t = 1; t <= 1000; t += 37) {
        const FeatureMap64 x0 = random_map<double>(Shape{4, 16, 16}, rng);
        const FeatureMap64 eps = random_map<double>(Shape{4, 16, 16}, rng);
        identity = std::max(identity, relative_l2_error(predict_x0(forward_diffuse(x0, t, eps, s), t, eps, s), x0));
    }

    // Regress the true ε on the oracle prediction; the slope must be 1.
    OracleDenoiser oracle(1.0);
    std::normal_distribution<double> n01(0.0, 1.0);
    double worst_slope = 0.0;
    for (int t : {300, 500, 800}) {
        const double ab = s.alpha_bar(t);
        FeatureMap z(Shape{1, 100, 100});
        std::vector<double> eps(z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            eps[k] = n01(rng);
            z[k] = static_cast<float>(std::sqrt(ab) * n01(rng) + std::sqrt(1.0 - ab) * eps[k]);
        }
        const FeatureMap pred = oracle.predict_eps(z, t, Conditioning::null(), s);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            num += eps[k] * pred[k];
            den += static_cast<double>(pred[k]) * pred[k];
        }
        worst_slope = std::max(worst_slope, std::abs(num / den - 1.0));
    }

    const FeatureMap c = random_map(Shape{4, 16, 16}, rng), u = random_map(Shape{4, 16, 16}, rng);
    bool cfg_exact = cfg_eps(c, u, 0.0) == u && cfg_eps(c, u, 1.0) == c;
    for (double w : {-1.0, 2.5, 7.5}) {
        const FeatureMap g = cfg_eps(c, u, w);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double ud = u[k];
            if (g[k] != static_cast<float>(ud + w * (static_cast<double>(c[k]) - ud))) cfg_exact = false;
        }
    }
    o.require(identity <= 1e-6, "forward/predict identity <= 1e-6 relative");
    o.require(worst_slope <= 0.02, "regression slope within 2% of 1");
    o.require(cfg_exact, "cfg affine identity exact");
    o.detail << "identity " << identity << ", slope deviation " << worst_slope << " (10^4 samples each at t=300,500,800)"
             << ", cfg exact " << (cfg_exact ? "yes" : "no");
}

void trajectory_suite(Outcome& o) {
    const Schedule s = build_schedule();
    OracleDenoiser d;
    std::mt19937_64 rng(105);
    const FeatureMap z0 = random_map(Shape{4, 32, 32}, rng);
    const auto start = Clock::now();
    const double e1000 = relative_l2_error(reconstruct(invert(z0, 1000, d, s), 1000, d, s), z0);
    const double e10 = relative_l2_error(reconstruct(invert(z0, 10, d, s), 10, d, s), z0);
    const double secs = elapsed(start);
    o.require(e1000 <= 1e-3, "error(T_inv=1000) <= 1e-3");
    o.require(e1000 < e10, "error(1000) < error(10)");
    o.require(secs < 60.0, "runtime < 60 s");
    o.detail << "4x32x32, error(1000) " << e1000 << ", error(10) " << e10 << ", " << secs << " s";
}

PipelineConfig default_config() { return resolve_config({}, {{"prompt", "a photo of a cat"}}).pipeline; }

void full_substitution(Outcome& o) {
    OracleDenoiser d;
    std::mt19937_64 rng(106);
    PipelineConfig cfg = default_config();
    cfg.mask = MaskSpec::full();
    cfg.retain_trajectories = true;
    RunReport report;
    (void)translate_latent(random_map(Shape{4, 32, 32}, rng), cfg, d, &report);
    const auto& tr = report.trajectory;
    double worst = 0.0;
    int checked = 0;
    for (int k = cfg.steps - 1; k >= tr.boundary; --k) {
        const auto& a = tr.sampling[static_cast<std::size_t>(k)];
        const auto& b = tr.reconstruction[static_cast<std::size_t>(k)];
        if (!a || !b) {
            o.require(false, "trajectory retained");
            return;
        }
        worst = std::max(worst, max_abs_diff(*a, *b));
        ++checked;
    }
    o.require(worst <= 1e-6, "max |z~ - z^| <= 1e-6");
    o.detail << checked << " calibration steps, max deviation " << worst;
}

void low_band_pinning(Outcome& o) {
    OracleDenoiser d;
    std::mt19937_64 rng(107);
    const PipelineConfig cfg = default_config();
    RunReport report;
    (void)translate_latent(random_map(Shape{4, 64, 64}, rng), cfg, d, &report);
    const BandMask m = make_mask(cfg.mask, 64, 64);
    const Spectrum64 fs = dct2(report.trajectory.boundary_sampling.cast<double>());
    const Spectrum64 fr = dct2(report.trajectory.boundary_reconstruction.cast<double>());
    double worst = 0.0;
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t k = 0; k < m.bits().size(); ++k)
            if (m.bits()[k]) worst = std::max(worst, std::abs(fs.channel(c)[k] - fr.channel(c)[k]));
    o.require(worst <= 1e-4, "masked spectra agree within 1e-4");
    o.detail << "low(80) on 4x64x64 after " << cfg.steps - report.trajectory.boundary
             << " calibration steps, max masked deviation " << worst;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    const std::string cmd = std::string(FBSDIFF_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return -1;
    char buf[4096];
    std::size_t n = 0;
    std::string text;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
    const int status = ::pclose(pipe);
    if (output) *output = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::filesystem::path workdir() {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / ("fbsdiff-acceptance-" + std::to_string(::getpid()));
        std::filesystem::remove_all(d);
        std::filesystem::create_directories(d);
        ImageBuffer img(64, 64, std::uint8_t{0});
        for (std::size_t y = 0; y < 64; ++y)
            for (std::size_t x = 0; x < 64; ++x) {
                img.at(y, x, 0) = static_cast<std::uint8_t>(4 * x);
                img.at(y, x, 1) = static_cast<std::uint8_t>(4 * y);
                img.at(y, x, 2) = static_cast<std::uint8_t>((x * y) % 256);
            }
        write_png(d / "ref.png", img);
        return d;
    }();
    return dir;
}

void determinism(Outcome& o) {
    const auto dir = workdir();
    const std::string base = "translate --ref " + (dir / "ref.png").string() + " --prompt 'a cat' --out ";
    const int r1 = run_cli(base + (dir / "a.png").string() + " --seed 5");
    const int r2 = run_cli(base + (dir / "b.png").string() + " --seed 5");
    const int r3 = run_cli(base + (dir / "c.png").string() + " --seed 6");
    o.require(r1 == 0 && r2 == 0 && r3 == 0, "translate exits 0");
    const std::string a = slurp(dir / "a.png"), b = slurp(dir / "b.png"), c = slurp(dir / "c.png");
    o.require(!a.empty() && a == b, "same seed gives identical PNG bytes");
    o.require(a != c, "different seeds give different PNGs");
    o.detail << "seed 5 twice: " << (a == b ? "identical" : "different") << ", seed 6: "
             << (a != c ? "different" : "identical") << " (" << a.size() << " bytes)";
}

std::string manifest_value(const std::string& manifest, const std::string& key) {
    std::istringstream is(manifest);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
    }
    return "<missing>";
}

void cli_defaults(Outcome& o) {
    const auto dir = workdir();
    auto manifest_for = [&](const std::string& mode) {
        const auto m = dir / ("manifest-" + mode + ".txt");
        std::string extra = mode.empty() ? "" : " --mode " + mode;
        const int rc = run_cli("translate --ref " + (dir / "ref.png").string() + " --out " +
                               (dir / "d.png").string() + " --manifest " + m.string() + extra);
        o.require(rc == 0, "translate with defaults exits 0");
        return slurp(m);
    };
    const std::string low = manifest_for(""), high = manifest_for("high"), mid = manifest_for("mid");
    const std::pair<std::string, std::string> expect[] = {
        {"t-inv", "1000"}, {"steps", "50"}, {"lambda", "0.45"}, {"omega", "7.5"}, {"mask", "low(th_lp=80)"}};
    for (const auto& [key, value] : expect) {
        const std::string got = manifest_value(low, key);
        o.require(got == value, key + " = " + value + " (got " + got + ")");
    }
    o.require(manifest_value(high, "mask") == "high(th_hp=5)", "th_hp = 5");
    o.require(manifest_value(mid, "mask") == "mid(th_mp1=5, th_mp2=80)", "th_mp1 = 5, th_mp2 = 80");
    o.detail << "T_inv=" << manifest_value(low, "t-inv") << " T=" << manifest_value(low, "steps")
             << " lambda=" << manifest_value(low, "lambda") << " omega=" << manifest_value(low, "omega") << " "
             << manifest_value(low, "mask") << " " << manifest_value(high, "mask") << " "
             << manifest_value(mid, "mask");
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
        {"transform-suite", transform_suite},
        {"mask-suite", mask_suite},
        {"fbs-suite", fbs_suite},
        {"schedule-denoiser-suite", schedule_denoiser_suite},
        {"trajectory-suite", trajectory_suite},
        {"full-substitution", full_substitution},
        {"low-band-pinning", low_band_pinning},
        {"determinism", determinism},
        {"cli-defaults", cli_defaults},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            check(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::filesystem::remove_all(workdir());
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}

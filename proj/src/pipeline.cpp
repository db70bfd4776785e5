// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "fbsdiff/errors.hpp"
#include "fbsdiff/fbs.hpp"
#include "fbsdiff/rng.hpp"

namespace fbsdiff {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// √ᾱ_to·x0 + √(1−ᾱ_to)·ε with x0 = (z − √(1−ᾱ_from)·ε)/√ᾱ_from, in double.
FeatureMap ddim_update(const FeatureMap& z, const FeatureMap& eps, double ab_from, double ab_to) {
    require_same_shape(z.shape(), eps.shape(), "ddim_update");
    if (!(ab_from > 0.0)) throw Error(ErrorKind::kSingularSchedule, "DDIM step from alpha_bar = 0");
    const double a_from = std::sqrt(ab_from), b_from = std::sqrt(1.0 - ab_from);
    const double a_to = std::sqrt(ab_to), b_to = std::sqrt(1.0 - ab_to);
    FeatureMap out(z.shape());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double e = eps[k];
        const double x0 = (static_cast<double>(z[k]) - b_from * e) / a_from;
        out[k] = static_cast<float>(a_to * x0 + b_to * e);
    }
    return out;
}

std::vector<int> full_ladder(const Schedule& schedule, int steps) {
    std::vector<int> ladder{0};
    const auto tail = subsample(schedule, steps);
    ladder.insert(ladder.end(), tail.begin(), tail.end());
    return ladder;
}

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("stage '") + stage + "': " + e.detail());
    }
}

}  // namespace

std::string_view to_string(InversionNoise mode) {
    return mode == InversionNoise::kNextTimestep ? "next" : "current";
}

std::optional<InversionNoise> parse_inversion_noise(std::string_view text) {
    if (text == "next") return InversionNoise::kNextTimestep;
    if (text == "current") return InversionNoise::kCurrentTimestep;
    return std::nullopt;
}

int non_calibration_steps(double lambda, int steps) {
    // nearbyint honours the default round-to-nearest-even mode.
    return static_cast<int>(std::nearbyint(lambda * static_cast<double>(steps)));
}

void PipelineConfig::validate() const {
    auto bad = [](const std::string& msg) { throw Error(ErrorKind::kInvalidConfig, msg); };
    if (n_train < 1) bad("schedule length must be >= 1");
    if (steps < 1) bad("steps must be >= 1");
    if (steps > t_inv) bad("steps (" + std::to_string(steps) + ") must not exceed t-inv (" + std::to_string(t_inv) + ")");
    if (t_inv > n_train) {
        bad("t-inv (" + std::to_string(t_inv) + ") must not exceed the schedule length (" + std::to_string(n_train) + ")");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) bad("lambda must lie in [0, 1)");
    if (non_calibration_steps(lambda, steps) >= steps) {
        bad("lambda * steps rounds to " + std::to_string(non_calibration_steps(lambda, steps)) +
            ", leaving no calibration step");
    }
    if (!std::isfinite(omega)) bad("omega must be finite");
    if (mask.kind == MaskKind::kMid && mask.lower >= mask.upper) {
        throw Error(ErrorKind::kInvalidThreshold, "mid band needs th_mp1 < th_mp2");
    }
    (void)schedule();
}

FeatureMap invert(const FeatureMap& z0, int t_inv, Denoiser& denoiser, const Schedule& schedule,
                  InversionNoise mode) {
    const auto ladder = full_ladder(schedule, t_inv);
    const auto null = Conditioning::null();
    FeatureMap z = z0;
    for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
        const int from = ladder[k], to = ladder[k + 1];
        const int query = mode == InversionNoise::kNextTimestep ? to : from;
        const FeatureMap eps = denoiser.predict_eps(z, query, null, schedule);
        z = ddim_update(z, eps, schedule.alpha_bar(from), schedule.alpha_bar(to));
    }
    return z;
}

FeatureMap ddim_step(const FeatureMap& z_t, int t_cur, int t_prev, const Conditioning& cond, double omega,
                     Denoiser& denoiser, const Schedule& schedule) {
    if (!(t_prev < t_cur)) {
        throw Error(ErrorKind::kInvalidInput, "DDIM step needs t_prev < t_cur, got " + std::to_string(t_prev) +
                                                  " -> " + std::to_string(t_cur));
    }
    FeatureMap eps = denoiser.predict_eps(z_t, t_cur, Conditioning::null(), schedule);
    if (cond.is_text()) {
        const FeatureMap eps_cond = denoiser.predict_eps(z_t, t_cur, cond, schedule);
        eps = cfg_eps(eps_cond, eps, omega);
    }
    return ddim_update(z_t, eps, schedule.alpha_bar(t_cur), schedule.alpha_bar(t_prev));
}

FeatureMap reconstruct(const FeatureMap& z_T, int steps, Denoiser& denoiser, const Schedule& schedule) {
    const auto ladder = full_ladder(schedule, steps);
    FeatureMap z = z_T;
    for (int k = steps; k >= 1; --k) {
        z = ddim_step(z, ladder[k], ladder[k - 1], Conditioning::null(), 1.0, denoiser, schedule);
    }
    return z;
}

FeatureMap translate_latent(const FeatureMap& z0, const PipelineConfig& config, Denoiser& denoiser,
                            RunReport* report) {
    config.validate();
    const Schedule schedule = config.schedule();
    const Shape shape = z0.shape();
    const int steps = config.steps;
    const int boundary = non_calibration_steps(config.lambda, steps);

    auto start = Clock::now();
    FeatureMap inverted = in_stage("invert", [&] {
        return invert(z0, config.t_inv, denoiser, schedule, config.inversion_noise);
    });
    const double invert_s = seconds_since(start);

    const auto ladder = full_ladder(schedule, steps);
    const BandMask mask = make_mask(config.mask, shape.height, shape.width);
    const auto null = Conditioning::null();
    const auto text = Conditioning::text(config.prompt);

    TrajectoryRecord record;
    record.ladder = ladder;
    record.boundary = boundary;
    if (config.retain_trajectories) {
        record.reconstruction.resize(static_cast<std::size_t>(steps) + 1);
        record.sampling.resize(static_cast<std::size_t>(steps) + 1);
    }
    auto keep = [&](std::vector<std::optional<FeatureMap>>& track, int k, const FeatureMap& z) {
        if (config.retain_trajectories) track[static_cast<std::size_t>(k)] = z;
    };

    GaussianRng rng(config.seed);
    FeatureMap recon = inverted;
    FeatureMap sample = sample_gaussian(shape, rng);
    keep(record.reconstruction, steps, recon);
    keep(record.sampling, steps, sample);

    start = Clock::now();
    in_stage("calibration", [&] {
        for (int k = steps; k > boundary; --k) {
            recon = ddim_step(recon, ladder[k], ladder[k - 1], null, config.omega, denoiser, schedule);
            sample = ddim_step(sample, ladder[k], ladder[k - 1], text, config.omega, denoiser, schedule);
            if (!config.once_substitution || k - 1 == boundary) sample = substitute_band(recon, sample, mask);
            keep(record.reconstruction, k - 1, recon);
            keep(record.sampling, k - 1, sample);
        }
    });
    const double calibration_s = seconds_since(start);
    record.boundary_reconstruction = recon;
    record.boundary_sampling = sample;

    start = Clock::now();
    in_stage("sampling", [&] {
        for (int k = boundary; k >= 1; --k) {
            sample = ddim_step(sample, ladder[k], ladder[k - 1], text, config.omega, denoiser, schedule);
            keep(record.sampling, k - 1, sample);
        }
    });
    const double free_s = seconds_since(start);

    if (report != nullptr) {
        report->trajectory = std::move(record);
        report->timings.invert_s = invert_s;
        report->timings.calibration_s = calibration_s;
        report->timings.free_sampling_s = free_s;
        report->inverted = std::move(inverted);
        report->final_latent = sample;
        report->rng_algorithm = std::string(GaussianRng::kAlgorithm);
    }
    return sample;
}

ImageBuffer run(const ImageBuffer& reference, const PipelineConfig& config, Denoiser& denoiser, Codec& codec,
                RunReport* report) {
    config.validate();
    auto start = Clock::now();
    const FeatureMap z0 = in_stage("encode", [&] { return codec.encode(reference); });
    const double encode_s = seconds_since(start);

    const FeatureMap z = translate_latent(z0, config, denoiser, report);

    start = Clock::now();
    ImageBuffer out = in_stage("decode", [&] { return codec.decode(z); });
    if (report != nullptr) {
        report->timings.encode_s = encode_s;
        report->timings.decode_s = seconds_since(start);
    }
    return out;
}

}  // namespace fbsdiff

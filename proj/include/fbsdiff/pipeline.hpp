// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbsdiff/backends.hpp"
#include "fbsdiff/codec.hpp"
#include "fbsdiff/denoiser.hpp"
#include "fbsdiff/masks.hpp"
#include "fbsdiff/schedule.hpp"
#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// Which timestep the ε-prediction of an inversion step τ_k → τ_{k+1} is
/// queried at. The latent is always z_{τ_k} and x0 is always predicted with
/// ᾱ_{τ_k}. kNextTimestep makes every inversion step the algebraic inverse of
/// the matching sampling step up to the drift of ε between z_{τ_k} and
/// z_{τ_{k+1}}; kCurrentTimestep evaluates ε(z_{τ_k}, τ_k).
enum class InversionNoise { kNextTimestep, kCurrentTimestep };

std::string_view to_string(InversionNoise mode);
std::optional<InversionNoise> parse_inversion_noise(std::string_view text);

struct PipelineConfig {
    int t_inv = 1000;
    int steps = 50;
    /// Fraction of the sampling trajectory that runs without substitution.
    double lambda = 0.45;
    double omega = 7.5;
    MaskSpec mask = MaskSpec::low(80);
    std::string prompt;
    std::uint64_t seed = 0;
    DenoiserSpec denoiser;
    CodecSpec codec;

    int n_train = Schedule::kDefaultTrainSteps;
    double beta_start = Schedule::kDefaultBetaStart;
    double beta_end = Schedule::kDefaultBetaEnd;
    InversionNoise inversion_noise = InversionNoise::kNextTimestep;

    /// Ablation: substitute only once, right after step λT is produced.
    bool once_substitution = false;
    /// Keep every latent of the reconstruction and sampling trajectories.
    bool retain_trajectories = false;

    /// Throws kInvalidConfig unless 1 ≤ steps ≤ t_inv ≤ n_train,
    /// λ ∈ [0, 1) with round(λ·steps) < steps, and the mask spec is valid.
    void validate() const;

    Schedule schedule() const { return Schedule(n_train, beta_start, beta_end); }
};

/// Number of steps in the free-sampling tail, λ·T rounded to nearest with
/// ties to even (λ = 0.45, T = 50 gives 22).
int non_calibration_steps(double lambda, int steps);

struct TrajectoryRecord {
    /// τ_0 = 0, τ_1..τ_T.
    std::vector<int> ladder;
    /// Index λT separating calibration (k > λT) from free sampling.
    int boundary = 0;
    /// Indexed by ladder position k. Filled for k ∈ [boundary, T] (reconstruction)
    /// and k ∈ [0, T] (sampling, after substitution) when retention is on.
    std::vector<std::optional<FeatureMap>> reconstruction;
    std::vector<std::optional<FeatureMap>> sampling;
    /// Always kept: the latents at k = boundary.
    FeatureMap boundary_reconstruction;
    FeatureMap boundary_sampling;
};

struct StageTimings {
    double encode_s = 0.0;
    double invert_s = 0.0;
    double calibration_s = 0.0;
    double free_sampling_s = 0.0;
    double decode_s = 0.0;
};

struct RunReport {
    TrajectoryRecord trajectory;
    StageTimings timings;
    FeatureMap inverted;
    FeatureMap final_latent;
    std::string rng_algorithm;
};

/// DDIM inversion over the T_inv-step uniform ladder with null conditioning,
/// returning z_{T_inv}. Throws kInvalidConfig when t_inv exceeds the schedule.
FeatureMap invert(const FeatureMap& z0, int t_inv, Denoiser& denoiser, const Schedule& schedule,
                  InversionNoise mode = InversionNoise::kNextTimestep);

/// One deterministic DDIM step t_cur → t_prev (t_prev may be 0). Text
/// conditioning is combined with the null prediction through cfg_eps(ω);
/// null conditioning uses ε(null) directly.
FeatureMap ddim_step(const FeatureMap& z_t, int t_cur, int t_prev, const Conditioning& cond, double omega,
                     Denoiser& denoiser, const Schedule& schedule);

/// Null-conditioned T-step sampling from z_T down to ẑ_0.
FeatureMap reconstruct(const FeatureMap& z_T, int steps, Denoiser& denoiser, const Schedule& schedule);

/// Inversion, lock-step reconstruction/sampling with per-step band
/// substitution during calibration, then free sampling. Returns z̃_0.
/// Stage failures are rethrown with the stage name prefixed.
FeatureMap translate_latent(const FeatureMap& z0, const PipelineConfig& config, Denoiser& denoiser,
                            RunReport* report = nullptr);

/// encode → translate_latent → decode.
ImageBuffer run(const ImageBuffer& reference, const PipelineConfig& config, Denoiser& denoiser, Codec& codec,
                RunReport* report = nullptr);

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// Linear-β noise schedule indexed by training timestep t ∈ [1, n_train].
/// ᾱ_0 is the empty product, 1, so t = 0 denotes clean data.
class Schedule {
public:
    static constexpr int kDefaultTrainSteps = 1000;
    static constexpr double kDefaultBetaStart = 1e-4;
    static constexpr double kDefaultBetaEnd = 0.02;

    /// Throws kInvalidConfig unless 0 < beta_start ≤ beta_end < 1 and n_train ≥ 1.
    Schedule(int n_train, double beta_start, double beta_end);

    int n_train() const noexcept { return static_cast<int>(beta_.size()); }
    double beta_start() const noexcept { return beta_.front(); }
    double beta_end() const noexcept { return beta_.back(); }

    double beta(int t) const;
    double alpha(int t) const { return 1.0 - beta(t); }
    /// t ∈ [0, n_train]; throws kInvalidInput outside that range.
    double alpha_bar(int t) const;

private:
    std::vector<double> beta_;       // β_1..β_n stored at [0, n)
    std::vector<double> alpha_bar_;  // ᾱ_0..ᾱ_n
};

Schedule build_schedule(int n_train = Schedule::kDefaultTrainSteps,
                        double beta_start = Schedule::kDefaultBetaStart,
                        double beta_end = Schedule::kDefaultBetaEnd);

/// Uniform-stride ladder τ_i = ⌊i·n_train/T⌋ for i = 1..T, strictly increasing
/// and ending at n_train. Throws kInvalidConfig unless 1 ≤ T ≤ n_train.
std::vector<int> subsample(const Schedule& schedule, int steps);

/// √ᾱ·x0 + √(1−ᾱ)·eps
template <typename T>
Tensor<T, SpatialDomain> forward_diffuse(const Tensor<T, SpatialDomain>& x0, double alpha_bar,
                                         const Tensor<T, SpatialDomain>& eps);

template <typename T>
Tensor<T, SpatialDomain> forward_diffuse(const Tensor<T, SpatialDomain>& x0, int t,
                                         const Tensor<T, SpatialDomain>& eps, const Schedule& schedule) {
    return forward_diffuse(x0, schedule.alpha_bar(t), eps);
}

/// (z_t − √(1−ᾱ)·eps_hat)/√ᾱ. Throws kSingularSchedule when ᾱ = 0.
template <typename T>
Tensor<T, SpatialDomain> predict_x0(const Tensor<T, SpatialDomain>& z_t, double alpha_bar,
                                    const Tensor<T, SpatialDomain>& eps_hat);

template <typename T>
Tensor<T, SpatialDomain> predict_x0(const Tensor<T, SpatialDomain>& z_t, int t,
                                    const Tensor<T, SpatialDomain>& eps_hat, const Schedule& schedule) {
    return predict_x0(z_t, schedule.alpha_bar(t), eps_hat);
}

}  // namespace fbsdiff

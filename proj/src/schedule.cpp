// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/schedule.hpp"

#include <cmath>
#include <string>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

Schedule::Schedule(int n_train, double beta_start, double beta_end) {
    if (n_train < 1) {
        throw Error(ErrorKind::kInvalidConfig, "schedule length must be >= 1, got " + std::to_string(n_train));
    }
    if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
        throw Error(ErrorKind::kInvalidConfig, "betas must satisfy 0 < beta_start <= beta_end < 1, got [" +
                                                   std::to_string(beta_start) + ", " + std::to_string(beta_end) +
                                                   "]");
    }
    beta_.resize(static_cast<std::size_t>(n_train));
    alpha_bar_.resize(static_cast<std::size_t>(n_train) + 1);
    alpha_bar_[0] = 1.0;
    for (int i = 0; i < n_train; ++i) {
        const double frac = n_train == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n_train - 1);
        beta_[i] = beta_start + (beta_end - beta_start) * frac;
        alpha_bar_[i + 1] = alpha_bar_[i] * (1.0 - beta_[i]);
    }
}

double Schedule::beta(int t) const {
    if (t < 1 || t > n_train()) {
        throw Error(ErrorKind::kInvalidInput, "timestep " + std::to_string(t) + " outside [1, " +
                                                  std::to_string(n_train()) + "]");
    }
    return beta_[static_cast<std::size_t>(t - 1)];
}

double Schedule::alpha_bar(int t) const {
    if (t < 0 || t > n_train()) {
        throw Error(ErrorKind::kInvalidInput, "timestep " + std::to_string(t) + " outside [0, " +
                                                  std::to_string(n_train()) + "]");
    }
    return alpha_bar_[static_cast<std::size_t>(t)];
}

Schedule build_schedule(int n_train, double beta_start, double beta_end) {
    return Schedule(n_train, beta_start, beta_end);
}

std::vector<int> subsample(const Schedule& schedule, int steps) {
    const int n = schedule.n_train();
    if (steps < 1 || steps > n) {
        throw Error(ErrorKind::kInvalidConfig, "step count " + std::to_string(steps) + " outside [1, " +
                                                   std::to_string(n) + "]");
    }
    std::vector<int> ladder(static_cast<std::size_t>(steps));
    for (int i = 1; i <= steps; ++i) {
        ladder[static_cast<std::size_t>(i - 1)] =
            static_cast<int>(static_cast<long long>(i) * n / steps);
    }
    return ladder;
}

template <typename T>
Tensor<T, SpatialDomain> forward_diffuse(const Tensor<T, SpatialDomain>& x0, double alpha_bar,
                                         const Tensor<T, SpatialDomain>& eps) {
    require_same_shape(x0.shape(), eps.shape(), "forward_diffuse");
    const double a = std::sqrt(alpha_bar);
    const double b = std::sqrt(1.0 - alpha_bar);
    Tensor<T, SpatialDomain> out(x0.shape());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = static_cast<T>(a * static_cast<double>(x0[k]) + b * static_cast<double>(eps[k]));
    }
    return out;
}

template <typename T>
Tensor<T, SpatialDomain> predict_x0(const Tensor<T, SpatialDomain>& z_t, double alpha_bar,
                                    const Tensor<T, SpatialDomain>& eps_hat) {
    require_same_shape(z_t.shape(), eps_hat.shape(), "predict_x0");
    if (!(alpha_bar > 0.0)) {
        throw Error(ErrorKind::kSingularSchedule, "cannot predict x0 where alpha_bar = 0");
    }
    const double a = std::sqrt(alpha_bar);
    const double b = std::sqrt(1.0 - alpha_bar);
    Tensor<T, SpatialDomain> out(z_t.shape());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = static_cast<T>((static_cast<double>(z_t[k]) - b * static_cast<double>(eps_hat[k])) / a);
    }
    return out;
}

template FeatureMap forward_diffuse(const FeatureMap&, double, const FeatureMap&);
template FeatureMap64 forward_diffuse(const FeatureMap64&, double, const FeatureMap64&);
template FeatureMap predict_x0(const FeatureMap&, double, const FeatureMap&);
template FeatureMap64 predict_x0(const FeatureMap64&, double, const FeatureMap64&);

}  // namespace fbsdiff

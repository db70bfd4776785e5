// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/denoiser.hpp"

#include <cmath>
#include <sstream>

#include "fbsdiff/errors.hpp"
#include "fbsdiff/log.hpp"

namespace fbsdiff {

const std::string& Conditioning::text() const noexcept {
    static const std::string kEmpty;
    return text_ ? *text_ : kEmpty;
}

OracleDenoiser::OracleDenoiser(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::kInvalidConfig, "oracle sigma must be positive and finite");
    }
}

double OracleDenoiser::gain(double alpha_bar) const noexcept {
    return std::sqrt(1.0 - alpha_bar) / (alpha_bar * sigma_ * sigma_ + 1.0 - alpha_bar);
}

FeatureMap OracleDenoiser::predict_eps(const FeatureMap& z_t, int t, const Conditioning& cond,
                                       const Schedule& schedule) {
    if (cond.is_text() && !warned_) {
        warned_ = true;
        log_warning("oracle denoiser is unconditional; text conditioning is ignored");
    }
    const double g = gain(schedule.alpha_bar(t));
    FeatureMap out(z_t.shape());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = static_cast<float>(g * static_cast<double>(z_t[k]));
    }
    return out;
}

std::string OracleDenoiser::describe() const {
    std::ostringstream os;
    os << "oracle:" << sigma_;
    return os.str();
}

FeatureMap cfg_eps(const FeatureMap& eps_cond, const FeatureMap& eps_uncond, double omega) {
    require_same_shape(eps_cond.shape(), eps_uncond.shape(), "cfg_eps");
    FeatureMap out(eps_cond.shape());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double u = eps_uncond[k];
        out[k] = static_cast<float>(u + omega * (static_cast<double>(eps_cond[k]) - u));
    }
    return out;
}

}  // namespace fbsdiff

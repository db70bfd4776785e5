// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "fbsdiff/schedule.hpp"
#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// Null conditioning or a UTF-8 prompt. Embedding happens in the backend.
class Conditioning {
public:
    static Conditioning null() { return Conditioning(); }
    static Conditioning text(std::string prompt) { return Conditioning(std::move(prompt)); }

    bool is_text() const noexcept { return text_.has_value(); }
    bool is_null() const noexcept { return !text_.has_value(); }
    /// Empty for null conditioning.
    const std::string& text() const noexcept;

    friend bool operator==(const Conditioning&, const Conditioning&) = default;

private:
    Conditioning() = default;
    explicit Conditioning(std::string prompt) : text_(std::move(prompt)) {}

    std::optional<std::string> text_;
};

/// ε-predictor. Implementations must be deterministic for fixed inputs.
class Denoiser {
public:
    virtual ~Denoiser() = default;

    virtual FeatureMap predict_eps(const FeatureMap& z_t, int t, const Conditioning& cond,
                                   const Schedule& schedule) = 0;

    virtual std::string describe() const = 0;
};

/// Bayes-optimal ε-predictor for data x0 ~ N(0, σ²I):
///
///   ε̂ = √(1−ᾱ_t)·z_t / (ᾱ_t·σ² + 1 − ᾱ_t)
///
/// It is unconditional. Text conditioning yields the null-conditioned result
/// and logs a warning once per instance.
class OracleDenoiser final : public Denoiser {
public:
    /// Throws kInvalidConfig unless sigma > 0 and finite.
    explicit OracleDenoiser(double sigma = 1.0);

    double sigma() const noexcept { return sigma_; }
    bool warned_about_text() const noexcept { return warned_; }

    FeatureMap predict_eps(const FeatureMap& z_t, int t, const Conditioning& cond,
                           const Schedule& schedule) override;

    std::string describe() const override;

    /// The scalar gain ε̂/z_t at a given ᾱ.
    double gain(double alpha_bar) const noexcept;

private:
    double sigma_;
    bool warned_ = false;
};

/// Classifier-free guidance, ω·eps_cond + (1−ω)·eps_uncond, evaluated as
/// eps_uncond + ω·(eps_cond − eps_uncond) so ω = 0 and ω = 1 are exact.
FeatureMap cfg_eps(const FeatureMap& eps_cond, const FeatureMap& eps_uncond, double omega);

}  // namespace fbsdiff

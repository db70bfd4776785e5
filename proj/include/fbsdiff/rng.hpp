// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// Standard normal variates from mt19937_64 through the Box–Muller transform.
/// std::normal_distribution is implementation-defined, so the transform is
/// spelled out here to keep seeded runs reproducible across standard libraries.
class GaussianRng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller/v1";

    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    // Uniform on (0, 1] with 53 bits of resolution.
    double uniform_open_zero();

    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// Fills a tensor with N(0, 1) samples in channel-major order.
FeatureMap sample_gaussian(const Shape& shape, GaussianRng& rng);

}  // namespace fbsdiff

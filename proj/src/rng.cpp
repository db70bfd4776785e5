// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/rng.hpp"

#include <cmath>
#include <numbers>

namespace fbsdiff {

double GaussianRng::uniform_open_zero() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianRng::next() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    const double u1 = uniform_open_zero();
    const double u2 = uniform_open_zero();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
}

FeatureMap sample_gaussian(const Shape& shape, GaussianRng& rng) {
    FeatureMap out(shape);
    for (float& v : out.data()) v = static_cast<float>(rng.next());
    return out;
}

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/fbs.hpp"

#include "fbsdiff/errors.hpp"
#include "fbsdiff/spectral.hpp"

namespace fbsdiff {
namespace {

void require_mask_fits(const Shape& shape, const BandMask& mask) {
    if (mask.height() != shape.height || mask.width() != shape.width) {
        throw Error(ErrorKind::kInvalidInput, "mask " + std::to_string(mask.height()) + "x" +
                                                  std::to_string(mask.width()) + " does not fit tensor " +
                                                  to_string(shape));
    }
}

}  // namespace

template <typename T>
Tensor<T, SpatialDomain> substitute_band(const Tensor<T, SpatialDomain>& guide,
                                         const Tensor<T, SpatialDomain>& target, const BandMask& mask) {
    require_same_shape(guide.shape(), target.shape(), "substitute_band");
    require_mask_fits(guide.shape(), mask);

    const Spectrum64 g = dct2(guide.template cast<double>());
    Spectrum64 blended = dct2(target.template cast<double>());
    const auto bits = mask.bits();
    const std::size_t plane = guide.shape().plane();
    for (std::size_t c = 0; c < guide.shape().channels; ++c) {
        auto dst = blended.channel(c);
        const auto src = g.channel(c);
        for (std::size_t k = 0; k < plane; ++k) {
            if (bits[k]) dst[k] = src[k];
        }
    }
    return idct2(blended).template cast<T>();
}

template <typename T>
Tensor<T, FrequencyDomain> apply_mask(const Tensor<T, FrequencyDomain>& f, const BandMask& mask) {
    require_mask_fits(f.shape(), mask);
    Tensor<T, FrequencyDomain> out = f;
    const auto bits = mask.bits();
    const std::size_t plane = f.shape().plane();
    for (std::size_t c = 0; c < f.shape().channels; ++c) {
        auto dst = out.channel(c);
        for (std::size_t k = 0; k < plane; ++k) {
            if (!bits[k]) dst[k] = T{0};
        }
    }
    return out;
}

template FeatureMap substitute_band(const FeatureMap&, const FeatureMap&, const BandMask&);
template FeatureMap64 substitute_band(const FeatureMap64&, const FeatureMap64&, const BandMask&);
template Spectrum apply_mask(const Spectrum&, const BandMask&);
template Spectrum64 apply_mask(const Spectrum64&, const BandMask&);

}  // namespace fbsdiff

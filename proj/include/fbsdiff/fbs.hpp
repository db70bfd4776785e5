// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fbsdiff/masks.hpp"
#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// Frequency band substitution:
///
///   idct2( dct2(guide)·mask + dct2(target)·(1 − mask) )
///
/// The single 2D mask is shared by every channel. The whole round trip runs
/// in double precision and is rounded to T once at the end. Throws
/// kInvalidInput when the input extents disagree with each other or the mask.
template <typename T>
Tensor<T, SpatialDomain> substitute_band(const Tensor<T, SpatialDomain>& guide,
                                         const Tensor<T, SpatialDomain>& target, const BandMask& mask);

/// Keeps the masked coefficients of `f` and zeroes the rest.
template <typename T>
Tensor<T, FrequencyDomain> apply_mask(const Tensor<T, FrequencyDomain>& f, const BandMask& mask);

}  // namespace fbsdiff

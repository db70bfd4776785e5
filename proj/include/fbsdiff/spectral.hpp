// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// Orthonormal type-II 2D DCT applied to every channel independently:
///
///   f(u,v) = (2/√(hw))·m(u)·m(v)·Σᵢ Σⱼ z(i,j)·cos((2i+1)uπ/2h)·cos((2j+1)vπ/2w)
///
/// with m(0) = 1/√2 and m(γ) = 1 otherwise. Evaluated as a separable
/// row pass followed by a column pass, accumulated in double precision.
/// Throws kInvalidInput on an empty shape or non-finite input.
template <typename T>
Tensor<T, FrequencyDomain> dct2(const Tensor<T, SpatialDomain>& z);

/// Exact inverse of dct2 (type-III with the same normalisation).
template <typename T>
Tensor<T, SpatialDomain> idct2(const Tensor<T, FrequencyDomain>& f);

}  // namespace fbsdiff

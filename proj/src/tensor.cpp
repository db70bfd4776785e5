// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

std::string to_string(const Shape& shape) {
    return std::to_string(shape.channels) + "x" + std::to_string(shape.height) + "x" +
           std::to_string(shape.width);
}

template <typename T, typename D>
bool Tensor<T, D>::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
}

template <typename T, typename D>
void Tensor<T, D>::check_shape() const {
    if (shape_.channels == 0 || shape_.height == 0 || shape_.width == 0) {
        throw Error(ErrorKind::kInvalidInput, "tensor extents must be positive, got " + to_string(shape_));
    }
}

template <typename T, typename D>
void Tensor<T, D>::check_length() const {
    if (data_.size() != shape_.size()) {
        throw Error(ErrorKind::kInvalidInput, "tensor of shape " + to_string(shape_) + " needs " +
                                                  std::to_string(shape_.size()) + " values, got " +
                                                  std::to_string(data_.size()));
    }
}

void require_same_shape(const Shape& a, const Shape& b, const char* what) {
    if (!(a == b)) {
        throw Error(ErrorKind::kInvalidInput,
                    std::string(what) + ": shape mismatch " + to_string(a) + " vs " + to_string(b));
    }
}

template <typename T, typename D>
double max_abs_diff(const Tensor<T, D>& a, const Tensor<T, D>& b) {
    require_same_shape(a.shape(), b.shape(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(static_cast<double>(a[k]) - static_cast<double>(b[k])));
    }
    return m;
}

template <typename T, typename D>
double max_abs(const Tensor<T, D>& a) {
    double m = 0.0;
    for (T v : a.data()) m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
}

template <typename T, typename D>
double squared_norm(const Tensor<T, D>& a) {
    double s = 0.0;
    for (T v : a.data()) s += static_cast<double>(v) * static_cast<double>(v);
    return s;
}

template <typename T, typename D>
double relative_l2_error(const Tensor<T, D>& a, const Tensor<T, D>& b) {
    require_same_shape(a.shape(), b.shape(), "relative_l2_error");
    double num = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
        num += d * d;
    }
    const double den = squared_norm(b);
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

#define FBSDIFF_INSTANTIATE(T, D)                                                   \
    template class Tensor<T, D>;                                                    \
    template double max_abs_diff(const Tensor<T, D>&, const Tensor<T, D>&);         \
    template double max_abs(const Tensor<T, D>&);                                   \
    template double squared_norm(const Tensor<T, D>&);                              \
    template double relative_l2_error(const Tensor<T, D>&, const Tensor<T, D>&);

FBSDIFF_INSTANTIATE(float, SpatialDomain)
FBSDIFF_INSTANTIATE(float, FrequencyDomain)
FBSDIFF_INSTANTIATE(double, SpatialDomain)
FBSDIFF_INSTANTIATE(double, FrequencyDomain)

#undef FBSDIFF_INSTANTIATE

}  // namespace fbsdiff

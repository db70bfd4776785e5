// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fbsdiff {

/// Channel-major, row-major-within-channel extent of a latent.
struct Shape {
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t plane() const noexcept { return height * width; }
    std::size_t size() const noexcept { return channels * height * width; }
    bool empty() const noexcept { return size() == 0; }

    friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);

struct SpatialDomain {};
struct FrequencyDomain {};

/// Dense c×h×w real tensor. The domain tag keeps spatial latents and their
/// DCT spectra from being mixed up at compile time.
template <typename T, typename Domain>
class Tensor {
public:
    using value_type = T;
    using domain = Domain;

    Tensor() = default;

    explicit Tensor(Shape shape, T fill = T{0}) : shape_(shape), data_(shape.size(), fill) {
        check_shape();
    }

    /// Throws kInvalidInput when data length disagrees with the shape.
    Tensor(Shape shape, std::vector<T> data) : shape_(shape), data_(std::move(data)) {
        check_shape();
        check_length();
    }

    const Shape& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    std::span<T> channel(std::size_t c) noexcept {
        return std::span<T>(data_).subspan(c * shape_.plane(), shape_.plane());
    }
    std::span<const T> channel(std::size_t c) const noexcept {
        return std::span<const T>(data_).subspan(c * shape_.plane(), shape_.plane());
    }

    T& operator()(std::size_t c, std::size_t i, std::size_t j) noexcept {
        return data_[(c * shape_.height + i) * shape_.width + j];
    }
    T operator()(std::size_t c, std::size_t i, std::size_t j) const noexcept {
        return data_[(c * shape_.height + i) * shape_.width + j];
    }

    T& operator[](std::size_t k) noexcept { return data_[k]; }
    T operator[](std::size_t k) const noexcept { return data_[k]; }

    bool all_finite() const noexcept;

    template <typename U>
    Tensor<U, Domain> cast() const {
        std::vector<U> out(data_.begin(), data_.end());
        return Tensor<U, Domain>(shape_, std::move(out));
    }

    friend bool operator==(const Tensor&, const Tensor&) = default;

private:
    void check_shape() const;
    void check_length() const;

    Shape shape_;
    std::vector<T> data_;
};

using FeatureMap = Tensor<float, SpatialDomain>;
using Spectrum = Tensor<float, FrequencyDomain>;
using FeatureMap64 = Tensor<double, SpatialDomain>;
using Spectrum64 = Tensor<double, FrequencyDomain>;

/// Throws kInvalidInput unless both operands share a shape.
void require_same_shape(const Shape& a, const Shape& b, const char* what);

template <typename T, typename D>
double max_abs_diff(const Tensor<T, D>& a, const Tensor<T, D>& b);

template <typename T, typename D>
double max_abs(const Tensor<T, D>& a);

template <typename T, typename D>
double squared_norm(const Tensor<T, D>& a);

/// ‖a − b‖₂ / ‖b‖₂, or ‖a‖₂ when b is zero.
template <typename T, typename D>
double relative_l2_error(const Tensor<T, D>& a, const Tensor<T, D>& b);

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/spectral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {
namespace {

// basis[u*n + i] = s(u)·cos((2i+1)uπ/2n), s(0) = √(1/n), s(u>0) = √(2/n).
// Rows are orthonormal, so the inverse is the transpose.
std::vector<double> dct_basis(std::size_t n) {
    std::vector<double> basis(n * n);
    const double s0 = std::sqrt(1.0 / static_cast<double>(n));
    const double s = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t u = 0; u < n; ++u) {
        const double scale = u == 0 ? s0 : s;
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = static_cast<double>((2 * i + 1) * u) * std::numbers::pi /
                                 static_cast<double>(2 * n);
            basis[u * n + i] = scale * std::cos(angle);
        }
    }
    return basis;
}

template <typename Tensor>
void validate(const Tensor& t, const char* op) {
    if (t.shape().empty()) {
        throw Error(ErrorKind::kInvalidInput, std::string(op) + ": empty tensor");
    }
    if (!t.all_finite()) {
        throw Error(ErrorKind::kInvalidInput, std::string(op) + ": non-finite input");
    }
}

}  // namespace

template <typename T>
Tensor<T, FrequencyDomain> dct2(const Tensor<T, SpatialDomain>& z) {
    validate(z, "dct2");
    const Shape shape = z.shape();
    const std::size_t h = shape.height, w = shape.width;
    const auto bh = dct_basis(h);
    const auto bw = dct_basis(w);

    Tensor<T, FrequencyDomain> out(shape);
    std::vector<double> rows(h * w);
    for (std::size_t c = 0; c < shape.channels; ++c) {
        const auto src = z.channel(c);
        // rows(i, v) = Σⱼ z(i, j)·bw(v, j)
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t v = 0; v < w; ++v) {
                double acc = 0.0;
                const double* b = &bw[v * w];
                for (std::size_t j = 0; j < w; ++j) acc += static_cast<double>(src[i * w + j]) * b[j];
                rows[i * w + v] = acc;
            }
        }
        // f(u, v) = Σᵢ bh(u, i)·rows(i, v)
        auto dst = out.channel(c);
        for (std::size_t u = 0; u < h; ++u) {
            const double* b = &bh[u * h];
            for (std::size_t v = 0; v < w; ++v) {
                double acc = 0.0;
                for (std::size_t i = 0; i < h; ++i) acc += b[i] * rows[i * w + v];
                dst[u * w + v] = static_cast<T>(acc);
            }
        }
    }
    return out;
}

template <typename T>
Tensor<T, SpatialDomain> idct2(const Tensor<T, FrequencyDomain>& f) {
    validate(f, "idct2");
    const Shape shape = f.shape();
    const std::size_t h = shape.height, w = shape.width;
    const auto bh = dct_basis(h);
    const auto bw = dct_basis(w);

    Tensor<T, SpatialDomain> out(shape);
    std::vector<double> rows(h * w);
    for (std::size_t c = 0; c < shape.channels; ++c) {
        const auto src = f.channel(c);
        // rows(u, j) = Σᵥ f(u, v)·bw(v, j)
        for (std::size_t u = 0; u < h; ++u) {
            for (std::size_t j = 0; j < w; ++j) {
                double acc = 0.0;
                for (std::size_t v = 0; v < w; ++v) acc += static_cast<double>(src[u * w + v]) * bw[v * w + j];
                rows[u * w + j] = acc;
            }
        }
        // z(i, j) = Σᵤ bh(u, i)·rows(u, j)
        auto dst = out.channel(c);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                double acc = 0.0;
                for (std::size_t u = 0; u < h; ++u) acc += bh[u * h + i] * rows[u * w + j];
                dst[i * w + j] = static_cast<T>(acc);
            }
        }
    }
    return out;
}

template Spectrum dct2(const FeatureMap&);
template Spectrum64 dct2(const FeatureMap64&);
template FeatureMap idct2(const Spectrum&);
template FeatureMap64 idct2(const Spectrum64&);

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/codec.hpp"

#include <algorithm>
#include <cmath>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

ImageBuffer::ImageBuffer(std::size_t h, std::size_t w, std::vector<std::uint8_t> rgb)
    : height(h), width(w), pixels(std::move(rgb)) {
    if (h == 0 || w == 0) throw Error(ErrorKind::kInvalidInput, "image extents must be positive");
    if (pixels.size() != h * w * 3) {
        throw Error(ErrorKind::kInvalidInput, "image " + std::to_string(h) + "x" + std::to_string(w) +
                                                  " needs " + std::to_string(h * w * 3) + " bytes, got " +
                                                  std::to_string(pixels.size()));
    }
}

ImageBuffer::ImageBuffer(std::size_t h, std::size_t w, std::uint8_t fill)
    : ImageBuffer(h, w, std::vector<std::uint8_t>(h * w * 3, fill)) {}

float pixel_to_unit(std::uint8_t p) noexcept {
    return static_cast<float>(static_cast<double>(p) / 127.5 - 1.0);
}

std::uint8_t unit_to_pixel(double v) noexcept {
    if (!(v > -1.0)) return 0;  // also catches NaN
    if (v >= 1.0) return 255;
    // Snap away float32 storage error first, so exact half levels (the mean of
    // an even-sum pool block) land on .5 and round away from zero.
    const double level = std::round((v + 1.0) * 127.5 * 4096.0) / 4096.0;
    return static_cast<std::uint8_t>(std::clamp(std::round(level), 0.0, 255.0));
}

namespace {

void require_rgb_latent(const FeatureMap& latent) {
    if (latent.shape().channels != 3) {
        throw Error(ErrorKind::kInvalidInput,
                    "decoding needs a 3-channel latent, got " + to_string(latent.shape()));
    }
}

}  // namespace

FeatureMap IdentityCodec::encode(const ImageBuffer& image) {
    FeatureMap z(Shape{3, image.height, image.width});
    for (std::size_t y = 0; y < image.height; ++y) {
        for (std::size_t x = 0; x < image.width; ++x) {
            for (std::size_t c = 0; c < 3; ++c) z(c, y, x) = pixel_to_unit(image.at(y, x, c));
        }
    }
    return z;
}

ImageBuffer IdentityCodec::decode(const FeatureMap& latent) {
    require_rgb_latent(latent);
    const Shape s = latent.shape();
    ImageBuffer image(s.height, s.width, std::uint8_t{0});
    for (std::size_t y = 0; y < s.height; ++y) {
        for (std::size_t x = 0; x < s.width; ++x) {
            for (std::size_t c = 0; c < 3; ++c) image.at(y, x, c) = unit_to_pixel(latent(c, y, x));
        }
    }
    return image;
}

AvgPoolCodec::AvgPoolCodec(int k) : k_(k) {
    if (k < 1) throw Error(ErrorKind::kInvalidConfig, "avgpool factor must be >= 1");
}

FeatureMap AvgPoolCodec::encode(const ImageBuffer& image) {
    const auto k = static_cast<std::size_t>(k_);
    if (image.height % k != 0 || image.width % k != 0) {
        throw Error(ErrorKind::kInvalidInput, "image " + std::to_string(image.height) + "x" +
                                                  std::to_string(image.width) + " is not divisible by " +
                                                  std::to_string(k_));
    }
    const std::size_t h = image.height / k, w = image.width / k;
    const double inv_area = 1.0 / static_cast<double>(k * k);
    FeatureMap z(Shape{3, h, w});
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                double acc = 0.0;
                for (std::size_t dy = 0; dy < k; ++dy) {
                    for (std::size_t dx = 0; dx < k; ++dx) {
                        acc += static_cast<double>(image.at(i * k + dy, j * k + dx, c)) / 127.5 - 1.0;
                    }
                }
                z(c, i, j) = static_cast<float>(acc * inv_area);
            }
        }
    }
    return z;
}

ImageBuffer AvgPoolCodec::decode(const FeatureMap& latent) {
    require_rgb_latent(latent);
    const auto k = static_cast<std::size_t>(k_);
    const Shape s = latent.shape();
    ImageBuffer image(s.height * k, s.width * k, std::uint8_t{0});
    for (std::size_t y = 0; y < image.height; ++y) {
        for (std::size_t x = 0; x < image.width; ++x) {
            for (std::size_t c = 0; c < 3; ++c) image.at(y, x, c) = unit_to_pixel(latent(c, y / k, x / k));
        }
    }
    return image;
}

}  // namespace fbsdiff

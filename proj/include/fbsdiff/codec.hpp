// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

/// 8-bit RGB, row-major, interleaved.
struct ImageBuffer {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> pixels;

    ImageBuffer() = default;
    /// Throws kInvalidInput when pixels.size() != 3·height·width or an extent is zero.
    ImageBuffer(std::size_t h, std::size_t w, std::vector<std::uint8_t> rgb);
    ImageBuffer(std::size_t h, std::size_t w, std::uint8_t fill);

    std::uint8_t& at(std::size_t y, std::size_t x, std::size_t ch) { return pixels[(y * width + x) * 3 + ch]; }
    std::uint8_t at(std::size_t y, std::size_t x, std::size_t ch) const { return pixels[(y * width + x) * 3 + ch]; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

/// Maps between images and latents (the LDM encoder/decoder pair).
class Codec {
public:
    virtual ~Codec() = default;
    virtual FeatureMap encode(const ImageBuffer& image) = 0;
    virtual ImageBuffer decode(const FeatureMap& latent) = 0;
    virtual std::string describe() const = 0;
};

/// [0,255] → [−1,1] per channel.
float pixel_to_unit(std::uint8_t p) noexcept;
/// [−1,1] → {0..255}, clamped, rounded half away from zero.
std::uint8_t unit_to_pixel(double v) noexcept;

/// 3×h×w latent holding the range-mapped pixels.
class IdentityCodec final : public Codec {
public:
    FeatureMap encode(const ImageBuffer& image) override;
    /// Throws kInvalidInput unless the latent has 3 channels.
    ImageBuffer decode(const FeatureMap& latent) override;
    std::string describe() const override { return "identity"; }
};

/// Range map followed by k×k mean pooling; decodes by nearest-neighbour
/// upsampling.
class AvgPoolCodec final : public Codec {
public:
    /// Throws kInvalidConfig for k < 1.
    explicit AvgPoolCodec(int k);

    int factor() const noexcept { return k_; }

    /// Throws kInvalidInput when image extents are not multiples of k.
    FeatureMap encode(const ImageBuffer& image) override;
    ImageBuffer decode(const FeatureMap& latent) override;
    std::string describe() const override { return "avgpool:" + std::to_string(k_); }

private:
    int k_;
};

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fbsdiff {

enum class MaskKind { kLow, kHigh, kMid, kFull, kEmpty };

std::string_view to_string(MaskKind kind);
std::optional<MaskKind> parse_mask_kind(std::string_view text);

/// Coordinate-sum thresholds for a band. `lower` is used by kLow (th_lp) and
/// kHigh (th_hp); kMid uses the half-open range (lower, upper].
struct MaskSpec {
    MaskKind kind = MaskKind::kLow;
    int lower = 80;
    int upper = 0;

    static MaskSpec low(int th_lp) { return {MaskKind::kLow, th_lp, 0}; }
    static MaskSpec high(int th_hp) { return {MaskKind::kHigh, th_hp, 0}; }
    static MaskSpec mid(int th_mp1, int th_mp2) { return {MaskKind::kMid, th_mp1, th_mp2}; }
    static MaskSpec full() { return {MaskKind::kFull, 0, 0}; }
    static MaskSpec empty() { return {MaskKind::kEmpty, 0, 0}; }

    std::string describe() const;

    friend bool operator==(const MaskSpec&, const MaskSpec&) = default;
};

/// Binary h×w selector over DCT coefficients (x = row, y = column).
class BandMask {
public:
    BandMask(MaskSpec spec, std::size_t height, std::size_t width, std::vector<std::uint8_t> bits);

    const MaskSpec& spec() const noexcept { return spec_; }
    MaskKind kind() const noexcept { return spec_.kind; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }

    bool at(std::size_t x, std::size_t y) const noexcept { return bits_[x * width_ + y] != 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

private:
    MaskSpec spec_;
    std::size_t height_;
    std::size_t width_;
    std::vector<std::uint8_t> bits_;
};

/// low:  x+y ≤ th_lp
/// high: x+y > th_hp
/// mid:  th_mp1 < x+y ≤ th_mp2
///
/// Thresholds are total: values past (h−1)+(w−1) saturate, negative ones give
/// an empty low band. Throws kInvalidThreshold for mid with th_mp1 ≥ th_mp2 and
/// kInvalidInput for a zero extent.
BandMask make_mask(const MaskSpec& spec, std::size_t height, std::size_t width);

std::size_t mask_popcount(const BandMask& mask);

/// Binary PGM (P5), 255 where the mask is set.
std::string to_pgm(const BandMask& mask);

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/masks.hpp"

#include <algorithm>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

std::string_view to_string(MaskKind kind) {
    switch (kind) {
    case MaskKind::kLow:
        return "low";
    case MaskKind::kHigh:
        return "high";
    case MaskKind::kMid:
        return "mid";
    case MaskKind::kFull:
        return "full";
    case MaskKind::kEmpty:
        return "empty";
    }
    return "?";
}

std::optional<MaskKind> parse_mask_kind(std::string_view text) {
    for (MaskKind k : {MaskKind::kLow, MaskKind::kHigh, MaskKind::kMid, MaskKind::kFull, MaskKind::kEmpty}) {
        if (text == to_string(k)) return k;
    }
    return std::nullopt;
}

std::string MaskSpec::describe() const {
    switch (kind) {
    case MaskKind::kLow:
        return "low(th_lp=" + std::to_string(lower) + ")";
    case MaskKind::kHigh:
        return "high(th_hp=" + std::to_string(lower) + ")";
    case MaskKind::kMid:
        return "mid(th_mp1=" + std::to_string(lower) + ", th_mp2=" + std::to_string(upper) + ")";
    default:
        return std::string(to_string(kind));
    }
}

BandMask::BandMask(MaskSpec spec, std::size_t height, std::size_t width, std::vector<std::uint8_t> bits)
    : spec_(spec), height_(height), width_(width), bits_(std::move(bits)) {
    if (bits_.size() != height_ * width_) {
        throw Error(ErrorKind::kInvalidInput, "mask bit count does not match its extent");
    }
}

BandMask make_mask(const MaskSpec& spec, std::size_t height, std::size_t width) {
    if (height == 0 || width == 0) {
        throw Error(ErrorKind::kInvalidInput, "mask extents must be positive");
    }
    if (spec.kind == MaskKind::kMid && spec.lower >= spec.upper) {
        throw Error(ErrorKind::kInvalidThreshold, "mid band needs th_mp1 < th_mp2, got " +
                                                      std::to_string(spec.lower) + " >= " +
                                                      std::to_string(spec.upper));
    }

    // Compare in 64-bit so extreme thresholds never overflow.
    const auto lower = static_cast<long long>(spec.lower);
    const auto upper = static_cast<long long>(spec.upper);
    auto selected = [&](long long s) {
        switch (spec.kind) {
        case MaskKind::kLow:
            return s <= lower;
        case MaskKind::kHigh:
            return s > lower;
        case MaskKind::kMid:
            return lower < s && s <= upper;
        case MaskKind::kFull:
            return true;
        case MaskKind::kEmpty:
            return false;
        }
        return false;
    };

    std::vector<std::uint8_t> bits(height * width);
    for (std::size_t x = 0; x < height; ++x) {
        for (std::size_t y = 0; y < width; ++y) {
            bits[x * width + y] = selected(static_cast<long long>(x + y)) ? 1 : 0;
        }
    }
    return BandMask(spec, height, width, std::move(bits));
}

std::size_t mask_popcount(const BandMask& mask) {
    return static_cast<std::size_t>(std::count(mask.bits().begin(), mask.bits().end(), std::uint8_t{1}));
}

std::string to_pgm(const BandMask& mask) {
    std::string out = "P5\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n255\n";
    out.reserve(out.size() + mask.bits().size());
    for (std::uint8_t b : mask.bits()) out.push_back(static_cast<char>(b ? 255 : 0));
    return out;
}

}  // namespace fbsdiff

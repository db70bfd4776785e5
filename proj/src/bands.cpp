// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/bands.hpp"

#include "fbsdiff/fbs.hpp"
#include "fbsdiff/spectral.hpp"

namespace fbsdiff {
namespace {

BandComponent component(const Spectrum64& f, const MaskSpec& spec, double total) {
    const Shape& s = f.shape();
    const Spectrum64 masked = apply_mask(f, make_mask(spec, s.height, s.width));
    BandComponent out;
    out.spec = spec;
    out.energy = squared_norm(masked);
    out.fraction = total > 0.0 ? out.energy / total : 0.0;
    out.spatial = idct2(masked).cast<float>();
    return out;
}

}  // namespace

BandDecomposition decompose_bands(const FeatureMap& z, const BandThresholds& th) {
    const Spectrum64 f = dct2(z.cast<double>());
    BandDecomposition d;
    d.total_energy = squared_norm(f);
    d.low = component(f, MaskSpec::low(th.th_lp), d.total_energy);
    d.mid = component(f, MaskSpec::mid(th.th_mp1, th.th_mp2), d.total_energy);
    d.high = component(f, MaskSpec::high(th.th_hp), d.total_energy);
    return d;
}

}  // namespace fbsdiff

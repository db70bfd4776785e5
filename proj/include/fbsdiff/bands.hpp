// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fbsdiff/masks.hpp"
#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

struct BandThresholds {
    int th_lp = 80;
    int th_hp = 5;
    int th_mp1 = 5;
    int th_mp2 = 80;
};

struct BandComponent {
    MaskSpec spec;
    FeatureMap spatial;  // idct2 of the masked spectrum
    double energy = 0.0;
    double fraction = 0.0;  // energy / total, 0 when the total is 0
};

struct BandDecomposition {
    double total_energy = 0.0;
    BandComponent low;
    BandComponent mid;
    BandComponent high;
};

/// Splits a latent into its three DCT bands, each reconstructed
/// independently. Energies are sums of squared coefficients over all channels.
BandDecomposition decompose_bands(const FeatureMap& z, const BandThresholds& thresholds);

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "fbsdiff/tensor.hpp"

namespace fbsdiff {

// Raw latent dump: 16-byte header ("FBSZ", u32 c, u32 h, u32 w, little-endian)
// followed by c·h·w little-endian float32 values in channel-major order.

std::string serialize_latent(const FeatureMap& z);
/// Throws kInvalidInput on a bad header or truncated body.
FeatureMap deserialize_latent(const std::string& bytes);

void write_latent(const std::filesystem::path& path, const FeatureMap& z);
FeatureMap read_latent(const std::filesystem::path& path);

}  // namespace fbsdiff

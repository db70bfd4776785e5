// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "fbsdiff/codec.hpp"

namespace fbsdiff {

/// Any PNG libpng understands, converted to 8-bit RGB (alpha is dropped).
ImageBuffer read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageBuffer& image);

/// Writes raw bytes, throwing kIo on failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace fbsdiff

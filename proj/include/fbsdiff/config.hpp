// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbsdiff/pipeline.hpp"

namespace fbsdiff {

/// Ordered key/value pairs; keys are flag names without the leading dashes.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Line-oriented `key = value` text. `#` starts a comment, blank lines are
/// skipped. Throws kUsage naming the origin and line on a malformed line.
KeyValues parse_config_text(std::string_view text, const std::string& origin = "config");
KeyValues read_config_file(const std::filesystem::path& path);

struct CliConfig {
    PipelineConfig pipeline;
    std::optional<std::string> ref;
    std::optional<std::string> out;
    std::optional<std::string> manifest;
};

/// Built-in defaults, overlaid by `file`, overlaid by `flags`. Mode-specific
/// threshold defaults: th_lp = 80, th_hp = 5, th_mp1 = 5, th_mp2 = 80.
/// Any rejected key or value throws kUsage.
CliConfig resolve_config(const KeyValues& file, const KeyValues& flags);

/// The keys resolve_config understands.
const std::vector<std::string_view>& config_keys();

/// Run manifest holding the resolved config and the per-stage timings.
std::string format_manifest(const PipelineConfig& config, const RunReport& report);

}  // namespace fbsdiff

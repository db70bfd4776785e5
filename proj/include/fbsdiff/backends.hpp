// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "fbsdiff/codec.hpp"
#include "fbsdiff/denoiser.hpp"
#include "fbsdiff/remote.hpp"

namespace fbsdiff {

/// `oracle`, `oracle:SIGMA` or `remote:HOST:PORT`.
struct DenoiserSpec {
    enum class Backend { kOracle, kRemote };

    Backend backend = Backend::kOracle;
    double sigma = 1.0;
    RemoteAddress address;

    /// Throws kUsage on malformed text or a non-positive sigma.
    static DenoiserSpec parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const DenoiserSpec&, const DenoiserSpec&) = default;
};

/// `identity`, `avgpool:K` or `remote:HOST:PORT`.
struct CodecSpec {
    enum class Backend { kIdentity, kAvgPool, kRemote };

    Backend backend = Backend::kIdentity;
    int factor = 1;
    RemoteAddress address;

    static CodecSpec parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const CodecSpec&, const CodecSpec&) = default;
};

std::unique_ptr<Denoiser> make_denoiser(const DenoiserSpec& spec,
                                        std::chrono::milliseconds timeout = remote_timeout_from_env());
std::unique_ptr<Codec> make_codec(const CodecSpec& spec,
                                  std::chrono::milliseconds timeout = remote_timeout_from_env());

}  // namespace fbsdiff

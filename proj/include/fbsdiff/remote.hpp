// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "fbsdiff/codec.hpp"
#include "fbsdiff/denoiser.hpp"
#include "fbsdiff/net.hpp"
#include "fbsdiff/wire.hpp"

namespace fbsdiff {

struct RemoteAddress {
    std::string host;
    std::uint16_t port = 0;

    /// "HOST:PORT"; the last colon separates the port. Throws kUsage.
    static RemoteAddress parse(std::string_view text);
    std::string to_string() const { return host + ":" + std::to_string(port); }

    friend bool operator==(const RemoteAddress&, const RemoteAddress&) = default;
};

/// Reads FBSDIFF_REMOTE_TIMEOUT_MS, defaulting to 60000.
std::chrono::milliseconds remote_timeout_from_env();

/// One connection, one request in flight. Movable between threads, not
/// shareable.
class RemoteSession {
public:
    /// Connects and completes the handshake. Throws kBackend on failure.
    RemoteSession(RemoteAddress address, std::chrono::milliseconds timeout);

    const RemoteAddress& address() const noexcept { return address_; }

    /// Sends a request and returns the ok payload. Error responses and
    /// transport faults throw kBackend carrying the server's message.
    FeatureMap call(const wire::Request& request);

private:
    RemoteAddress address_;
    TcpStream stream_;
};

class RemoteDenoiser final : public Denoiser {
public:
    RemoteDenoiser(RemoteAddress address, std::chrono::milliseconds timeout = remote_timeout_from_env());

    /// Throws kBackend when the reply shape differs from z_t.
    FeatureMap predict_eps(const FeatureMap& z_t, int t, const Conditioning& cond,
                           const Schedule& schedule) override;
    std::string describe() const override { return "remote:" + session_.address().to_string(); }

private:
    RemoteSession session_;
};

class RemoteCodec final : public Codec {
public:
    RemoteCodec(RemoteAddress address, std::chrono::milliseconds timeout = remote_timeout_from_env());

    FeatureMap encode(const ImageBuffer& image) override;
    ImageBuffer decode(const FeatureMap& latent) override;
    std::string describe() const override { return "remote:" + session_.address().to_string(); }

private:
    RemoteSession session_;
};

}  // namespace fbsdiff

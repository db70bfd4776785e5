// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/remote.hpp"

#include <charconv>
#include <cstdlib>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

RemoteAddress RemoteAddress::parse(std::string_view text) {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
        throw Error(ErrorKind::kUsage, "expected HOST:PORT, got '" + std::string(text) + "'");
    }
    const std::string_view port_text = text.substr(colon + 1);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || value == 0 || value > 65535) {
        throw Error(ErrorKind::kUsage, "invalid port '" + std::string(port_text) + "'");
    }
    std::string host(text.substr(0, colon));
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
    return {host, static_cast<std::uint16_t>(value)};
}

std::chrono::milliseconds remote_timeout_from_env() {
    constexpr std::chrono::milliseconds kDefault{60000};
    const char* raw = std::getenv("FBSDIFF_REMOTE_TIMEOUT_MS");
    if (raw == nullptr || *raw == '\0') return kDefault;
    long long ms = 0;
    const std::string_view text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), ms);
    if (ec != std::errc{} || ptr != text.data() + text.size() || ms <= 0) {
        throw Error(ErrorKind::kUsage, "FBSDIFF_REMOTE_TIMEOUT_MS must be a positive integer");
    }
    return std::chrono::milliseconds(ms);
}

RemoteSession::RemoteSession(RemoteAddress address, std::chrono::milliseconds timeout)
    : address_(std::move(address)), stream_(TcpStream::connect(address_.host, address_.port, timeout)) {
    wire::write_handshake(stream_);
    const std::uint16_t version = wire::read_handshake(stream_);
    if (version != wire::kVersion) {
        throw wire::ProtocolError("server at " + address_.to_string() + " speaks protocol version " +
                                  std::to_string(version) + ", expected " + std::to_string(wire::kVersion));
    }
}

FeatureMap RemoteSession::call(const wire::Request& request) {
    const auto frame = wire::encode_request(request);
    stream_.write_all(frame);
    wire::Response response = wire::read_response(stream_);
    if (response.status != wire::Status::kOk) {
        throw Error(ErrorKind::kBackend, "remote " + address_.to_string() + " reported: " + response.message);
    }
    return std::move(response.payload);
}

RemoteDenoiser::RemoteDenoiser(RemoteAddress address, std::chrono::milliseconds timeout)
    : session_(std::move(address), timeout) {}

FeatureMap RemoteDenoiser::predict_eps(const FeatureMap& z_t, int t, const Conditioning& cond,
                                       const Schedule& schedule) {
    if (t < 0 || t > schedule.n_train()) {
        throw Error(ErrorKind::kInvalidInput, "timestep " + std::to_string(t) + " outside the schedule");
    }
    wire::Request request{wire::Opcode::kEps, static_cast<std::uint32_t>(t), cond, z_t};
    FeatureMap eps = session_.call(request);
    if (!(eps.shape() == z_t.shape())) {
        throw wire::ProtocolError("EPS reply shape " + to_string(eps.shape()) + " differs from request " +
                                  to_string(z_t.shape()));
    }
    return eps;
}

RemoteCodec::RemoteCodec(RemoteAddress address, std::chrono::milliseconds timeout)
    : session_(std::move(address), timeout) {}

FeatureMap RemoteCodec::encode(const ImageBuffer& image) {
    wire::Request request{wire::Opcode::kEncode, 0, Conditioning::null(), IdentityCodec().encode(image)};
    return session_.call(request);
}

ImageBuffer RemoteCodec::decode(const FeatureMap& latent) {
    wire::Request request{wire::Opcode::kDecode, 0, Conditioning::null(), latent};
    FeatureMap rgb = session_.call(request);
    if (rgb.shape().channels != 3) {
        throw wire::ProtocolError("DECODE reply must have 3 channels, got " + to_string(rgb.shape()));
    }
    return IdentityCodec().decode(rgb);
}

}  // namespace fbsdiff

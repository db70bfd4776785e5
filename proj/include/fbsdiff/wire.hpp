// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fbsdiff/denoiser.hpp"
#include "fbsdiff/errors.hpp"
#include "fbsdiff/net.hpp"
#include "fbsdiff/tensor.hpp"

// Binary little-endian protocol between the pipeline and a remote backbone.
//
//   handshake  "FBSD" u16(version)             client sends, server echoes
//   request    u8 opcode
//              u32 timestep                    EPS only
//              u8 cond-kind                    0 = null, 1 = text
//              u32 length + UTF-8 bytes        cond-kind = 1 only
//              u32 c, u32 h, u32 w, c·h·w × f32
//   response   u8 status                       0 = ok, 1 = error
//              ok:    u32 c, u32 h, u32 w, c·h·w × f32
//              error: u32 length + UTF-8 message
//
// ENCODE carries the image as a 3×H×W tensor of range-mapped pixels in
// [−1, 1]; DECODE answers with the same layout.
namespace fbsdiff::wire {

inline constexpr std::array<std::uint8_t, 4> kMagic{'F', 'B', 'S', 'D'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kMaxElements = std::size_t{1} << 28;
inline constexpr std::size_t kMaxTextBytes = std::size_t{1} << 20;

enum class Opcode : std::uint8_t { kEps = 1, kEncode = 2, kDecode = 3 };

enum class Status : std::uint8_t { kOk = 0, kError = 1 };

/// Malformed or unexpected frame.
class ProtocolError : public Error {
public:
    explicit ProtocolError(const std::string& message) : Error(ErrorKind::kBackend, message) {}
};

struct Request {
    Opcode opcode = Opcode::kEps;
    std::uint32_t timestep = 0;
    Conditioning cond = Conditioning::null();
    FeatureMap payload;

    friend bool operator==(const Request&, const Request&) = default;
};

struct Response {
    Status status = Status::kOk;
    FeatureMap payload;
    std::string message;

    static Response ok(FeatureMap payload) { return {Status::kOk, std::move(payload), {}}; }
    static Response error(std::string message) { return {Status::kError, {}, std::move(message)}; }

    friend bool operator==(const Response&, const Response&) = default;
};

void write_handshake(ByteStream& out, std::uint16_t version = kVersion);
/// Returns the peer's version. Throws ProtocolError on a bad magic.
std::uint16_t read_handshake(ByteStream& in);

std::vector<std::uint8_t> encode_request(const Request& request);
std::vector<std::uint8_t> encode_response(const Response& response);

/// Throws ProtocolError naming the offending field (e.g. "unknown opcode 9").
Request read_request(ByteStream& in);
Response read_response(ByteStream& in);

}  // namespace fbsdiff::wire

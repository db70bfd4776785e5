// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/latent_io.hpp"

#include <fstream>
#include <iterator>

#include "fbsdiff/errors.hpp"
#include "fbsdiff/image_io.hpp"
#include "fbsdiff/net.hpp"
#include "fbsdiff/wire.hpp"

namespace fbsdiff {

// The body after the magic is exactly a wire tensor, so the wire codec does
// the byte shuffling.
std::string serialize_latent(const FeatureMap& z) {
    const auto frame = wire::encode_response(wire::Response::ok(z));
    std::string out = "FBSZ";
    out.append(frame.begin() + 1, frame.end());  // drop the status byte
    return out;
}

FeatureMap deserialize_latent(const std::string& bytes) {
    if (bytes.size() < 16 || bytes.compare(0, 4, "FBSZ") != 0) {
        throw Error(ErrorKind::kInvalidInput, "not a latent file (missing FBSZ header)");
    }
    std::vector<std::uint8_t> frame{0};
    frame.insert(frame.end(), bytes.begin() + 4, bytes.end());
    MemoryStream in(std::move(frame));
    try {
        wire::Response r = wire::read_response(in);
        if (in.remaining() != 0) throw Error(ErrorKind::kInvalidInput, "trailing bytes after latent body");
        return std::move(r.payload);
    } catch (const wire::ProtocolError& e) {
        throw Error(ErrorKind::kInvalidInput, "corrupt latent file: " + e.detail());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::kInvalidInput) throw;
        throw Error(ErrorKind::kInvalidInput, "corrupt latent file: " + e.detail());
    }
}

void write_latent(const std::filesystem::path& path, const FeatureMap& z) { write_file(path, serialize_latent(z)); }

FeatureMap read_latent(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::kIo, "cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return deserialize_latent(bytes);
}

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/wire.hpp"

#include <bit>
#include <cstring>

namespace fbsdiff::wire {
namespace {

class Writer {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u16(std::uint16_t v) {
        for (int s = 0; s < 16; s += 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
    }
    void u32(std::uint32_t v) {
        for (int s = 0; s < 32; s += 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
    }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void text(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes_.insert(bytes_.end(), s.begin(), s.end());
    }
    void tensor(const FeatureMap& t) {
        const Shape& s = t.shape();
        u32(static_cast<std::uint32_t>(s.channels));
        u32(static_cast<std::uint32_t>(s.height));
        u32(static_cast<std::uint32_t>(s.width));
        bytes_.reserve(bytes_.size() + 4 * t.size());
        for (float v : t.data()) f32(v);
    }

    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(ByteStream& in) : in_(in) {}

    std::uint8_t u8() {
        std::uint8_t b = 0;
        in_.read_exact({&b, 1});
        return b;
    }
    std::uint16_t u16() {
        std::array<std::uint8_t, 2> b{};
        in_.read_exact(b);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32() {
        std::array<std::uint8_t, 4> b{};
        in_.read_exact(b);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }
    std::string text(const char* what) {
        const std::uint32_t n = u32();
        if (n > kMaxTextBytes) throw ProtocolError(std::string(what) + " length " + std::to_string(n) + " too large");
        std::string s(n, '\0');
        if (n > 0) in_.read_exact({reinterpret_cast<std::uint8_t*>(s.data()), n});
        return s;
    }
    FeatureMap tensor() {
        const Shape shape{u32(), u32(), u32()};
        if (shape.empty()) throw ProtocolError("zero extent in tensor shape " + to_string(shape));
        if (shape.channels > kMaxElements || shape.height > kMaxElements || shape.width > kMaxElements ||
            shape.size() > kMaxElements) {
            throw ProtocolError("tensor shape " + to_string(shape) + " exceeds the frame limit");
        }
        std::vector<std::uint8_t> raw(shape.size() * 4);
        in_.read_exact(raw);
        std::vector<float> values(shape.size());
        for (std::size_t k = 0; k < values.size(); ++k) {
            const std::uint8_t* p = &raw[4 * k];
            const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                                       (static_cast<std::uint32_t>(p[2]) << 16) |
                                       (static_cast<std::uint32_t>(p[3]) << 24);
            values[k] = std::bit_cast<float>(bits);
        }
        return FeatureMap(shape, std::move(values));
    }

private:
    ByteStream& in_;
};

}  // namespace

void write_handshake(ByteStream& out, std::uint16_t version) {
    Writer w;
    for (std::uint8_t b : kMagic) w.u8(b);
    w.u16(version);
    const auto bytes = w.take();
    out.write_all(bytes);
}

std::uint16_t read_handshake(ByteStream& in) {
    std::array<std::uint8_t, 4> magic{};
    in.read_exact(magic);
    if (magic != kMagic) throw ProtocolError("bad handshake magic");
    return Reader(in).u16();
}

std::vector<std::uint8_t> encode_request(const Request& request) {
    Writer w;
    w.u8(static_cast<std::uint8_t>(request.opcode));
    if (request.opcode == Opcode::kEps) w.u32(request.timestep);
    if (request.cond.is_text()) {
        w.u8(1);
        w.text(request.cond.text());
    } else {
        w.u8(0);
    }
    w.tensor(request.payload);
    return w.take();
}

std::vector<std::uint8_t> encode_response(const Response& response) {
    Writer w;
    w.u8(static_cast<std::uint8_t>(response.status));
    if (response.status == Status::kOk) {
        w.tensor(response.payload);
    } else {
        w.text(response.message);
    }
    return w.take();
}

Request read_request(ByteStream& in) {
    Reader r(in);
    Request request;
    const std::uint8_t op = r.u8();
    if (op < 1 || op > 3) throw ProtocolError("unknown opcode " + std::to_string(op));
    request.opcode = static_cast<Opcode>(op);
    if (request.opcode == Opcode::kEps) request.timestep = r.u32();
    const std::uint8_t kind = r.u8();
    if (kind == 1) {
        request.cond = Conditioning::text(r.text("prompt"));
    } else if (kind != 0) {
        throw ProtocolError("unknown cond-kind " + std::to_string(kind));
    }
    request.payload = r.tensor();
    return request;
}

Response read_response(ByteStream& in) {
    Reader r(in);
    const std::uint8_t status = r.u8();
    if (status == 0) return Response::ok(r.tensor());
    if (status == 1) return Response::error(r.text("error message"));
    throw ProtocolError("unknown response status " + std::to_string(status));
}

}  // namespace fbsdiff::wire

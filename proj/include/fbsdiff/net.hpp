// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fbsdiff {

/// Blocking byte channel used by the wire protocol.
class ByteStream {
public:
    virtual ~ByteStream() = default;
    /// Throws kBackend on any transport failure, EOF and timeouts included.
    virtual void read_exact(std::span<std::uint8_t> out) = 0;
    virtual void write_all(std::span<const std::uint8_t> bytes) = 0;
};

/// In-memory stream: writes append, reads consume from the front.
class MemoryStream final : public ByteStream {
public:
    MemoryStream() = default;
    explicit MemoryStream(std::vector<std::uint8_t> bytes) : buffer_(std::move(bytes)) {}

    void read_exact(std::span<std::uint8_t> out) override;
    void write_all(std::span<const std::uint8_t> bytes) override;

    const std::vector<std::uint8_t>& bytes() const noexcept { return buffer_; }
    std::size_t remaining() const noexcept { return buffer_.size() - cursor_; }

private:
    std::vector<std::uint8_t> buffer_;
    std::size_t cursor_ = 0;
};

/// Connected TCP socket with per-operation send/receive timeouts. Move-only.
class TcpStream final : public ByteStream {
public:
    /// Throws kBackend when the host cannot be resolved or reached in time.
    static TcpStream connect(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout);

    /// Adopts an already-connected descriptor.
    TcpStream(int fd, std::chrono::milliseconds timeout);
    TcpStream(TcpStream&& other) noexcept;
    TcpStream& operator=(TcpStream&& other) noexcept;
    TcpStream(const TcpStream&) = delete;
    TcpStream& operator=(const TcpStream&) = delete;
    ~TcpStream() override;

    void read_exact(std::span<std::uint8_t> out) override;
    void write_all(std::span<const std::uint8_t> bytes) override;

    void close() noexcept;
    bool is_open() const noexcept { return fd_ >= 0; }

private:
    int fd_ = -1;
};

}  // namespace fbsdiff

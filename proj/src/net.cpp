// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/net.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {
namespace {

[[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::kBackend, what);
}

std::string errno_text(int err) { return std::strerror(err); }

void set_timeouts(int fd, std::chrono::milliseconds timeout) {
    timeval tv{};
    tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
    tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

// Non-blocking connect bounded by `timeout`; returns the fd or -1 with errno set.
int connect_with_timeout(const addrinfo* ai, std::chrono::milliseconds timeout) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) return -1;
    const int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
    if (rc < 0 && errno == EINPROGRESS) {
        pollfd pfd{fd, POLLOUT, 0};
        rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
        if (rc == 0) {
            ::close(fd);
            errno = ETIMEDOUT;
            return -1;
        }
        if (rc > 0) {
            int err = 0;
            socklen_t len = sizeof(err);
            ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
            if (err != 0) {
                ::close(fd);
                errno = err;
                return -1;
            }
            rc = 0;
        }
    }
    if (rc < 0) {
        const int err = errno;
        ::close(fd);
        errno = err;
        return -1;
    }
    ::fcntl(fd, F_SETFL, flags);
    return fd;
}

}  // namespace

void MemoryStream::read_exact(std::span<std::uint8_t> out) {
    if (out.size() > remaining()) fail("unexpected end of stream");
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(cursor_), out.size(), out.begin());
    cursor_ += out.size();
}

void MemoryStream::write_all(std::span<const std::uint8_t> bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string service = std::to_string(port);
    if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &result); rc != 0) {
        fail("cannot resolve " + host + ": " + ::gai_strerror(rc));
    }
    int fd = -1;
    int last_errno = 0;
    for (addrinfo* ai = result; ai != nullptr && fd < 0; ai = ai->ai_next) {
        fd = connect_with_timeout(ai, timeout);
        if (fd < 0) last_errno = errno;
    }
    ::freeaddrinfo(result);
    if (fd < 0) fail("cannot connect to " + host + ":" + service + ": " + errno_text(last_errno));
    return TcpStream(fd, timeout);
}

TcpStream::TcpStream(int fd, std::chrono::milliseconds timeout) : fd_(fd) { set_timeouts(fd_, timeout); }

TcpStream::TcpStream(TcpStream&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

TcpStream::~TcpStream() { close(); }

void TcpStream::close() noexcept {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void TcpStream::read_exact(std::span<std::uint8_t> out) {
    if (fd_ < 0) fail("read on closed connection");
    std::size_t done = 0;
    while (done < out.size()) {
        const ssize_t n = ::recv(fd_, out.data() + done, out.size() - done, 0);
        if (n > 0) {
            done += static_cast<std::size_t>(n);
        } else if (n == 0) {
            fail("connection closed by peer");
        } else if (errno == EINTR) {
            continue;
        } else if (errno == EAGAIN || errno == EWOULDBLOCK) {
            fail("timed out waiting for the remote backend");
        } else {
            fail("receive failed: " + errno_text(errno));
        }
    }
}

void TcpStream::write_all(std::span<const std::uint8_t> bytes) {
    if (fd_ < 0) fail("write on closed connection");
    std::size_t done = 0;
    while (done < bytes.size()) {
        const ssize_t n = ::send(fd_, bytes.data() + done, bytes.size() - done, MSG_NOSIGNAL);
        if (n >= 0) {
            done += static_cast<std::size_t>(n);
        } else if (errno == EINTR) {
            continue;
        } else if (errno == EAGAIN || errno == EWOULDBLOCK) {
            fail("timed out sending to the remote backend");
        } else {
            fail("send failed: " + errno_text(errno));
        }
    }
}

}  // namespace fbsdiff

// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fbsdiff/denoiser.hpp"
#include "fbsdiff/schedule.hpp"
#include "fbsdiff/wire.hpp"

namespace fbsdiff::testing {

/// Minimal backend speaking the wire protocol on 127.0.0.1, one thread per
/// connection. Stands in for the model bridge in tests.
class LoopbackServer {
public:
    using Handler = std::function<wire::Response(const wire::Request&)>;

    enum class Behavior {
        kNormal,
        kSilent,        // handshake, then never answer
        kBadMagic,      // answer the handshake with garbage
        kWrongVersion,  // echo version 2
    };

    explicit LoopbackServer(Handler handler, Behavior behavior = Behavior::kNormal);
    ~LoopbackServer();

    LoopbackServer(const LoopbackServer&) = delete;
    LoopbackServer& operator=(const LoopbackServer&) = delete;

    std::uint16_t port() const noexcept { return port_; }
    std::string address() const { return "127.0.0.1:" + std::to_string(port_); }
    std::size_t requests_served() const noexcept { return served_.load(); }

private:
    void accept_loop();
    void serve(int fd);
    void converse(TcpStream& stream);

    Handler handler_;
    Behavior behavior_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::atomic<std::size_t> served_{0};
    std::thread acceptor_;
    std::mutex mutex_;
    std::vector<int> client_fds_;
    std::vector<std::thread> workers_;
};

/// EPS through the Gaussian oracle, ENCODE/DECODE as identity on the payload.
LoopbackServer::Handler oracle_identity_handler(double sigma = 1.0, Schedule schedule = build_schedule());

}  // namespace fbsdiff::testing

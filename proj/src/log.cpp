// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/log.hpp"

#include <iostream>
#include <mutex>

namespace fbsdiff {
namespace {

void stderr_sink(LogLevel level, std::string_view message) {
    std::cerr << (level == LogLevel::kWarning ? "warning: " : "") << message << '\n';
}

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

LogSink& current_sink() {
    static LogSink sink = stderr_sink;
    return sink;
}

void emit(LogLevel level, std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (current_sink()) current_sink()(level, message);
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
    std::lock_guard lock(sink_mutex());
    LogSink old = std::move(current_sink());
    current_sink() = std::move(sink);
    return old;
}

void log_info(std::string_view message) { emit(LogLevel::kInfo, message); }
void log_warning(std::string_view message) { emit(LogLevel::kWarning, message); }

}  // namespace fbsdiff

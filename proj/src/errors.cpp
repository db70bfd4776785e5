// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::kInvalidInput:
        return "invalid input";
    case ErrorKind::kInvalidThreshold:
        return "invalid threshold";
    case ErrorKind::kInvalidConfig:
        return "invalid config";
    case ErrorKind::kSingularSchedule:
        return "singular schedule";
    case ErrorKind::kBackend:
        return "backend error";
    case ErrorKind::kUsage:
        return "usage error";
    case ErrorKind::kIo:
        return "io error";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

}  // namespace fbsdiff

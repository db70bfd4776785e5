// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/backends.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {
namespace {

constexpr std::string_view kRemotePrefix = "remote:";

double parse_positive_double(std::string_view text, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::kUsage, std::string(what) + " must be a positive number, got '" +
                                           std::string(text) + "'");
    }
    return value;
}

}  // namespace

DenoiserSpec DenoiserSpec::parse(std::string_view text) {
    DenoiserSpec spec;
    if (text == "oracle") return spec;
    if (text.starts_with("oracle:")) {
        spec.sigma = parse_positive_double(text.substr(7), "oracle sigma");
        return spec;
    }
    if (text.starts_with(kRemotePrefix)) {
        spec.backend = Backend::kRemote;
        spec.address = RemoteAddress::parse(text.substr(kRemotePrefix.size()));
        return spec;
    }
    throw Error(ErrorKind::kUsage, "unknown denoiser '" + std::string(text) +
                                       "' (expected oracle[:sigma] or remote:HOST:PORT)");
}

std::string DenoiserSpec::to_string() const {
    if (backend == Backend::kRemote) return "remote:" + address.to_string();
    std::ostringstream os;
    os << "oracle:" << sigma;
    return os.str();
}

CodecSpec CodecSpec::parse(std::string_view text) {
    CodecSpec spec;
    if (text == "identity") return spec;
    if (text.starts_with("avgpool:")) {
        const std::string_view k = text.substr(8);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), value);
        if (ec != std::errc{} || ptr != k.data() + k.size() || value < 1) {
            throw Error(ErrorKind::kUsage, "avgpool factor must be a positive integer, got '" + std::string(k) + "'");
        }
        spec.backend = Backend::kAvgPool;
        spec.factor = value;
        return spec;
    }
    if (text.starts_with(kRemotePrefix)) {
        spec.backend = Backend::kRemote;
        spec.address = RemoteAddress::parse(text.substr(kRemotePrefix.size()));
        return spec;
    }
    throw Error(ErrorKind::kUsage, "unknown codec '" + std::string(text) +
                                       "' (expected identity, avgpool:K or remote:HOST:PORT)");
}

std::string CodecSpec::to_string() const {
    switch (backend) {
    case Backend::kIdentity:
        return "identity";
    case Backend::kAvgPool:
        return "avgpool:" + std::to_string(factor);
    case Backend::kRemote:
        return "remote:" + address.to_string();
    }
    return "?";
}

std::unique_ptr<Denoiser> make_denoiser(const DenoiserSpec& spec, std::chrono::milliseconds timeout) {
    if (spec.backend == DenoiserSpec::Backend::kRemote) return std::make_unique<RemoteDenoiser>(spec.address, timeout);
    return std::make_unique<OracleDenoiser>(spec.sigma);
}

std::unique_ptr<Codec> make_codec(const CodecSpec& spec, std::chrono::milliseconds timeout) {
    switch (spec.backend) {
    case CodecSpec::Backend::kAvgPool:
        return std::make_unique<AvgPoolCodec>(spec.factor);
    case CodecSpec::Backend::kRemote:
        return std::make_unique<RemoteCodec>(spec.address, timeout);
    case CodecSpec::Backend::kIdentity:
        break;
    }
    return std::make_unique<IdentityCodec>();
}

}  // namespace fbsdiff

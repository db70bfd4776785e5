// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include "fbsdiff/image_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>

#include "fbsdiff/errors.hpp"

namespace fbsdiff {

ImageBuffer read_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw Error(ErrorKind::kIo, "cannot read PNG " + path.string() + ": " + image.message);
    }
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw Error(ErrorKind::kIo, "cannot decode PNG " + path.string() + ": " + message);
    }
    return ImageBuffer(image.height, image.width, std::move(pixels));
}

void write_png(const std::filesystem::path& path, const ImageBuffer& image) {
    png_image out;
    std::memset(&out, 0, sizeof(out));
    out.version = PNG_IMAGE_VERSION;
    out.width = static_cast<png_uint_32>(image.width);
    out.height = static_cast<png_uint_32>(image.height);
    out.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&out, path.c_str(), 0, image.pixels.data(), 0, nullptr)) {
        throw Error(ErrorKind::kIo, "cannot write PNG " + path.string() + ": " + out.message);
    }
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.close();
    if (!os) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

}  // namespace fbsdiff

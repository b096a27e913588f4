#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "wearprompt/mask.hpp"

namespace wearprompt {

// Interleaved 8-bit RGB raster.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 3

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

    ImageSize size() const noexcept { return {width, height}; }
    std::uint8_t* at(int row, int col) {
        return pixels.data() + (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)) * 3;
    }
    const std::uint8_t* at(int row, int col) const {
        return pixels.data() + (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)) * 3;
    }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Single-channel 8-bit raster as stored on disk.
struct GrayLevels {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> levels;
};

inline constexpr int kDefaultLevelThreshold = 128;

// Accepts 8-bit grayscale PNG and binary PGM (P5, maxval 255). The file
// extension is ignored on read; the magic bytes decide.
GrayLevels read_gray_levels(const std::filesystem::path& path);
// Extension selects the format: .pgm writes P5, anything else PNG.
void write_gray_levels(const GrayLevels& image, const std::filesystem::path& path);

// Foreground iff stored level >= threshold.
BinaryMask load_mask(const std::filesystem::path& path, int threshold = kDefaultLevelThreshold);
// Foreground stored as 255, background as 0.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

GrayMask load_gray_mask(const std::filesystem::path& path);

// 8-bit RGB PNG or binary PPM (P6). Grayscale PNG/PGM inputs are expanded.
RgbImage load_rgb(const std::filesystem::path& path);
// .ppm writes P6, anything else PNG.
void save_rgb(const RgbImage& image, const std::filesystem::path& path);

}  // namespace wearprompt

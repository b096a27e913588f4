#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wearprompt/mask.hpp"
#include "wearprompt/poi.hpp"

namespace wearprompt {

inline constexpr int kFullResolution = 1024;
inline constexpr int kLowResolution = 256;

// Point in the refiner's convention: x = column, y = row.
struct BundlePoint {
    int x = 0;
    int y = 0;
    int label = 1;  // 1 = positive (wear), 0 = negative (background)

    friend bool operator==(const BundlePoint&, const BundlePoint&) = default;
};

struct BundleSource {
    std::string method;
    int unet_epochs = 0;
    int train_fraction = 100;  // percent

    friend bool operator==(const BundleSource&, const BundleSource&) = default;
};

// The prompt-in contract handed to any external refiner.
struct PromptBundle {
    std::string image_id;
    std::string image_path;
    std::vector<BundlePoint> points;
    std::string lowres_mask_path;
    BundleSource source;

    friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

// Positives first, then negatives, each in generation order. This is the only
// place where (row, col) becomes (x, y).
std::vector<BundlePoint> to_bundle_points(const PromptPoints& points);
PromptPoints from_bundle_points(const std::vector<BundlePoint>& points);

// OR over non-overlapping window x window blocks. Dimensions must be
// divisible by `window`.
BinaryMask maxpool(const BinaryMask& mask, int window);

// 1024x1024 -> 256x256 with 4x4 windows; any other input size is a
// DimensionError.
BinaryMask downsample_maxpool(const BinaryMask& mask);

// Low-resolution dense prompt for a coarse mask: square masks whose side is
// a multiple of 256 are max-pooled to 256x256 (4x4 windows at 1024x1024).
BinaryMask lowres_prompt_mask(const BinaryMask& mask);

// Structural checks (labels, non-negative coordinates, non-empty ids).
void validate_bundle(const PromptBundle& bundle);
// Structural checks plus every point inside `image`.
void validate_bundle(const PromptBundle& bundle, ImageSize image);

// Canonical serialization: two-space indent, fields in declaration order,
// trailing newline.
std::string serialize_prompt(const PromptBundle& bundle);
PromptBundle parse_prompt(const std::string& text);

void write_prompt(const PromptBundle& bundle, ImageSize image, const std::filesystem::path& path);
PromptBundle read_prompt(const std::filesystem::path& path);

}  // namespace wearprompt

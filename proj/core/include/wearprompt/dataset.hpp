#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wearprompt/image_io.hpp"
#include "wearprompt/mask.hpp"

namespace wearprompt {

struct ManifestEntry {
    std::string image_path;
    std::string label_path;
    std::string tool_id;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    // Tool ids in order of first appearance.
    std::vector<std::string> tools() const;
    std::map<std::string, int> tool_counts() const;

    friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

// CSV with header `image_path,label_path,tool_id`. Fields may be quoted.
DatasetManifest parse_manifest(const std::string& csv);
DatasetManifest read_manifest(const std::filesystem::path& path);
std::string serialize_manifest(const DatasetManifest& manifest);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

// Loads each label (relative to `base_dir`), checks it against its image's
// dimensions and returns the foreground pixel count per entry.
std::vector<std::int64_t> label_areas(const DatasetManifest& manifest, const std::filesystem::path& base_dir);

struct SplitConfig {
    double test_fraction = 0.20;
    int bins = 5;
    std::uint64_t seed = 0;
};

struct SplitResult {
    DatasetManifest train;
    DatasetManifest test;
};

// Per tool: sort by wear area, cut into `bins` equal-frequency bins, draw the
// tool's round(test_fraction * n) test images across bins by largest
// remainder of test_fraction * bin_size. Both outputs keep manifest order.
SplitResult stratified_split(const DatasetManifest& manifest, const std::vector<std::int64_t>& areas,
                             const SplitConfig& cfg);

// Per tool, max(1, floor(percent * n / 100)) entries drawn without
// replacement, manifest order preserved. 100 returns the input unchanged.
DatasetManifest subset(const DatasetManifest& manifest, int percent, std::uint64_t seed);

struct AugmentSpec {
    double hflip_prob = 0.5;
    double vflip_prob = 0.5;
    double max_rotate_deg = 20.0;
    double max_translate_frac = 0.10;
    std::uint64_t seed = 0;
};

// One concrete geometric transform: flips, then rotation about the image
// center, then translation.
struct AugmentDraw {
    bool hflip = false;
    bool vflip = false;
    double rotate_deg = 0.0;
    double translate_x = 0.0;  // pixels along columns
    double translate_y = 0.0;  // pixels along rows
};

AugmentDraw draw_augmentation(const AugmentSpec& spec, std::uint64_t draw_seed, ImageSize size);

// Image resampled bilinearly, mask by nearest neighbor; uncovered pixels are
// black / background.
std::pair<RgbImage, BinaryMask> apply_augmentation(const RgbImage& image, const BinaryMask& mask,
                                                   const AugmentDraw& draw);

std::pair<RgbImage, BinaryMask> augment_pair(const RgbImage& image, const BinaryMask& mask, const AugmentSpec& spec,
                                             std::uint64_t draw_seed);

}  // namespace wearprompt

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "wearprompt/mask.hpp"

namespace fixtures {

using wearprompt::BinaryMask;

// Rows of '#' (foreground) and '.' (background).
BinaryMask from_ascii(const std::vector<std::string>& rows);
std::string to_ascii(const BinaryMask& mask);

// Independent Bernoulli pixels.
BinaryMask random_noise(std::mt19937_64& rng, int width, int height, double density);

// Union of a few random filled ellipses and rectangles, sized to look like
// wear regions. Never empty.
BinaryMask random_blobs(std::mt19937_64& rng, int width, int height);

// Square canvas with side drawn from [min_side, max_side] holding random blobs.
BinaryMask random_blob_mask(std::mt19937_64& rng, int min_side, int max_side);

BinaryMask filled_rect(int width, int height, int top, int left, int rows, int cols);
// 1-pixel-wide ring between two concentric circles.
BinaryMask ring(int size, double radius);
BinaryMask annulus(int size, double inner, double outer);
BinaryMask disk(int size, double cr, double cc, double radius);

struct NamedMask {
    std::string name;
    BinaryMask mask;
};

// The 30 hand-picked shapes used for oracle equivalence: rings, L and C
// shapes, separated blobs, one-pixel lines, crescents and a few random blobs.
std::vector<NamedMask> shape_catalog();

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fixtures

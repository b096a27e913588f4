#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wearprompt {

// Pixel coordinate, origin top-left, row grows downward. The defaulted
// ordering is row-major, which every tie-break in the library relies on.
struct PixelPoint {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const PixelPoint&, const PixelPoint&) = default;
};

// Real-valued location on the same lattice; pixel (r, c) has center (r, c).
struct RealPoint {
    double row = 0.0;
    double col = 0.0;
};

struct ImageSize {
    int width = 0;
    int height = 0;

    friend bool operator==(const ImageSize&, const ImageSize&) = default;
    bool contains(PixelPoint p) const {
        return p.row >= 0 && p.col >= 0 && p.row < height && p.col < width;
    }
};

// Row-major boolean raster, true = foreground (worn).
class BinaryMask {
public:
    BinaryMask(int width, int height, bool fill = false);
    // `cells` holds width*height entries; any nonzero entry is foreground.
    BinaryMask(int width, int height, std::vector<std::uint8_t> cells);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    ImageSize size() const noexcept { return {width_, height_}; }
    bool in_bounds(PixelPoint p) const noexcept { return size().contains(p); }

    bool at(int row, int col) const { return cells_[index(row, col)] != 0; }
    bool at(PixelPoint p) const { return at(p.row, p.col); }
    // Out-of-bounds reads as background.
    bool at_or_background(int row, int col) const noexcept {
        return row >= 0 && col >= 0 && row < height_ && col < width_ && cells_[index(row, col)] != 0;
    }

    void set(int row, int col, bool value) { cells_[index(row, col)] = value ? 1 : 0; }
    void set(PixelPoint p, bool value) { set(p.row, p.col, value); }

    std::span<const std::uint8_t> cells() const noexcept { return cells_; }
    std::size_t foreground_count() const noexcept;
    bool has_foreground() const noexcept;
    // Foreground pixels in row-major order.
    std::vector<PixelPoint> foreground() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> cells_;
};

// Pre-binarization output of a segmentation model, values in [0, 1].
class GrayMask {
public:
    GrayMask(int width, int height, double fill = 0.0);
    GrayMask(int width, int height, std::vector<double> values);
    static GrayMask from_levels(int width, int height, std::span<const std::uint8_t> levels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    ImageSize size() const noexcept { return {width_, height_}; }
    double at(int row, int col) const {
        return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col)];
    }
    std::span<const double> values() const noexcept { return values_; }

private:
    int width_;
    int height_;
    std::vector<double> values_;
};

enum class Connectivity { Four, Eight };

enum class StructuringElement { Cross3, Square3 };

struct ComponentLabels {
    int width = 0;
    int height = 0;
    // 0 = background, 1..count = component id, numbered in raster order of
    // each component's first pixel.
    std::vector<int> labels;
    int count = 0;

    int at(PixelPoint p) const {
        return labels[static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(p.col)];
    }
};

inline constexpr double kDefaultGrayThreshold = 0.5;

BinaryMask binarize(const GrayMask& gray, double threshold = kDefaultGrayThreshold);

ComponentLabels connected_components(const BinaryMask& mask, Connectivity connectivity);

// Pixel lists of every component, indexed by label - 1, each in row-major order.
std::vector<std::vector<PixelPoint>> component_pixels(const BinaryMask& mask, Connectivity connectivity);

// Foreground pixels with at least one 4-neighbor that is background or
// outside the image, row-major.
std::vector<PixelPoint> contour_pixels(const BinaryMask& mask);

BinaryMask erode(const BinaryMask& mask, StructuringElement se);

// Throws PreconditionError on an empty set.
RealPoint centroid(std::span<const PixelPoint> pixels);

bool is_subset(const BinaryMask& inner, const BinaryMask& outer);
BinaryMask complement(const BinaryMask& mask);
BinaryMask mask_from_pixels(ImageSize size, std::span<const PixelPoint> pixels);

}  // namespace wearprompt

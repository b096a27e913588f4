#include "wearprompt/mask.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wearprompt/error.hpp"

namespace wearprompt {
namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw Error(ErrorKind::Dimension,
                    "mask dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
    }
}

std::size_t area(int width, int height) {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

constexpr std::array<PixelPoint, 4> kFourOffsets{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};
constexpr std::array<PixelPoint, 8> kEightOffsets{{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};

std::span<const PixelPoint> neighbor_offsets(Connectivity connectivity) {
    if (connectivity == Connectivity::Four) {
        return kFourOffsets;
    }
    return kEightOffsets;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    cells_.assign(area(width, height), fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
    check_dimensions(width, height);
    if (cells_.size() != area(width, height)) {
        throw Error(ErrorKind::Dimension, "mask data has " + std::to_string(cells_.size()) + " cells, expected " +
                                              std::to_string(area(width, height)));
    }
    for (auto& c : cells_) {
        c = c != 0 ? 1 : 0;
    }
}

std::size_t BinaryMask::foreground_count() const noexcept {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool BinaryMask::has_foreground() const noexcept {
    return std::find(cells_.begin(), cells_.end(), std::uint8_t{1}) != cells_.end();
}

std::vector<PixelPoint> BinaryMask::foreground() const {
    std::vector<PixelPoint> out;
    for (int r = 0; r < height_; ++r) {
        for (int c = 0; c < width_; ++c) {
            if (at(r, c)) {
                out.push_back({r, c});
            }
        }
    }
    return out;
}

GrayMask::GrayMask(int width, int height, double fill)
    : GrayMask(width, height, std::vector<double>(area(std::max(width, 0), std::max(height, 0)), fill)) {}

GrayMask::GrayMask(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dimensions(width, height);
    if (values_.size() != area(width, height)) {
        throw Error(ErrorKind::Dimension, "gray mask has " + std::to_string(values_.size()) + " values, expected " +
                                              std::to_string(area(width, height)));
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorKind::Precondition, "gray mask value " + std::to_string(v) + " outside [0, 1]");
        }
    }
}

GrayMask GrayMask::from_levels(int width, int height, std::span<const std::uint8_t> levels) {
    std::vector<double> values(levels.size());
    std::transform(levels.begin(), levels.end(), values.begin(), [](std::uint8_t v) { return v / 255.0; });
    return GrayMask(width, height, std::move(values));
}

BinaryMask binarize(const GrayMask& gray, double threshold) {
    const auto values = gray.values();
    std::vector<std::uint8_t> cells(values.size());
    std::transform(values.begin(), values.end(), cells.begin(), [threshold](double v) { return v >= threshold ? 1 : 0; });
    return BinaryMask(gray.width(), gray.height(), std::move(cells));
}

ComponentLabels connected_components(const BinaryMask& mask, Connectivity connectivity) {
    ComponentLabels out;
    out.width = mask.width();
    out.height = mask.height();
    out.labels.assign(area(mask.width(), mask.height()), 0);

    const auto offsets = neighbor_offsets(connectivity);
    std::vector<PixelPoint> stack;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            const std::size_t idx = area(mask.width(), r) + static_cast<std::size_t>(c);
            if (!mask.at(r, c) || out.labels[idx] != 0) {
                continue;
            }
            const int label = ++out.count;
            out.labels[idx] = label;
            stack.push_back({r, c});
            while (!stack.empty()) {
                const PixelPoint p = stack.back();
                stack.pop_back();
                for (const auto& d : offsets) {
                    const PixelPoint q{p.row + d.row, p.col + d.col};
                    if (!mask.at_or_background(q.row, q.col)) {
                        continue;
                    }
                    const std::size_t qi = area(mask.width(), q.row) + static_cast<std::size_t>(q.col);
                    if (out.labels[qi] == 0) {
                        out.labels[qi] = label;
                        stack.push_back(q);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::vector<PixelPoint>> component_pixels(const BinaryMask& mask, Connectivity connectivity) {
    const auto labels = connected_components(mask, connectivity);
    std::vector<std::vector<PixelPoint>> out(static_cast<std::size_t>(labels.count));
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            const int label = labels.at({r, c});
            if (label != 0) {
                out[static_cast<std::size_t>(label - 1)].push_back({r, c});
            }
        }
    }
    return out;
}

std::vector<PixelPoint> contour_pixels(const BinaryMask& mask) {
    std::vector<PixelPoint> out;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (!mask.at(r, c)) {
                continue;
            }
            const bool interior = mask.at_or_background(r - 1, c) && mask.at_or_background(r + 1, c) &&
                                  mask.at_or_background(r, c - 1) && mask.at_or_background(r, c + 1);
            if (!interior) {
                out.push_back({r, c});
            }
        }
    }
    return out;
}

BinaryMask erode(const BinaryMask& mask, StructuringElement se) {
    const auto offsets = se == StructuringElement::Square3 ? neighbor_offsets(Connectivity::Eight)
                                                           : neighbor_offsets(Connectivity::Four);
    BinaryMask out(mask.width(), mask.height());
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (!mask.at(r, c)) {
                continue;
            }
            const bool keep = std::all_of(offsets.begin(), offsets.end(), [&](const PixelPoint& d) {
                return mask.at_or_background(r + d.row, c + d.col);
            });
            if (keep) {
                out.set(r, c, true);
            }
        }
    }
    return out;
}

RealPoint centroid(std::span<const PixelPoint> pixels) {
    if (pixels.empty()) {
        throw Error(ErrorKind::Precondition, "centroid of an empty pixel set");
    }
    // Integer sums are exact up to ~2^53 / 1024 pixels, far beyond any mask.
    long long rows = 0;
    long long cols = 0;
    for (const auto& p : pixels) {
        rows += p.row;
        cols += p.col;
    }
    const auto n = static_cast<double>(pixels.size());
    return {static_cast<double>(rows) / n, static_cast<double>(cols) / n};
}

bool is_subset(const BinaryMask& inner, const BinaryMask& outer) {
    if (inner.size() != outer.size()) {
        throw Error(ErrorKind::Dimension, "subset test on masks of different dimensions");
    }
    const auto a = inner.cells();
    const auto b = outer.cells();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] == 0) {
            return false;
        }
    }
    return true;
}

BinaryMask complement(const BinaryMask& mask) {
    std::vector<std::uint8_t> cells(mask.cells().begin(), mask.cells().end());
    for (auto& c : cells) {
        c = c != 0 ? 0 : 1;
    }
    return BinaryMask(mask.width(), mask.height(), std::move(cells));
}

BinaryMask mask_from_pixels(ImageSize size, std::span<const PixelPoint> pixels) {
    BinaryMask out(size.width, size.height);
    for (const auto& p : pixels) {
        out.set(p, true);
    }
    return out;
}

}  // namespace wearprompt

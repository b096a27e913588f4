#include "wearprompt/poi.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>

#include "wearprompt/error.hpp"
#include "wearprompt/line.hpp"

namespace wearprompt {
namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

// Centroid kept as exact integer sums so that rounding and distance ties are
// decided without floating-point error.
struct ExactCentroid {
    long long row_sum = 0;
    long long col_sum = 0;
    long long count = 0;

    static ExactCentroid of(const std::vector<PixelPoint>& pixels) {
        ExactCentroid c;
        for (const auto& p : pixels) {
            c.row_sum += p.row;
            c.col_sum += p.col;
        }
        c.count = static_cast<long long>(pixels.size());
        return c;
    }

    // ceil(v - 1/2) with v = sum / count, i.e. floor((2 sum + count - 1) / (2 count)).
    PixelPoint rounded() const {
        auto axis = [this](long long sum) {
            return static_cast<int>(floor_div(2 * sum + count - 1, 2 * count));
        };
        return {axis(row_sum), axis(col_sum)};
    }

    // Squared distance scaled by count^2, exact in 64-bit for 1024x1024 masks.
    long long scaled_distance2(PixelPoint p) const {
        const long long dr = count * p.row - row_sum;
        const long long dc = count * p.col - col_sum;
        return dr * dr + dc * dc;
    }
};

// Nearest candidate to the centroid; candidates are row-major so the first
// strict minimum is the row-major tie-break.
PixelPoint nearest_to(const std::vector<PixelPoint>& candidates, const ExactCentroid& target) {
    PixelPoint best = candidates.front();
    long long best_d = std::numeric_limits<long long>::max();
    for (const auto& p : candidates) {
        const long long d = target.scaled_distance2(p);
        if (d < best_d) {
            best_d = d;
            best = p;
        }
    }
    return best;
}

PixelPoint nearest_to(const std::vector<PixelPoint>& candidates, PixelPoint target) {
    ExactCentroid c{target.row, target.col, 1};
    return nearest_to(candidates, c);
}

// One connected region, isolated from the rest of the mask. Pixels outside
// the bounding box read as background.
class Segment {
public:
    Segment(std::vector<PixelPoint> pixels, ImageSize image)
        : pixels_(std::move(pixels)), image_(image), local_(1, 1) {
        min_ = max_ = pixels_.front();
        for (const auto& p : pixels_) {
            min_.row = std::min(min_.row, p.row);
            min_.col = std::min(min_.col, p.col);
            max_.row = std::max(max_.row, p.row);
            max_.col = std::max(max_.col, p.col);
        }
        local_ = BinaryMask(max_.col - min_.col + 1, max_.row - min_.row + 1);
        for (const auto& p : pixels_) {
            local_.set(p.row - min_.row, p.col - min_.col, true);
        }
    }

    const std::vector<PixelPoint>& pixels() const { return pixels_; }
    ImageSize image() const { return image_; }
    PixelPoint min_corner() const { return min_; }
    PixelPoint max_corner() const { return max_; }
    const BinaryMask& local() const { return local_; }

    bool contains(PixelPoint p) const { return local_.at_or_background(p.row - min_.row, p.col - min_.col); }

    std::vector<PixelPoint> to_global(std::vector<PixelPoint> local_points) const {
        for (auto& p : local_points) {
            p.row += min_.row;
            p.col += min_.col;
        }
        return local_points;
    }

    std::vector<PixelPoint> contour() const { return to_global(contour_pixels(local_)); }

private:
    std::vector<PixelPoint> pixels_;
    ImageSize image_;
    PixelPoint min_;
    PixelPoint max_;
    BinaryMask local_;
};

std::vector<Segment> segments_of(const BinaryMask& mask, Connectivity connectivity) {
    std::vector<Segment> out;
    for (auto& pixels : component_pixels(mask, connectivity)) {
        out.emplace_back(std::move(pixels), mask.size());
    }
    return out;
}

void require_foreground(const BinaryMask& mask) {
    if (!mask.has_foreground()) {
        throw Error(ErrorKind::EmptyInput, "mask has no foreground pixels");
    }
}

void append_unique(std::vector<PixelPoint>& out, std::set<PixelPoint>& seen, PixelPoint p) {
    if (seen.insert(p).second) {
        out.push_back(p);
    }
}

// `pixels` is row-major.
PixelPoint snap_to(const std::vector<PixelPoint>& pixels) {
    const auto c = ExactCentroid::of(pixels);
    const PixelPoint rounded = c.rounded();
    if (std::binary_search(pixels.begin(), pixels.end(), rounded)) {
        return rounded;
    }
    return nearest_to(pixels, c);
}

void ms_segment(const Segment& segment, const PoiConfig& cfg, std::vector<PixelPoint>& out,
                std::set<PixelPoint>& seen) {
    BinaryMask current = segment.local();
    while (true) {
        BinaryMask next = erode(current, cfg.se_shape);
        if (!next.has_foreground()) {
            break;
        }
        current = std::move(next);
    }
    const auto survivors = segment.to_global(current.foreground());
    if (cfg.ms_all_pixels) {
        for (const auto& p : survivors) {
            append_unique(out, seen, p);
        }
        return;
    }
    append_unique(out, seen, snap_to(survivors));
}

PixelPoint coga_segment(const Segment& segment) {
    const auto c = ExactCentroid::of(segment.pixels());
    const PixelPoint rounded = c.rounded();
    if (segment.contains(rounded)) {
        return rounded;
    }
    const PixelPoint p1 = nearest_to(segment.contour(), c);
    const auto ray = bresenham_ray(rounded, p1, segment.image());
    auto it = std::find(ray.begin(), ray.end(), p1);
    PixelPoint p2 = p1;
    for (++it; it != ray.end() && segment.contains(*it); ++it) {
        p2 = *it;
    }
    const PixelPoint mid{static_cast<int>(floor_div(p1.row + p2.row, 2)),
                         static_cast<int>(floor_div(p1.col + p2.col, 2))};
    if (segment.contains(mid)) {
        return mid;
    }
    return nearest_to(segment.pixels(), mid);
}

void rcoga_segment(const Segment& segment, int depth, const PoiConfig& cfg, std::vector<PixelPoint>& out,
                   std::set<PixelPoint>& seen) {
    const auto c = ExactCentroid::of(segment.pixels());
    const PixelPoint rounded = c.rounded();
    if (segment.contains(rounded)) {
        append_unique(out, seen, rounded);
        return;
    }
    if (depth <= 0 || static_cast<int>(segment.pixels().size()) < cfg.min_segment_area) {
        append_unique(out, seen, coga_segment(segment));
        return;
    }
    const PixelPoint contour_point = nearest_to(segment.contour(), c);
    BinaryMask remainder = segment.local();
    const PixelPoint origin = segment.min_corner();
    for (const auto& p : bresenham_infinite_line(rounded, contour_point, segment.min_corner(), segment.max_corner())) {
        remainder.set(p.row - origin.row, p.col - origin.col, false);
    }
    auto pieces = component_pixels(remainder, cfg.connectivity);
    if (pieces.empty()) {
        append_unique(out, seen, coga_segment(segment));
        return;
    }
    for (auto& piece : pieces) {
        rcoga_segment(Segment(segment.to_global(std::move(piece)), segment.image()), depth - 1, cfg, out, seen);
    }
}

}  // namespace

std::string_view to_string(PoiMethod method) {
    switch (method) {
    case PoiMethod::MS: return "MS";
    case PoiMethod::CoGA: return "CoGA";
    case PoiMethod::RCoGA: return "RCoGA";
    }
    return "unknown";
}

PoiMethod parse_poi_method(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "ms") return PoiMethod::MS;
    if (lower == "coga") return PoiMethod::CoGA;
    if (lower == "rcoga") return PoiMethod::RCoGA;
    throw Error(ErrorKind::Config, "unknown PoI method '" + std::string(text) + "' (expected ms, coga or rcoga)");
}

void PoiConfig::validate() const {
    if (max_depth < 1) throw Error(ErrorKind::Config, "max_depth must be >= 1");
    if (min_segment_area < 1) throw Error(ErrorKind::Config, "min_segment_area must be >= 1");
    if (neg_distance < 1) throw Error(ErrorKind::Config, "neg_distance must be >= 1");
}

PixelPoint round_half_down(RealPoint p) {
    return {static_cast<int>(std::ceil(p.row - 0.5)), static_cast<int>(std::ceil(p.col - 0.5))};
}

std::vector<PixelPoint> poi_ms(const BinaryMask& mask, const PoiConfig& cfg) {
    require_foreground(mask);
    std::vector<PixelPoint> out;
    std::set<PixelPoint> seen;
    for (const auto& segment : segments_of(mask, cfg.connectivity)) {
        ms_segment(segment, cfg, out, seen);
    }
    return out;
}

std::vector<PixelPoint> poi_coga(const BinaryMask& mask, const PoiConfig& cfg) {
    require_foreground(mask);
    std::vector<PixelPoint> out;
    std::set<PixelPoint> seen;
    for (const auto& segment : segments_of(mask, cfg.connectivity)) {
        append_unique(out, seen, coga_segment(segment));
    }
    return out;
}

std::vector<PixelPoint> poi_rcoga(const BinaryMask& mask, const PoiConfig& cfg) {
    require_foreground(mask);
    cfg.validate();
    std::vector<PixelPoint> out;
    std::set<PixelPoint> seen;
    for (const auto& segment : segments_of(mask, cfg.connectivity)) {
        rcoga_segment(segment, cfg.max_depth, cfg, out, seen);
    }
    return out;
}

std::vector<PixelPoint> gen_negatives(const BinaryMask& mask, const std::vector<PixelPoint>& positives,
                                      const PoiConfig& cfg) {
    if (cfg.neg_distance < 1) {
        throw Error(ErrorKind::Config, "neg_distance must be >= 1");
    }
    // +col, -col, +row, -row
    constexpr std::array<PixelPoint, 4> kDirections{{{0, 1}, {0, -1}, {1, 0}, {-1, 0}}};
    std::vector<PixelPoint> out;
    std::set<PixelPoint> seen;
    for (const auto& p : positives) {
        if (!mask.in_bounds(p) || !mask.at(p)) {
            throw Error(ErrorKind::Precondition, "positive point (" + std::to_string(p.row) + ", " +
                                                     std::to_string(p.col) + ") is not a foreground pixel");
        }
        for (const auto& d : kDirections) {
            PixelPoint edge = p;
            while (mask.at_or_background(edge.row + d.row, edge.col + d.col)) {
                edge = {edge.row + d.row, edge.col + d.col};
            }
            const PixelPoint candidate{edge.row + cfg.neg_distance * d.row, edge.col + cfg.neg_distance * d.col};
            if (!mask.in_bounds(candidate) || mask.at(candidate)) {
                continue;
            }
            append_unique(out, seen, candidate);
        }
    }
    return out;
}

PromptPoints generate_prompt_points(const BinaryMask& mask, const PoiConfig& cfg) {
    cfg.validate();
    require_foreground(mask);
    PromptPoints points;
    switch (cfg.method) {
    case PoiMethod::MS: points.positives = poi_ms(mask, cfg); break;
    case PoiMethod::CoGA: points.positives = poi_coga(mask, cfg); break;
    case PoiMethod::RCoGA: points.positives = poi_rcoga(mask, cfg); break;
    }
    points.negatives = gen_negatives(mask, points.positives, cfg);
    return points;
}

}  // namespace wearprompt

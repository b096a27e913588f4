#include "wearprompt/line.hpp"

#include <algorithm>
#include <cstdlib>

#include "wearprompt/error.hpp"

namespace wearprompt {

std::vector<PixelPoint> bresenham_line(PixelPoint from, PixelPoint to) {
    std::vector<PixelPoint> out;
    const int dr = std::abs(to.row - from.row);
    const int dc = std::abs(to.col - from.col);
    const int step_r = to.row >= from.row ? 1 : -1;
    const int step_c = to.col >= from.col ? 1 : -1;
    out.reserve(static_cast<std::size_t>(std::max(dr, dc)) + 1);

    int r = from.row;
    int c = from.col;
    out.push_back({r, c});
    if (dc >= dr) {
        int err = 2 * dr - dc;
        while (c != to.col) {
            if (err > 0) {
                r += step_r;
                err -= 2 * dc;
            }
            c += step_c;
            err += 2 * dr;
            out.push_back({r, c});
        }
    } else {
        int err = 2 * dc - dr;
        while (r != to.row) {
            if (err > 0) {
                c += step_c;
                err -= 2 * dr;
            }
            r += step_r;
            err += 2 * dc;
            out.push_back({r, c});
        }
    }
    return out;
}

namespace {

// Smallest multiplier that carries a step of `d` past `extent` pixels.
int span_multiplier(PixelPoint d, int extent) {
    const int major = std::max(std::abs(d.row), std::abs(d.col));
    return extent / major + 2;
}

}  // namespace

std::vector<PixelPoint> bresenham_ray(PixelPoint from, PixelPoint through, ImageSize bounds) {
    const PixelPoint d{through.row - from.row, through.col - from.col};
    if (d.row == 0 && d.col == 0) {
        throw Error(ErrorKind::Precondition, "ray direction is undefined for identical points");
    }
    const int k = span_multiplier(d, std::max(bounds.width, bounds.height));
    const PixelPoint far{from.row + k * d.row, from.col + k * d.col};
    auto pixels = bresenham_line(from, far);
    const auto exit = std::find_if(pixels.begin(), pixels.end(), [&](PixelPoint p) { return !bounds.contains(p); });
    pixels.erase(exit, pixels.end());
    return pixels;
}

std::vector<PixelPoint> bresenham_infinite_line(PixelPoint a, PixelPoint b, PixelPoint min_corner,
                                                PixelPoint max_corner) {
    const PixelPoint d{b.row - a.row, b.col - a.col};
    if (d.row == 0 && d.col == 0) {
        throw Error(ErrorKind::Precondition, "line direction is undefined for identical points");
    }
    const int extent = std::max({max_corner.row - min_corner.row, max_corner.col - min_corner.col,
                                 std::abs(a.row - min_corner.row), std::abs(a.col - min_corner.col),
                                 std::abs(a.row - max_corner.row), std::abs(a.col - max_corner.col)}) +
                       1;
    const int k = span_multiplier(d, extent);
    const PixelPoint start{a.row - k * d.row, a.col - k * d.col};
    const PixelPoint end{a.row + k * d.row, a.col + k * d.col};
    std::vector<PixelPoint> out;
    for (const auto& p : bresenham_line(start, end)) {
        if (p.row >= min_corner.row && p.row <= max_corner.row && p.col >= min_corner.col && p.col <= max_corner.col) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace wearprompt

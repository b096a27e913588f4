#pragma once

#include <vector>

#include "wearprompt/mask.hpp"

namespace wearprompt {

// Integer Bresenham rasterization from `from` to `to`, both endpoints
// included. Every lattice point lying exactly on the ideal segment appears in
// the output.
std::vector<PixelPoint> bresenham_line(PixelPoint from, PixelPoint to);

// Pixels of the ray starting at `from`, passing through `through` and
// continuing until it leaves `bounds`. `from` must differ from `through`.
std::vector<PixelPoint> bresenham_ray(PixelPoint from, PixelPoint through, ImageSize bounds);

// Pixels of the infinite line through `a` and `b` restricted to the box
// [min_corner, max_corner] (inclusive), ordered from the `a`-behind side to
// the `b`-beyond side.
std::vector<PixelPoint> bresenham_infinite_line(PixelPoint a, PixelPoint b, PixelPoint min_corner,
                                                PixelPoint max_corner);

}  // namespace wearprompt

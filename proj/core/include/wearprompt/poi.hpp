#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wearprompt/mask.hpp"

namespace wearprompt {

enum class PoiMethod { MS, CoGA, RCoGA };

std::string_view to_string(PoiMethod method);
// Case-insensitive "ms" | "coga" | "rcoga"; throws ConfigError otherwise.
PoiMethod parse_poi_method(std::string_view text);

struct PoiConfig {
    PoiMethod method = PoiMethod::RCoGA;
    StructuringElement se_shape = StructuringElement::Square3;
    // Emit every pixel of the last nonempty erosion instead of one point.
    bool ms_all_pixels = false;
    int max_depth = 3;
    int min_segment_area = 8;
    int neg_distance = 10;
    Connectivity connectivity = Connectivity::Eight;

    // Throws ConfigError when a numeric field is below 1.
    void validate() const;
};

struct PromptPoints {
    std::vector<PixelPoint> positives;
    std::vector<PixelPoint> negatives;

    friend bool operator==(const PromptPoints&, const PromptPoints&) = default;
};

// Round-half-down on each axis: ties go to the smaller index.
PixelPoint round_half_down(RealPoint p);

// Mask shrink: per component, erode until the next erosion would empty it
// and snap the centroid of the survivors onto a surviving pixel.
std::vector<PixelPoint> poi_ms(const BinaryMask& mask, const PoiConfig& cfg);

// Center-of-gravity adjustment, one positive per component.
std::vector<PixelPoint> poi_coga(const BinaryMask& mask, const PoiConfig& cfg);

// Recursive center-of-gravity adjustment: components whose centroid falls
// outside are cut along the centroid/contour line and processed again.
std::vector<PixelPoint> poi_rcoga(const BinaryMask& mask, const PoiConfig& cfg);

// Four axis-aligned extrapolations per positive, beyond the foreground run.
std::vector<PixelPoint> gen_negatives(const BinaryMask& mask, const std::vector<PixelPoint>& positives,
                                      const PoiConfig& cfg);

PromptPoints generate_prompt_points(const BinaryMask& mask, const PoiConfig& cfg);

}  // namespace wearprompt

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "wearprompt/image_io.hpp"
#include "wearprompt/mask.hpp"

namespace wearprompt {

struct PixelCounts {
    std::int64_t intersection = 0;
    std::int64_t pred_only = 0;
    std::int64_t truth_only = 0;
    std::int64_t background = 0;

    std::int64_t total() const noexcept { return intersection + pred_only + truth_only + background; }
    friend bool operator==(const PixelCounts&, const PixelCounts&) = default;
};

// `eq1` is 2|P∩T| / (|P| + |T|) (the Dice form that segmentation literature
// often labels IoU); `jaccard` is |P∩T| / |P∪T|. Both are 1 when P and T are
// empty.
struct ScoreSet {
    double eq1 = 0.0;
    double jaccard = 0.0;
    PixelCounts counts;

    friend bool operator==(const ScoreSet&, const ScoreSet&) = default;
};

ScoreSet score(const BinaryMask& pred, const BinaryMask& truth);
ScoreSet score_from_counts(const PixelCounts& counts);

enum class OverlayCategory : std::uint8_t { Background = 0, Correct = 1, PredOnly = 2, Missed = 3 };

struct OverlayGrid {
    int width = 0;
    int height = 0;
    std::vector<OverlayCategory> cells;

    PixelCounts counts() const;
};

OverlayGrid overlay(const BinaryMask& pred, const BinaryMask& truth);
// correct = green, pred-only = red, missed = yellow, background = black.
RgbImage render_overlay(const OverlayGrid& grid);

inline constexpr double kDefaultLossEpsilon = 1e-7;

struct LossTerms {
    double bce = 0.0;
    double overlap = 0.0;
    double total = 0.0;
};

// Soft Dice form 2Σyg / Σ(y+g) on probabilities clamped to [eps, 1-eps].
double soft_eq1(const GrayMask& pred_prob, const BinaryMask& truth, double epsilon = kDefaultLossEpsilon);

// Summed binary cross-entropy plus (1 - soft_eq1), on the same clamped grid.
LossTerms composite_loss(const GrayMask& pred_prob, const BinaryMask& truth, double epsilon = kDefaultLossEpsilon);

}  // namespace wearprompt

#include "wearprompt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wearprompt/error.hpp"

namespace wearprompt {
namespace {

void require_same_size(ImageSize a, ImageSize b, const char* what) {
    if (a != b) {
        throw Error(ErrorKind::Dimension, std::string(what) + ": dimension mismatch " + std::to_string(a.width) +
                                              "x" + std::to_string(a.height) + " vs " + std::to_string(b.width) +
                                              "x" + std::to_string(b.height));
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw Error(ErrorKind::Precondition, "epsilon must lie in (0, 0.5)");
    }
}

}  // namespace

ScoreSet score_from_counts(const PixelCounts& counts) {
    ScoreSet s;
    s.counts = counts;
    const std::int64_t pred = counts.intersection + counts.pred_only;
    const std::int64_t truth = counts.intersection + counts.truth_only;
    const std::int64_t uni = counts.intersection + counts.pred_only + counts.truth_only;
    if (uni == 0) {
        s.eq1 = 1.0;
        s.jaccard = 1.0;
        return s;
    }
    s.eq1 = 2.0 * static_cast<double>(counts.intersection) / static_cast<double>(pred + truth);
    s.jaccard = static_cast<double>(counts.intersection) / static_cast<double>(uni);
    return s;
}

ScoreSet score(const BinaryMask& pred, const BinaryMask& truth) {
    require_same_size(pred.size(), truth.size(), "score");
    PixelCounts counts;
    const auto p = pred.cells();
    const auto t = truth.cells();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0 && t[i] != 0) {
            ++counts.intersection;
        } else if (p[i] != 0) {
            ++counts.pred_only;
        } else if (t[i] != 0) {
            ++counts.truth_only;
        } else {
            ++counts.background;
        }
    }
    return score_from_counts(counts);
}

PixelCounts OverlayGrid::counts() const {
    PixelCounts out;
    for (auto c : cells) {
        switch (c) {
        case OverlayCategory::Correct: ++out.intersection; break;
        case OverlayCategory::PredOnly: ++out.pred_only; break;
        case OverlayCategory::Missed: ++out.truth_only; break;
        case OverlayCategory::Background: ++out.background; break;
        }
    }
    return out;
}

OverlayGrid overlay(const BinaryMask& pred, const BinaryMask& truth) {
    require_same_size(pred.size(), truth.size(), "overlay");
    OverlayGrid grid{pred.width(), pred.height(), {}};
    grid.cells.reserve(pred.cells().size());
    const auto p = pred.cells();
    const auto t = truth.cells();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0) {
            grid.cells.push_back(t[i] != 0 ? OverlayCategory::Correct : OverlayCategory::PredOnly);
        } else {
            grid.cells.push_back(t[i] != 0 ? OverlayCategory::Missed : OverlayCategory::Background);
        }
    }
    return grid;
}

RgbImage render_overlay(const OverlayGrid& grid) {
    RgbImage image(grid.width, grid.height);
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        std::uint8_t* px = image.pixels.data() + 3 * i;
        switch (grid.cells[i]) {
        case OverlayCategory::Correct: px[1] = 255; break;
        case OverlayCategory::PredOnly: px[0] = 255; break;
        case OverlayCategory::Missed: px[0] = 255; px[1] = 255; break;
        case OverlayCategory::Background: break;
        }
    }
    return image;
}

double soft_eq1(const GrayMask& pred_prob, const BinaryMask& truth, double epsilon) {
    require_same_size(pred_prob.size(), truth.size(), "soft_eq1");
    check_epsilon(epsilon);
    const auto y = pred_prob.values();
    const auto g = truth.cells();
    double inter = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double yi = std::clamp(y[i], epsilon, 1.0 - epsilon);
        const double gi = g[i] != 0 ? 1.0 : 0.0;
        inter += yi * gi;
        sum += yi + gi;
    }
    return 2.0 * inter / sum;
}

LossTerms composite_loss(const GrayMask& pred_prob, const BinaryMask& truth, double epsilon) {
    require_same_size(pred_prob.size(), truth.size(), "composite_loss");
    check_epsilon(epsilon);
    const auto y = pred_prob.values();
    const auto g = truth.cells();
    double bce = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double yi = std::clamp(y[i], epsilon, 1.0 - epsilon);
        bce -= g[i] != 0 ? std::log(yi) : std::log(1.0 - yi);
    }
    LossTerms terms;
    terms.bce = bce;
    terms.overlap = 1.0 - soft_eq1(pred_prob, truth, epsilon);
    terms.total = terms.bce + terms.overlap;
    return terms;
}

}  // namespace wearprompt

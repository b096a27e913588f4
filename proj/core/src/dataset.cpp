#include "wearprompt/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "random.hpp"
#include "wearprompt/error.hpp"

namespace wearprompt {
namespace {

constexpr const char* kManifestHeader[] = {"image_path", "label_path", "tool_id"};

DatasetManifest pick(const DatasetManifest& manifest, const std::vector<bool>& keep) {
    DatasetManifest out;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        if (keep[i]) {
            out.entries.push_back(manifest.entries[i]);
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> DatasetManifest::tools() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (seen.insert(e.tool_id).second) {
            out.push_back(e.tool_id);
        }
    }
    return out;
}

std::map<std::string, int> DatasetManifest::tool_counts() const {
    std::map<std::string, int> out;
    for (const auto& e : entries) {
        ++out[e.tool_id];
    }
    return out;
}

DatasetManifest parse_manifest(const std::string& csv) {
    std::string_view text = csv;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    const auto rows = detail::parse_csv(text);
    if (rows.empty()) {
        throw Error(ErrorKind::Parse, "manifest: missing header");
    }
    const auto& header = rows.front();
    if (header.size() != 3 || header[0] != kManifestHeader[0] || header[1] != kManifestHeader[1] ||
        header[2] != kManifestHeader[2]) {
        throw Error(ErrorKind::Parse, "manifest: header must be image_path,label_path,tool_id");
    }
    DatasetManifest manifest;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 3) {
            throw Error(ErrorKind::Parse, "manifest row " + std::to_string(i) + ": expected 3 fields, got " +
                                              std::to_string(row.size()));
        }
        if (row[2].empty()) {
            throw Error(ErrorKind::Parse, "manifest row " + std::to_string(i) + ": empty tool_id");
        }
        manifest.entries.push_back({row[0], row[1], row[2]});
    }
    return manifest;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_manifest(buffer.str());
}

std::string serialize_manifest(const DatasetManifest& manifest) {
    std::string out = detail::csv_line({kManifestHeader[0], kManifestHeader[1], kManifestHeader[2]});
    for (const auto& e : manifest.entries) {
        out += detail::csv_line({e.image_path, e.label_path, e.tool_id});
    }
    return out;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << serialize_manifest(manifest);
}

std::vector<std::int64_t> label_areas(const DatasetManifest& manifest, const std::filesystem::path& base_dir) {
    std::vector<std::int64_t> areas;
    areas.reserve(manifest.entries.size());
    for (const auto& e : manifest.entries) {
        const auto label = load_mask(base_dir / e.label_path);
        if (!e.image_path.empty() && std::filesystem::exists(base_dir / e.image_path)) {
            const auto image = load_rgb(base_dir / e.image_path);
            if (image.size() != label.size()) {
                throw Error(ErrorKind::Dimension, "label " + e.label_path + " does not match image " + e.image_path);
            }
        }
        areas.push_back(static_cast<std::int64_t>(label.foreground_count()));
    }
    return areas;
}

SplitResult stratified_split(const DatasetManifest& manifest, const std::vector<std::int64_t>& areas,
                             const SplitConfig& cfg) {
    if (areas.size() != manifest.entries.size()) {
        throw Error(ErrorKind::Precondition, "one area per manifest entry required");
    }
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
        throw Error(ErrorKind::Config, "test_fraction must lie in (0, 1)");
    }
    if (cfg.bins < 2) {
        throw Error(ErrorKind::Config, "bins must be >= 2");
    }
    // Guards the floor of products like 0.2 * 5 against representation error.
    constexpr double kSlack = 1e-9;

    detail::Rng rng(cfg.seed);
    std::vector<bool> in_test(manifest.entries.size(), false);
    for (const auto& tool : manifest.tools()) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
            if (manifest.entries[i].tool_id == tool) members.push_back(i);
        }
        const std::size_t n = members.size();
        const auto bins = static_cast<std::size_t>(cfg.bins);
        if (n < bins) {
            throw Error(ErrorKind::Config, "tool '" + tool + "' has " + std::to_string(n) + " images, fewer than " +
                                               std::to_string(bins) + " bins");
        }
        std::stable_sort(members.begin(), members.end(),
                         [&](std::size_t a, std::size_t b) { return areas[a] < areas[b]; });

        std::vector<std::size_t> bin_start(bins + 1);
        for (std::size_t b = 0; b <= bins; ++b) {
            bin_start[b] = b * n / bins;
        }
        // Largest-remainder apportionment of the tool's test count.
        const auto target = static_cast<std::size_t>(std::floor(cfg.test_fraction * static_cast<double>(n) + 0.5 + kSlack));
        std::vector<std::size_t> quota(bins);
        std::vector<long long> remainder(bins);  // in units of 1e-9
        std::size_t assigned = 0;
        for (std::size_t b = 0; b < bins; ++b) {
            const double exact = cfg.test_fraction * static_cast<double>(bin_start[b + 1] - bin_start[b]);
            quota[b] = static_cast<std::size_t>(std::floor(exact + kSlack));
            remainder[b] = std::llround((exact - static_cast<double>(quota[b])) * 1e9);
            assigned += quota[b];
        }
        std::vector<std::size_t> order(bins);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
        for (std::size_t k = 0; assigned < target && k < bins; ++k) {
            const std::size_t b = order[k];
            if (quota[b] < bin_start[b + 1] - bin_start[b]) {
                ++quota[b];
                ++assigned;
            }
        }

        for (std::size_t b = 0; b < bins; ++b) {
            const std::size_t size = bin_start[b + 1] - bin_start[b];
            for (std::size_t pick_index : rng.sample(size, quota[b])) {
                in_test[members[bin_start[b] + pick_index]] = true;
            }
        }
    }
    std::vector<bool> in_train(in_test.size());
    std::transform(in_test.begin(), in_test.end(), in_train.begin(), [](bool t) { return !t; });
    return {pick(manifest, in_train), pick(manifest, in_test)};
}

DatasetManifest subset(const DatasetManifest& manifest, int percent, std::uint64_t seed) {
    if (manifest.entries.empty()) {
        throw Error(ErrorKind::EmptyInput, "subset of an empty manifest");
    }
    if (percent < 1 || percent > 100) {
        throw Error(ErrorKind::Config, "subset percent must lie in [1, 100], got " + std::to_string(percent));
    }
    if (percent == 100) {
        return manifest;
    }
    detail::Rng rng(seed);
    std::vector<bool> keep(manifest.entries.size(), false);
    for (const auto& tool : manifest.tools()) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
            if (manifest.entries[i].tool_id == tool) members.push_back(i);
        }
        const std::size_t k = std::max<std::size_t>(1, members.size() * static_cast<std::size_t>(percent) / 100);
        for (std::size_t idx : rng.sample(members.size(), k)) {
            keep[members[idx]] = true;
        }
    }
    return pick(manifest, keep);
}

AugmentDraw draw_augmentation(const AugmentSpec& spec, std::uint64_t draw_seed, ImageSize size) {
    detail::Rng rng(spec.seed, draw_seed);
    AugmentDraw draw;
    draw.hflip = rng.uniform01() < spec.hflip_prob;
    draw.vflip = rng.uniform01() < spec.vflip_prob;
    draw.rotate_deg = rng.uniform(-spec.max_rotate_deg, spec.max_rotate_deg);
    draw.translate_x = rng.uniform(-spec.max_translate_frac, spec.max_translate_frac) * size.width;
    draw.translate_y = rng.uniform(-spec.max_translate_frac, spec.max_translate_frac) * size.height;
    return draw;
}

std::pair<RgbImage, BinaryMask> apply_augmentation(const RgbImage& image, const BinaryMask& mask,
                                                   const AugmentDraw& draw) {
    if (image.size() != mask.size()) {
        throw Error(ErrorKind::Dimension, "image and mask dimensions differ");
    }
    const int w = mask.width();
    const int h = mask.height();
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    const double theta = draw.rotate_deg * std::acos(-1.0) / 180.0;
    const double cs = draw.rotate_deg == 0.0 ? 1.0 : std::cos(theta);
    const double sn = draw.rotate_deg == 0.0 ? 0.0 : std::sin(theta);

    // Output pixel -> source coordinate (x = col, y = row).
    auto source = [&](int row, int col) {
        const double x2 = col - draw.translate_x - cx;
        const double y2 = row - draw.translate_y - cy;
        double x1 = cx + cs * x2 + sn * y2;
        double y1 = cy - sn * x2 + cs * y2;
        if (draw.hflip) x1 = (w - 1) - x1;
        if (draw.vflip) y1 = (h - 1) - y1;
        return std::pair{x1, y1};
    };

    RgbImage out_image(w, h);
    BinaryMask out_mask(w, h);
    constexpr double kEdge = 1e-9;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const auto [x, y] = source(r, c);

            const int nc = static_cast<int>(std::floor(x + 0.5));
            const int nr = static_cast<int>(std::floor(y + 0.5));
            if (mask.at_or_background(nr, nc)) {
                out_mask.set(r, c, true);
            }

            if (x < -kEdge || y < -kEdge || x > (w - 1) + kEdge || y > (h - 1) + kEdge) {
                continue;
            }
            const double xc = std::clamp(x, 0.0, static_cast<double>(w - 1));
            const double yc = std::clamp(y, 0.0, static_cast<double>(h - 1));
            const int x0 = static_cast<int>(std::floor(xc));
            const int y0 = static_cast<int>(std::floor(yc));
            const int x1 = std::min(x0 + 1, w - 1);
            const int y1 = std::min(y0 + 1, h - 1);
            const double fx = xc - x0;
            const double fy = yc - y0;
            std::uint8_t* dst = out_image.at(r, c);
            for (int ch = 0; ch < 3; ++ch) {
                const double top = (1.0 - fx) * image.at(y0, x0)[ch] + fx * image.at(y0, x1)[ch];
                const double bottom = (1.0 - fx) * image.at(y1, x0)[ch] + fx * image.at(y1, x1)[ch];
                const double v = (1.0 - fy) * top + fy * bottom;
                dst[ch] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
            }
        }
    }
    return {std::move(out_image), std::move(out_mask)};
}

std::pair<RgbImage, BinaryMask> augment_pair(const RgbImage& image, const BinaryMask& mask, const AugmentSpec& spec,
                                             std::uint64_t draw_seed) {
    if (image.size() != mask.size()) {
        throw Error(ErrorKind::Dimension, "image and mask dimensions differ");
    }
    return apply_augmentation(image, mask, draw_augmentation(spec, draw_seed, mask.size()));
}

}  // namespace wearprompt

#include "wearprompt/prompts.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wearprompt/error.hpp"

namespace wearprompt {
namespace {

using Json = nlohmann::ordered_json;

const Json& require(const Json& object, const std::string& key, const std::string& pointer) {
    const auto it = object.find(key);
    if (it == object.end()) {
        throw ParseError(pointer + "/" + key, "missing field");
    }
    return *it;
}

std::string require_string(const Json& object, const std::string& key, const std::string& pointer) {
    const auto& value = require(object, key, pointer);
    if (!value.is_string()) {
        throw ParseError(pointer + "/" + key, "expected string");
    }
    return value.get<std::string>();
}

int require_int(const Json& object, const std::string& key, const std::string& pointer) {
    const auto& value = require(object, key, pointer);
    if (!value.is_number_integer()) {
        throw ParseError(pointer + "/" + key, "expected integer");
    }
    const auto v = value.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ParseError(pointer + "/" + key, "integer out of range");
    }
    return static_cast<int>(v);
}

void reject_unknown(const Json& object, std::initializer_list<const char*> known, const std::string& pointer) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& item : object.items()) {
        if (allowed.count(item.key()) == 0) {
            throw ParseError(pointer + "/" + item.key(), "unknown field");
        }
    }
}

void check_point(const BundlePoint& p, const std::string& pointer) {
    if (p.label != 0 && p.label != 1) {
        throw Error(ErrorKind::Invariant, pointer + "/label: label must be 0 or 1");
    }
    if (p.x < 0 || p.y < 0) {
        throw Error(ErrorKind::Invariant, pointer + ": negative coordinate");
    }
}

}  // namespace

std::vector<BundlePoint> to_bundle_points(const PromptPoints& points) {
    std::vector<BundlePoint> out;
    out.reserve(points.positives.size() + points.negatives.size());
    for (const auto& p : points.positives) {
        out.push_back({p.col, p.row, 1});
    }
    for (const auto& p : points.negatives) {
        out.push_back({p.col, p.row, 0});
    }
    return out;
}

PromptPoints from_bundle_points(const std::vector<BundlePoint>& points) {
    PromptPoints out;
    for (const auto& p : points) {
        (p.label == 1 ? out.positives : out.negatives).push_back({p.y, p.x});
    }
    return out;
}

BinaryMask maxpool(const BinaryMask& mask, int window) {
    if (window < 1 || mask.width() % window != 0 || mask.height() % window != 0) {
        throw Error(ErrorKind::Dimension, "mask " + std::to_string(mask.width()) + "x" +
                                              std::to_string(mask.height()) + " is not divisible into " +
                                              std::to_string(window) + "x" + std::to_string(window) + " windows");
    }
    BinaryMask out(mask.width() / window, mask.height() / window);
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c)) {
                out.set(r / window, c / window, true);
            }
        }
    }
    return out;
}

BinaryMask downsample_maxpool(const BinaryMask& mask) {
    if (mask.width() != kFullResolution || mask.height() != kFullResolution) {
        throw Error(ErrorKind::Dimension, "downsampling expects 1024x1024, got " + std::to_string(mask.width()) +
                                              "x" + std::to_string(mask.height()));
    }
    return maxpool(mask, kFullResolution / kLowResolution);
}

BinaryMask lowres_prompt_mask(const BinaryMask& mask) {
    if (mask.width() != mask.height() || mask.width() % kLowResolution != 0) {
        throw Error(ErrorKind::Dimension, "mask " + std::to_string(mask.width()) + "x" +
                                              std::to_string(mask.height()) +
                                              " cannot be pooled to 256x256 (expected a square multiple of 256)");
    }
    return maxpool(mask, mask.width() / kLowResolution);
}

void validate_bundle(const PromptBundle& bundle) {
    if (bundle.image_id.empty()) {
        throw Error(ErrorKind::Invariant, "/image_id: must not be empty");
    }
    if (bundle.source.unet_epochs < 0) {
        throw Error(ErrorKind::Invariant, "/source/unet_epochs: must be >= 0");
    }
    if (bundle.source.train_fraction < 0 || bundle.source.train_fraction > 100) {
        throw Error(ErrorKind::Invariant, "/source/train_fraction: must be a percentage");
    }
    for (std::size_t i = 0; i < bundle.points.size(); ++i) {
        check_point(bundle.points[i], "/points/" + std::to_string(i));
    }
}

void validate_bundle(const PromptBundle& bundle, ImageSize image) {
    validate_bundle(bundle);
    for (std::size_t i = 0; i < bundle.points.size(); ++i) {
        const auto& p = bundle.points[i];
        if (!image.contains({p.y, p.x})) {
            throw Error(ErrorKind::Invariant, "/points/" + std::to_string(i) + ": point (x=" + std::to_string(p.x) +
                                                  ", y=" + std::to_string(p.y) + ") outside " +
                                                  std::to_string(image.width) + "x" + std::to_string(image.height));
        }
    }
}

std::string serialize_prompt(const PromptBundle& bundle) {
    Json points = Json::array();
    for (const auto& p : bundle.points) {
        points.push_back(Json{{"x", p.x}, {"y", p.y}, {"label", p.label}});
    }
    const Json doc{
        {"image_id", bundle.image_id},
        {"image_path", bundle.image_path},
        {"points", std::move(points)},
        {"lowres_mask_path", bundle.lowres_mask_path},
        {"source",
         Json{{"method", bundle.source.method},
              {"unet_epochs", bundle.source.unet_epochs},
              {"train_fraction", bundle.source.train_fraction}}},
    };
    return doc.dump(2) + "\n";
}

PromptBundle parse_prompt(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("", "expected a JSON object");
    }
    reject_unknown(doc, {"image_id", "image_path", "points", "lowres_mask_path", "source"}, "");

    PromptBundle bundle;
    bundle.image_id = require_string(doc, "image_id", "");
    bundle.image_path = require_string(doc, "image_path", "");
    const auto& points = require(doc, "points", "");
    if (!points.is_array()) {
        throw ParseError("/points", "expected array");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string pointer = "/points/" + std::to_string(i);
        const auto& item = points[i];
        if (!item.is_object()) {
            throw ParseError(pointer, "expected object");
        }
        reject_unknown(item, {"x", "y", "label"}, pointer);
        BundlePoint p{require_int(item, "x", pointer), require_int(item, "y", pointer),
                      require_int(item, "label", pointer)};
        if (p.label != 0 && p.label != 1) {
            throw ParseError(pointer + "/label", "label must be 0 or 1");
        }
        if (p.x < 0) throw ParseError(pointer + "/x", "negative coordinate");
        if (p.y < 0) throw ParseError(pointer + "/y", "negative coordinate");
        bundle.points.push_back(p);
    }
    bundle.lowres_mask_path = require_string(doc, "lowres_mask_path", "");
    const auto& source = require(doc, "source", "");
    if (!source.is_object()) {
        throw ParseError("/source", "expected object");
    }
    reject_unknown(source, {"method", "unet_epochs", "train_fraction"}, "/source");
    bundle.source.method = require_string(source, "method", "/source");
    bundle.source.unet_epochs = require_int(source, "unet_epochs", "/source");
    bundle.source.train_fraction = require_int(source, "train_fraction", "/source");
    if (bundle.source.unet_epochs < 0) {
        throw ParseError("/source/unet_epochs", "must be >= 0");
    }
    if (bundle.source.train_fraction < 0 || bundle.source.train_fraction > 100) {
        throw ParseError("/source/train_fraction", "must be a percentage");
    }
    if (bundle.image_id.empty()) {
        throw ParseError("/image_id", "must not be empty");
    }
    return bundle;
}

void write_prompt(const PromptBundle& bundle, ImageSize image, const std::filesystem::path& path) {
    validate_bundle(bundle, image);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << serialize_prompt(bundle);
    if (!out) {
        throw Error(ErrorKind::Io, "failed writing " + path.string());
    }
}

PromptBundle read_prompt(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_prompt(buffer.str());
}

}  // namespace wearprompt

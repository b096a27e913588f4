// wearprompt: prompt generation and evaluation for tool-wear segmentation.
//
// Data goes to stdout (JSON or CSV), logs and errors to stderr. Errors are a
// single JSON line; exit status 2 marks a usage error, 1 a processing error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wearprompt/dataset.hpp"
#include "wearprompt/error.hpp"
#include "wearprompt/harness.hpp"
#include "wearprompt/image_io.hpp"
#include "wearprompt/mask.hpp"
#include "wearprompt/metrics.hpp"
#include "wearprompt/poi.hpp"
#include "wearprompt/prompts.hpp"
#include "wearprompt/stats.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace wearprompt;

namespace {

constexpr int kExitProcessing = 1;
constexpr int kExitUsage = 2;

void print_error(std::string_view kind, const std::string& message) {
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

void emit(const Json& doc, const std::string& out_path = {}) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + out_path + " for writing");
    }
    out << text;
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    }
    out << text;
}

Json points_json(const std::vector<PixelPoint>& points) {
    Json arr = Json::array();
    for (const auto& p : points) {
        arr.push_back(Json{{"row", p.row}, {"col", p.col}});
    }
    return arr;
}

Json counts_json(const PixelCounts& c) {
    return Json{{"intersection", c.intersection},
                {"pred_only", c.pred_only},
                {"truth_only", c.truth_only},
                {"background", c.background}};
}

Json score_json(const ScoreSet& s) {
    return Json{{"eq1", s.eq1}, {"jaccard", s.jaccard}, {"counts", counts_json(s.counts)}};
}

Json anova_json(const AnovaResult& a) {
    return Json{{"f_statistic", a.f_statistic},
                {"p_value", a.p_value},
                {"df_between", a.df_between},
                {"df_within", a.df_within}};
}

// PoI flags shared by poi, prompt and the eval subcommands.
struct PoiFlags {
    std::string se = "square";
    bool ms_all_pixels = false;
    int max_depth = 3;
    int min_area = 8;
    int neg_distance = 10;
    int connectivity = 8;

    void attach(CLI::App* cmd) {
        cmd->add_option("--se", se, "MS structuring element")
            ->check(CLI::IsMember({"square", "cross"}))
            ->capture_default_str();
        cmd->add_flag("--ms-all-pixels", ms_all_pixels, "MS: emit every pixel of the final erosion");
        cmd->add_option("--max-depth", max_depth, "RCoGA recursion cap")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--min-area", min_area, "RCoGA minimum sub-segment area (pixels)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--neg-distance", neg_distance, "negative point extrapolation distance (pixels)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--connectivity", connectivity, "component connectivity")
            ->check(CLI::IsMember({4, 8}))
            ->capture_default_str();
    }

    PoiConfig config(PoiMethod method) const {
        PoiConfig cfg;
        cfg.method = method;
        cfg.se_shape = se == "cross" ? StructuringElement::Cross3 : StructuringElement::Square3;
        cfg.ms_all_pixels = ms_all_pixels;
        cfg.max_depth = max_depth;
        cfg.min_segment_area = min_area;
        cfg.neg_distance = neg_distance;
        cfg.connectivity = connectivity == 4 ? Connectivity::Four : Connectivity::Eight;
        return cfg;
    }
};

// Options common to eval-phase1 and eval-phase2.
struct EvalFlags {
    std::string truth_dir;
    std::string image_dir;
    std::string out_dir;
    std::string refiner = "identity";
    std::string manifest;
    int workers = 1;
    int threshold = kDefaultLevelThreshold;
    PoiFlags poi;

    void attach(CLI::App* cmd) {
        cmd->add_option("--truth-dir", truth_dir, "ground-truth masks")->required()->check(CLI::ExistingDirectory);
        cmd->add_option("--image-dir", image_dir, "original images handed to the refiner")
            ->check(CLI::ExistingDirectory);
        cmd->add_option("--out-dir", out_dir, "output directory")->required();
        cmd->add_option("--refiner", refiner, "identity | oracle | external command")->capture_default_str();
        cmd->add_option("--manifest", manifest, "dataset manifest mapping images to tool ids")
            ->check(CLI::ExistingFile);
        cmd->add_option("--workers", workers, "parallel workers")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--threshold", threshold, "coarse mask binarization level")
            ->check(CLI::Range(0, 255))
            ->capture_default_str();
        poi.attach(cmd);
    }

    EvalCommon common(PoiMethod method) const {
        EvalCommon c;
        c.truth_dir = truth_dir;
        if (!image_dir.empty()) c.image_dir = fs::path(image_dir);
        c.out_dir = out_dir;
        c.poi = poi.config(method);
        c.refiner = Refiner::parse(refiner);
        c.workers = workers;
        c.threshold = threshold;
        if (!manifest.empty()) c.tool_of = tool_map_from_manifest(manifest);
        return c;
    }
};

void finish_sweep(const SweepReport& report, const std::string& out_dir) {
    emit_report(report, out_dir);
    std::cerr << "wrote " << report.records.size() << " records, " << report.failures.size() << " failures to "
              << out_dir << std::endl;
    std::cout << summary_csv(report);
}

std::vector<std::vector<double>> read_groups(const std::string& input, std::vector<std::string>& names) {
    std::stringstream buffer;
    if (input == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw Error(ErrorKind::Io, "cannot open " + input);
        buffer << in.rdbuf();
    }
    std::map<std::string, std::size_t> index;
    std::vector<std::vector<double>> groups;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(buffer, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "group,value") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected group,value");
        }
        const std::string name = line.substr(0, comma);
        double value = 0.0;
        try {
            const std::string field = line.substr(comma + 1);
            std::size_t used = 0;
            value = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad value");
        }
        auto [it, inserted] = index.emplace(name, groups.size());
        if (inserted) {
            groups.emplace_back();
            names.push_back(name);
        }
        groups[it->second].push_back(value);
    }
    return groups;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wearprompt: point-prompt generation and evaluation for tool-wear segmentation", "wearprompt"};
    app.require_subcommand(1);
    app.fallthrough();

    const char* env_config = std::getenv("WEARPROMPT_CONFIG");
    app.set_config("--config", env_config != nullptr ? env_config : "",
                   "key=value config file (default: $WEARPROMPT_CONFIG)");
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for every stochastic operation")->capture_default_str();

    // binarize
    auto* binarize_cmd = app.add_subcommand("binarize", "threshold a probability mask");
    std::string bin_in, bin_out;
    double bin_threshold = kDefaultGrayThreshold;
    binarize_cmd->add_option("--in", bin_in, "8-bit grayscale probability mask")->required()->check(CLI::ExistingFile);
    binarize_cmd->add_option("--out", bin_out, "binary mask output (.png or .pgm)")->required();
    binarize_cmd->add_option("--threshold", bin_threshold, "foreground iff value >= threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    // poi
    auto* poi_cmd = app.add_subcommand("poi", "generate positive and negative point prompts");
    std::string poi_mask, poi_method = "rcoga", poi_out;
    int poi_threshold = kDefaultLevelThreshold;
    PoiFlags poi_flags;
    poi_cmd->add_option("--mask", poi_mask, "binary coarse mask")->required()->check(CLI::ExistingFile);
    poi_cmd->add_option("--method", poi_method, "ms | coga | rcoga")->capture_default_str();
    poi_cmd->add_option("--out", poi_out, "output JSON (default stdout)");
    poi_cmd->add_option("--threshold", poi_threshold, "mask binarization level")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
    poi_flags.attach(poi_cmd);

    // prompt
    auto* prompt_cmd = app.add_subcommand("prompt", "write a refiner prompt bundle for one coarse mask");
    std::string pr_mask, pr_image, pr_out, pr_lowres, pr_image_id, pr_method = "rcoga";
    int pr_epochs = 100, pr_fraction = 100, pr_threshold = kDefaultLevelThreshold;
    PoiFlags pr_flags;
    prompt_cmd->add_option("--mask", pr_mask, "binary coarse mask")->required()->check(CLI::ExistingFile);
    prompt_cmd->add_option("--image", pr_image, "image the bundle refers to (default: the mask)");
    prompt_cmd->add_option("--out", pr_out, "bundle JSON path")->required();
    prompt_cmd->add_option("--lowres-out", pr_lowres, "256x256 mask path (default: <out>_lowres.png)");
    prompt_cmd->add_option("--image-id", pr_image_id, "image id (default: mask file stem)");
    prompt_cmd->add_option("--method", pr_method, "ms | coga | rcoga")->capture_default_str();
    prompt_cmd->add_option("--epochs", pr_epochs, "U-Net epochs recorded in the bundle")->capture_default_str();
    prompt_cmd->add_option("--train-fraction", pr_fraction, "training fraction (percent) recorded in the bundle")
        ->check(CLI::Range(0, 100))
        ->capture_default_str();
    prompt_cmd->add_option("--threshold", pr_threshold, "mask binarization level")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
    pr_flags.attach(prompt_cmd);

    // score / overlay
    auto* score_cmd = app.add_subcommand("score", "eq1 (Dice form) and Jaccard of a prediction");
    std::string sc_pred, sc_truth;
    score_cmd->add_option("--pred", sc_pred, "predicted mask")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--truth", sc_truth, "ground-truth mask")->required()->check(CLI::ExistingFile);

    auto* overlay_cmd = app.add_subcommand("overlay", "render correct/pred-only/missed pixels as RGB");
    std::string ov_pred, ov_truth, ov_out;
    overlay_cmd->add_option("--pred", ov_pred, "predicted mask")->required()->check(CLI::ExistingFile);
    overlay_cmd->add_option("--truth", ov_truth, "ground-truth mask")->required()->check(CLI::ExistingFile);
    overlay_cmd->add_option("--out", ov_out, "RGB PNG output")->required();

    // loss
    auto* loss_cmd = app.add_subcommand("loss", "BCE + (1 - soft eq1) of a probability mask");
    std::string lo_prob, lo_truth;
    double lo_eps = kDefaultLossEpsilon;
    loss_cmd->add_option("--prob", lo_prob, "8-bit probability mask")->required()->check(CLI::ExistingFile);
    loss_cmd->add_option("--truth", lo_truth, "ground-truth mask")->required()->check(CLI::ExistingFile);
    loss_cmd->add_option("--epsilon", lo_eps, "probability clamp")->capture_default_str();

    // split / subset
    auto* split_cmd = app.add_subcommand("split", "wear-area stratified train/test split");
    std::string sp_manifest, sp_base, sp_train, sp_test;
    double sp_fraction = 0.20;
    int sp_bins = 5;
    split_cmd->add_option("--manifest", sp_manifest, "manifest CSV")->required()->check(CLI::ExistingFile);
    split_cmd->add_option("--base-dir", sp_base, "root for manifest paths (default: manifest directory)");
    split_cmd->add_option("--test-fraction", sp_fraction, "test share per tool")->capture_default_str();
    split_cmd->add_option("--bins", sp_bins, "wear-area quantile bins")->capture_default_str();
    split_cmd->add_option("--train-out", sp_train, "train manifest output")->required();
    split_cmd->add_option("--test-out", sp_test, "test manifest output")->required();

    auto* subset_cmd = app.add_subcommand("subset", "per-tool random training subset");
    std::string ss_manifest, ss_out;
    int ss_percent = 100;
    subset_cmd->add_option("--manifest", ss_manifest, "manifest CSV")->required()->check(CLI::ExistingFile);
    subset_cmd->add_option("--fraction", ss_percent, "percent of each tool to keep")
        ->check(CLI::Range(1, 100))
        ->required();
    subset_cmd->add_option("--out", ss_out, "manifest output (default stdout)");

    // augment
    auto* augment_cmd = app.add_subcommand("augment", "random flip/rotate/translate of an image/mask pair");
    std::string au_image, au_mask, au_image_out, au_mask_out;
    std::uint64_t au_draw = 0;
    augment_cmd->add_option("--image", au_image, "RGB image")->required()->check(CLI::ExistingFile);
    augment_cmd->add_option("--mask", au_mask, "binary mask")->required()->check(CLI::ExistingFile);
    augment_cmd->add_option("--image-out", au_image_out, "augmented image")->required();
    augment_cmd->add_option("--mask-out", au_mask_out, "augmented mask")->required();
    augment_cmd->add_option("--draw", au_draw, "draw index under --seed")->capture_default_str();

    // eval-phase1
    auto* phase1_cmd = app.add_subcommand("eval-phase1", "compare PoI methods over a directory of coarse masks");
    EvalFlags p1;
    std::string p1_coarse;
    std::vector<std::string> p1_methods{"ms", "coga", "rcoga"};
    int p1_epochs = 100, p1_fraction = 100;
    phase1_cmd->add_option("--coarse-dir", p1_coarse, "coarse masks")->required()->check(CLI::ExistingDirectory);
    phase1_cmd->add_option("--methods", p1_methods, "PoI methods")->delimiter(',')->capture_default_str();
    phase1_cmd->add_option("--epochs", p1_epochs, "U-Net epochs of the coarse masks")->capture_default_str();
    phase1_cmd->add_option("--train-fraction", p1_fraction, "training fraction of the coarse masks")
        ->capture_default_str();
    p1.attach(phase1_cmd);

    // eval-phase2
    auto* phase2_cmd = app.add_subcommand("eval-phase2", "sweep training fraction or epochs for one PoI method");
    EvalFlags p2;
    std::string p2_factor = "train_fraction", p2_method = "rcoga";
    std::vector<std::string> p2_runs;
    int p2_fixed_epochs = 100, p2_fixed_fraction = 100;
    phase2_cmd->add_option("--factor", p2_factor, "train_fraction | unet_epochs")->capture_default_str();
    phase2_cmd->add_option("--run", p2_runs, "LEVEL=COARSE_DIR, repeatable")->required();
    phase2_cmd->add_option("--method", p2_method, "PoI method")->capture_default_str();
    phase2_cmd->add_option("--fixed-epochs", p2_fixed_epochs, "epochs recorded when sweeping fraction")
        ->capture_default_str();
    phase2_cmd->add_option("--fixed-train-fraction", p2_fixed_fraction, "fraction recorded when sweeping epochs")
        ->capture_default_str();
    p2.attach(phase2_cmd);

    // anova
    auto* anova_cmd = app.add_subcommand("anova", "one-way ANOVA over group,value CSV rows");
    std::string an_input = "-";
    anova_cmd->add_option("--input", an_input, "CSV with group,value rows ('-' = stdin)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return kExitUsage;
    }

    try {
        if (*binarize_cmd) {
            const auto mask = binarize(load_gray_mask(bin_in), bin_threshold);
            save_mask(mask, bin_out);
            emit(Json{{"width", mask.width()}, {"height", mask.height()}, {"foreground", mask.foreground_count()}});
        } else if (*poi_cmd) {
            const auto cfg = poi_flags.config(parse_poi_method(poi_method));
            const auto points = generate_prompt_points(load_mask(poi_mask, poi_threshold), cfg);
            emit(Json{{"method", to_string(cfg.method)},
                      {"positives", points_json(points.positives)},
                      {"negatives", points_json(points.negatives)}},
                 poi_out);
        } else if (*prompt_cmd) {
            const auto cfg = pr_flags.config(parse_poi_method(pr_method));
            const auto mask = load_mask(pr_mask, pr_threshold);
            const auto points = generate_prompt_points(mask, cfg);
            const fs::path out(pr_out);
            const fs::path lowres_path =
                pr_lowres.empty() ? out.parent_path() / (out.stem().string() + "_lowres.png") : fs::path(pr_lowres);
            for (const auto& dir : {out.parent_path(), lowres_path.parent_path()}) {
                if (!dir.empty()) fs::create_directories(dir);
            }
            save_mask(lowres_prompt_mask(mask), lowres_path);
            const fs::path base = fs::absolute(out).parent_path();
            PromptBundle bundle;
            bundle.image_id = pr_image_id.empty() ? fs::path(pr_mask).stem().string() : pr_image_id;
            bundle.image_path =
                fs::relative(fs::absolute(pr_image.empty() ? pr_mask : pr_image), base).generic_string();
            bundle.points = to_bundle_points(points);
            bundle.lowres_mask_path = fs::relative(fs::absolute(lowres_path), base).generic_string();
            bundle.source = {std::string(to_string(cfg.method)), pr_epochs, pr_fraction};
            write_prompt(bundle, mask.size(), out);
            emit(Json{{"bundle", out.string()},
                      {"positives", points.positives.size()},
                      {"negatives", points.negatives.size()}});
        } else if (*score_cmd) {
            emit(score_json(score(load_mask(sc_pred), load_mask(sc_truth))));
        } else if (*overlay_cmd) {
            const auto grid = overlay(load_mask(ov_pred), load_mask(ov_truth));
            save_rgb(render_overlay(grid), ov_out);
            emit(counts_json(grid.counts()));
        } else if (*loss_cmd) {
            const auto terms = composite_loss(load_gray_mask(lo_prob), load_mask(lo_truth), lo_eps);
            emit(Json{{"bce", terms.bce}, {"overlap", terms.overlap}, {"total", terms.total}});
        } else if (*split_cmd) {
            const auto manifest = read_manifest(sp_manifest);
            const fs::path base = sp_base.empty() ? fs::path(sp_manifest).parent_path() : fs::path(sp_base);
            const auto result =
                stratified_split(manifest, label_areas(manifest, base), SplitConfig{sp_fraction, sp_bins, seed});
            write_manifest(result.train, sp_train);
            write_manifest(result.test, sp_test);
            Json tools = Json::object();
            const auto train_counts = result.train.tool_counts();
            const auto test_counts = result.test.tool_counts();
            for (const auto& tool : manifest.tools()) {
                const auto tr = train_counts.find(tool);
                const auto te = test_counts.find(tool);
                tools[tool] = Json{{"train", tr == train_counts.end() ? 0 : tr->second},
                                   {"test", te == test_counts.end() ? 0 : te->second}};
            }
            emit(Json{{"seed", seed}, {"tools", tools}});
        } else if (*subset_cmd) {
            write_file(ss_out, serialize_manifest(subset(read_manifest(ss_manifest), ss_percent, seed)));
        } else if (*augment_cmd) {
            const auto image = load_rgb(au_image);
            const auto mask = load_mask(au_mask);
            AugmentSpec spec;
            spec.seed = seed;
            const auto draw = draw_augmentation(spec, au_draw, mask.size());
            const auto [out_image, out_mask] = apply_augmentation(image, mask, draw);
            save_rgb(out_image, au_image_out);
            save_mask(out_mask, au_mask_out);
            emit(Json{{"hflip", draw.hflip},
                      {"vflip", draw.vflip},
                      {"rotate_deg", draw.rotate_deg},
                      {"translate_x", draw.translate_x},
                      {"translate_y", draw.translate_y}});
        } else if (*phase1_cmd) {
            Phase1Config cfg;
            cfg.common = p1.common(PoiMethod::RCoGA);
            cfg.coarse_dir = p1_coarse;
            cfg.methods.clear();
            for (const auto& m : p1_methods) cfg.methods.push_back(parse_poi_method(m));
            cfg.unet_epochs = p1_epochs;
            cfg.train_fraction = p1_fraction;
            finish_sweep(run_phase1(cfg), p1.out_dir);
        } else if (*phase2_cmd) {
            Phase2Config cfg;
            cfg.method = parse_poi_method(p2_method);
            cfg.common = p2.common(cfg.method);
            cfg.factor = parse_sweep_factor(p2_factor);
            cfg.fixed_unet_epochs = p2_fixed_epochs;
            cfg.fixed_train_fraction = p2_fixed_fraction;
            for (const auto& run : p2_runs) {
                const auto eq = run.find('=');
                if (eq == std::string::npos) {
                    print_error("usage", "--run expects LEVEL=COARSE_DIR, got '" + run + "'");
                    return kExitUsage;
                }
                int level = 0;
                try {
                    level = std::stoi(run.substr(0, eq));
                } catch (const std::exception&) {
                    print_error("usage", "--run level must be an integer, got '" + run.substr(0, eq) + "'");
                    return kExitUsage;
                }
                cfg.runs.push_back({level, run.substr(eq + 1)});
            }
            finish_sweep(run_phase2(cfg), p2.out_dir);
        } else if (*anova_cmd) {
            std::vector<std::string> names;
            const auto groups = read_groups(an_input, names);
            Json doc = anova_json(anova_oneway(groups));
            doc["groups"] = names;
            emit(doc);
        }
    } catch (const Error& e) {
        print_error(to_string(e.kind()), e.what());
        return e.kind() == ErrorKind::Config ? kExitUsage : kExitProcessing;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return kExitProcessing;
    }
    return 0;
}

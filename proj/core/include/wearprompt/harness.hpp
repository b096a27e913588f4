#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearprompt/metrics.hpp"
#include "wearprompt/poi.hpp"
#include "wearprompt/stats.hpp"

namespace wearprompt {

// One image scored once as the coarse (baseline) mask and once after
// refinement.
struct EvalRecord {
    std::string image_id;
    std::string tool_id;
    PoiMethod method = PoiMethod::RCoGA;
    int train_fraction = 100;
    int unet_epochs = 100;
    ScoreSet baseline;
    ScoreSet refined;

    friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

struct FailureRecord {
    std::string image_id;
    std::string method;
    std::string group;
    std::string reason;
};

enum class SweepFactor { Method, TrainFraction, UnetEpochs };

std::string_view to_string(SweepFactor factor);
SweepFactor parse_sweep_factor(std::string_view text);

struct GroupStats {
    std::string level;
    std::string tool_id;  // "ALL" for the pooled row
    SampleSummary baseline_eq1;
    SampleSummary refined_eq1;
    SampleSummary baseline_jaccard;
    SampleSummary refined_jaccard;
    double delta_eq1 = 0.0;      // refined mean - baseline mean
    double delta_jaccard = 0.0;
};

struct AnovaRow {
    std::string metric;
    int groups = 0;
    std::optional<AnovaResult> result;
    std::string status;  // "ok" or "degenerate: <reason>"
};

struct SweepReport {
    SweepFactor factor = SweepFactor::Method;
    std::vector<EvalRecord> records;
    std::vector<FailureRecord> failures;
    std::vector<GroupStats> summary;
    std::vector<AnovaRow> anova;
};

inline constexpr const char* kPooledTool = "ALL";

// Builds summary and ANOVA tables. Records are put in canonical order first,
// so the result does not depend on input order.
SweepReport aggregate(std::vector<EvalRecord> records, SweepFactor factor,
                      std::vector<FailureRecord> failures = {});

// Level label of a record under `factor` (method name or integer).
std::string level_of(const EvalRecord& record, SweepFactor factor);

// identity: copies the coarse mask; oracle: copies the ground truth;
// command: runs `argv... prompt.json image_path out_mask_path`.
struct Refiner {
    enum class Kind { Identity, Oracle, Command };
    Kind kind = Kind::Identity;
    std::vector<std::string> argv;

    // "identity", "oracle", or a whitespace separated command line.
    static Refiner parse(const std::string& spec);
    std::string describe() const;
};

struct EvalCommon {
    std::filesystem::path truth_dir;
    std::optional<std::filesystem::path> image_dir;
    std::filesystem::path out_dir;
    PoiConfig poi;
    Refiner refiner;
    int workers = 1;
    int threshold = 128;
    // image stem -> tool id; unmapped images use "default".
    std::map<std::string, std::string> tool_of;
};

struct Phase1Config {
    EvalCommon common;
    std::filesystem::path coarse_dir;
    std::vector<PoiMethod> methods{PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA};
    int train_fraction = 100;
    int unet_epochs = 100;
};

struct Phase2Run {
    int level = 0;
    std::filesystem::path coarse_dir;
};

struct Phase2Config {
    EvalCommon common;
    SweepFactor factor = SweepFactor::TrainFraction;
    std::vector<Phase2Run> runs;
    PoiMethod method = PoiMethod::RCoGA;
    // Value recorded for the factor that is not swept.
    int fixed_train_fraction = 100;
    int fixed_unet_epochs = 100;
};

// Prompts land in out_dir/prompts/, refined masks in out_dir/refined/.
SweepReport run_phase1(const Phase1Config& cfg);
SweepReport run_phase2(const Phase2Config& cfg);

// records.csv, summary.csv, anova.csv, failures.csv and plotdata/*.tsv.
void emit_report(const SweepReport& report, const std::filesystem::path& out_dir);

std::string records_csv(const std::vector<EvalRecord>& records);
std::vector<EvalRecord> parse_records_csv(const std::string& text);
std::vector<EvalRecord> read_records_csv(const std::filesystem::path& path);
std::string summary_csv(const SweepReport& report);
std::string anova_csv(const SweepReport& report);

// stem -> tool id from a dataset manifest (keyed by label and image stems).
std::map<std::string, std::string> tool_map_from_manifest(const std::filesystem::path& manifest_path);

}  // namespace wearprompt

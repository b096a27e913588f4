#include "wearprompt/harness.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <variant>

#include "csv.hpp"
#include "wearprompt/dataset.hpp"
#include "wearprompt/error.hpp"
#include "wearprompt/image_io.hpp"
#include "wearprompt/prompts.hpp"

extern char** environ;

namespace wearprompt {
namespace fs = std::filesystem;
namespace {

constexpr const char* kDefaultTool = "default";

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_mask_file(const fs::path& p) {
    const auto ext = lower(p.extension().string());
    return ext == ".png" || ext == ".pgm";
}

// stem -> path, sorted by stem; the first file wins for duplicate stems.
std::map<std::string, fs::path> list_masks(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw Error(ErrorKind::Io, "not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_mask_file(entry.path())) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::map<std::string, fs::path> out;
    for (const auto& f : files) {
        out.emplace(f.stem().string(), f);
    }
    return out;
}

std::optional<fs::path> find_image(const std::optional<fs::path>& dir, const std::string& stem) {
    if (!dir) {
        return std::nullopt;
    }
    for (const char* ext : {".png", ".ppm", ".pgm", ".jpg", ".jpeg", ".tif", ".tiff", ".bmp"}) {
        const fs::path candidate = *dir / (stem + ext);
        if (fs::exists(candidate)) {
            return candidate;
        }
    }
    return std::nullopt;
}

int method_rank(PoiMethod m) { return static_cast<int>(m); }

// Sort key of a level under a factor: methods by enum order, numbers by value.
int level_key(const EvalRecord& r, SweepFactor factor) {
    switch (factor) {
    case SweepFactor::Method: return method_rank(r.method);
    case SweepFactor::TrainFraction: return r.train_fraction;
    case SweepFactor::UnetEpochs: return r.unet_epochs;
    }
    return 0;
}

auto canonical_key(const EvalRecord& r, SweepFactor factor) {
    return std::make_tuple(level_key(r, factor), method_rank(r.method), r.train_fraction, r.unet_epochs, r.tool_id,
                           r.image_id);
}

GroupStats stats_for(const std::string& level, const std::string& tool, const std::vector<const EvalRecord*>& rows) {
    std::vector<double> be, re, bj, rj;
    for (const auto* r : rows) {
        be.push_back(r->baseline.eq1);
        re.push_back(r->refined.eq1);
        bj.push_back(r->baseline.jaccard);
        rj.push_back(r->refined.jaccard);
    }
    GroupStats g;
    g.level = level;
    g.tool_id = tool;
    g.baseline_eq1 = summarize(be);
    g.refined_eq1 = summarize(re);
    g.baseline_jaccard = summarize(bj);
    g.refined_jaccard = summarize(rj);
    g.delta_eq1 = g.refined_eq1.mean - g.baseline_eq1.mean;
    g.delta_jaccard = g.refined_jaccard.mean - g.baseline_jaccard.mean;
    return g;
}

// ---- refinement -----------------------------------------------------------

int run_command(const std::vector<std::string>& argv) {
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) {
        args.push_back(const_cast<char*>(a.c_str()));
    }
    args.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    // Refiner chatter must not mix with data on our stdout.
    posix_spawn_file_actions_adddup2(&actions, STDERR_FILENO, STDOUT_FILENO);
    pid_t pid = 0;
    const int rc = posix_spawnp(&pid, args.front(), &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        return 127;
    }
    int status = 0;
    while (waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) {
            return 127;
        }
    }
    if (WIFEXITED(status)) {
        return WEXITSTATUS(status);
    }
    return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

struct Task {
    std::string stem;
    fs::path coarse_path;
    std::optional<fs::path> truth_path;
    PoiMethod method = PoiMethod::RCoGA;
    int train_fraction = 100;
    int unet_epochs = 100;
    std::string group;  // output subdirectory, empty in phase 1
};

using Outcome = std::variant<EvalRecord, FailureRecord>;

std::string relative_to(const fs::path& target, const fs::path& base) {
    return fs::relative(fs::absolute(target), fs::absolute(base)).generic_string();
}

Outcome process(const Task& task, const EvalCommon& common) {
    const std::string method_name(to_string(task.method));
    auto fail = [&](const std::string& reason) { return FailureRecord{task.stem, method_name, task.group, reason}; };
    if (!task.truth_path) {
        return fail("missing ground truth");
    }
    try {
        const BinaryMask coarse = load_mask(task.coarse_path, common.threshold);
        const BinaryMask truth = load_mask(*task.truth_path);
        if (coarse.size() != truth.size()) {
            return fail("coarse and truth dimensions differ");
        }
        if (!coarse.has_foreground()) {
            return fail("coarse mask has no foreground");
        }

        PoiConfig poi = common.poi;
        poi.method = task.method;
        const PromptPoints points = generate_prompt_points(coarse, poi);

        const BinaryMask lowres = lowres_prompt_mask(coarse);

        const fs::path prompt_dir = common.out_dir / "prompts" / task.group / method_name;
        const fs::path refined_dir = common.out_dir / "refined" / task.group / method_name;
        fs::create_directories(prompt_dir);
        fs::create_directories(refined_dir);
        const fs::path lowres_path = prompt_dir / (task.stem + "_lowres.png");
        const fs::path bundle_path = prompt_dir / (task.stem + ".json");
        const fs::path refined_path = refined_dir / (task.stem + ".png");
        const fs::path image_path = find_image(common.image_dir, task.stem).value_or(task.coarse_path);
        save_mask(lowres, lowres_path);

        PromptBundle bundle;
        bundle.image_id = task.stem;
        bundle.image_path = relative_to(image_path, prompt_dir);
        bundle.points = to_bundle_points(points);
        bundle.lowres_mask_path = relative_to(lowres_path, prompt_dir);
        bundle.source = {method_name, task.unet_epochs, task.train_fraction};
        write_prompt(bundle, coarse.size(), bundle_path);

        switch (common.refiner.kind) {
        case Refiner::Kind::Identity: save_mask(coarse, refined_path); break;
        case Refiner::Kind::Oracle: save_mask(truth, refined_path); break;
        case Refiner::Kind::Command: {
            fs::remove(refined_path);
            auto argv = common.refiner.argv;
            argv.push_back(bundle_path.string());
            argv.push_back(image_path.string());
            argv.push_back(refined_path.string());
            const int code = run_command(argv);
            if (code != 0) {
                return fail("refiner exited with status " + std::to_string(code));
            }
            break;
        }
        }
        if (!fs::exists(refined_path)) {
            return fail("refiner produced no output mask");
        }
        const BinaryMask refined = load_mask(refined_path);
        if (refined.size() != truth.size()) {
            return fail("refined mask dimensions differ from ground truth");
        }

        EvalRecord record;
        record.image_id = task.stem;
        const auto tool = common.tool_of.find(task.stem);
        record.tool_id = tool != common.tool_of.end() ? tool->second : kDefaultTool;
        record.method = task.method;
        record.train_fraction = task.train_fraction;
        record.unet_epochs = task.unet_epochs;
        record.baseline = score(coarse, truth);
        record.refined = score(refined, truth);
        return record;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

SweepReport execute(const std::vector<Task>& tasks, const EvalCommon& common, SweepFactor factor) {
    std::vector<std::optional<Outcome>> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            outcomes[i] = process(tasks[i], common);
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, common.workers));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < std::min(workers, tasks.size()); ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    std::vector<EvalRecord> records;
    std::vector<FailureRecord> failures;
    for (auto& o : outcomes) {
        if (auto* r = std::get_if<EvalRecord>(&*o)) {
            records.push_back(std::move(*r));
        } else {
            failures.push_back(std::get<FailureRecord>(std::move(*o)));
        }
    }
    return aggregate(std::move(records), factor, std::move(failures));
}

std::vector<Task> tasks_for(const fs::path& coarse_dir, const std::map<std::string, fs::path>& truths,
                            const std::vector<PoiMethod>& methods, int fraction, int epochs, const std::string& group) {
    std::vector<Task> tasks;
    for (const auto& [stem, path] : list_masks(coarse_dir)) {
        const auto truth = truths.find(stem);
        for (const auto method : methods) {
            Task t;
            t.stem = stem;
            t.coarse_path = path;
            if (truth != truths.end()) t.truth_path = truth->second;
            t.method = method;
            t.train_fraction = fraction;
            t.unet_epochs = epochs;
            t.group = group;
            tasks.push_back(std::move(t));
        }
    }
    return tasks;
}

// ---- report files ---------------------------------------------------------

const std::vector<std::string> kRecordHeader = {
    "image_id", "tool_id", "method", "train_fraction", "unet_epochs",
    "baseline_eq1", "baseline_jaccard", "baseline_intersection", "baseline_pred_only", "baseline_truth_only",
    "baseline_background",
    "refined_eq1", "refined_jaccard", "refined_intersection", "refined_pred_only", "refined_truth_only",
    "refined_background"};

void append_scores(detail::CsvRow& row, const ScoreSet& s) {
    row.push_back(detail::format_double(s.eq1));
    row.push_back(detail::format_double(s.jaccard));
    row.push_back(std::to_string(s.counts.intersection));
    row.push_back(std::to_string(s.counts.pred_only));
    row.push_back(std::to_string(s.counts.truth_only));
    row.push_back(std::to_string(s.counts.background));
}

double parse_double(const std::string& text, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, "records.csv line " + std::to_string(line) + ": bad number '" + text + "'");
}

long long parse_int(const std::string& text, std::size_t line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, "records.csv line " + std::to_string(line) + ": bad integer '" + text + "'");
}

ScoreSet parse_scores(const detail::CsvRow& row, std::size_t offset, std::size_t line) {
    ScoreSet s;
    s.eq1 = parse_double(row[offset], line);
    s.jaccard = parse_double(row[offset + 1], line);
    s.counts.intersection = parse_int(row[offset + 2], line);
    s.counts.pred_only = parse_int(row[offset + 3], line);
    s.counts.truth_only = parse_int(row[offset + 4], line);
    s.counts.background = parse_int(row[offset + 5], line);
    return s;
}

std::string summary_level_header(SweepFactor factor) { return std::string(to_string(factor)); }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw Error(ErrorKind::Io, "failed writing " + path.string());
    }
}

std::string tsv(const std::vector<std::tuple<std::string, std::string, double>>& rows) {
    std::string out = "x\tseries\ty\n";
    for (const auto& [x, series, y] : rows) {
        out += x + "\t" + series + "\t" + detail::format_double(y) + "\n";
    }
    return out;
}

}  // namespace

std::string_view to_string(SweepFactor factor) {
    switch (factor) {
    case SweepFactor::Method: return "method";
    case SweepFactor::TrainFraction: return "train_fraction";
    case SweepFactor::UnetEpochs: return "unet_epochs";
    }
    return "unknown";
}

SweepFactor parse_sweep_factor(std::string_view text) {
    const std::string t = lower(std::string(text));
    if (t == "method") return SweepFactor::Method;
    if (t == "train_fraction" || t == "fraction") return SweepFactor::TrainFraction;
    if (t == "unet_epochs" || t == "epochs") return SweepFactor::UnetEpochs;
    throw Error(ErrorKind::Config, "unknown sweep factor '" + std::string(text) + "'");
}

std::string level_of(const EvalRecord& record, SweepFactor factor) {
    switch (factor) {
    case SweepFactor::Method: return std::string(to_string(record.method));
    case SweepFactor::TrainFraction: return std::to_string(record.train_fraction);
    case SweepFactor::UnetEpochs: return std::to_string(record.unet_epochs);
    }
    return {};
}

SweepReport aggregate(std::vector<EvalRecord> records, SweepFactor factor, std::vector<FailureRecord> failures) {
    std::sort(records.begin(), records.end(), [factor](const EvalRecord& a, const EvalRecord& b) {
        return canonical_key(a, factor) < canonical_key(b, factor);
    });
    std::sort(failures.begin(), failures.end(), [](const FailureRecord& a, const FailureRecord& b) {
        return std::tie(a.group, a.method, a.image_id, a.reason) < std::tie(b.group, b.method, b.image_id, b.reason);
    });

    SweepReport report;
    report.factor = factor;
    report.failures = std::move(failures);

    // Levels in key order; records are already sorted by level first.
    std::vector<std::string> levels;
    std::map<std::string, std::vector<const EvalRecord*>> pooled;
    std::map<std::string, std::map<std::string, std::vector<const EvalRecord*>>> by_tool;
    for (const auto& r : records) {
        const std::string level = level_of(r, factor);
        if (levels.empty() || levels.back() != level) {
            levels.push_back(level);
        }
        pooled[level].push_back(&r);
        by_tool[level][r.tool_id].push_back(&r);
    }
    for (const auto& level : levels) {
        report.summary.push_back(stats_for(level, kPooledTool, pooled[level]));
        for (const auto& [tool, rows] : by_tool[level]) {
            report.summary.push_back(stats_for(level, tool, rows));
        }
    }

    struct Metric {
        const char* name;
        double (*value)(const EvalRecord&);
    };
    const Metric metrics[] = {
        {"refined_eq1", [](const EvalRecord& r) { return r.refined.eq1; }},
        {"refined_jaccard", [](const EvalRecord& r) { return r.refined.jaccard; }},
        {"baseline_eq1", [](const EvalRecord& r) { return r.baseline.eq1; }},
        {"delta_eq1", [](const EvalRecord& r) { return r.refined.eq1 - r.baseline.eq1; }},
    };
    for (const auto& metric : metrics) {
        AnovaRow row;
        row.metric = metric.name;
        row.groups = static_cast<int>(levels.size());
        std::vector<std::vector<double>> groups;
        for (const auto& level : levels) {
            std::vector<double> samples;
            for (const auto* r : pooled[level]) {
                samples.push_back(metric.value(*r));
            }
            groups.push_back(std::move(samples));
        }
        try {
            row.result = anova_oneway(groups);
            row.status = "ok";
        } catch (const Error& e) {
            row.status = std::string("degenerate: ") + e.what();
        }
        report.anova.push_back(std::move(row));
    }
    report.records = std::move(records);
    return report;
}

Refiner Refiner::parse(const std::string& spec) {
    Refiner r;
    std::istringstream in(spec);
    for (std::string token; in >> token;) {
        r.argv.push_back(token);
    }
    if (r.argv.empty()) {
        throw Error(ErrorKind::Config, "empty refiner specification");
    }
    if (r.argv.size() == 1 && r.argv.front() == "identity") {
        r.kind = Kind::Identity;
        r.argv.clear();
    } else if (r.argv.size() == 1 && r.argv.front() == "oracle") {
        r.kind = Kind::Oracle;
        r.argv.clear();
    } else {
        r.kind = Kind::Command;
    }
    return r;
}

std::string Refiner::describe() const {
    switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Oracle: return "oracle";
    case Kind::Command: {
        std::string out;
        for (const auto& a : argv) {
            if (!out.empty()) out += ' ';
            out += a;
        }
        return out;
    }
    }
    return {};
}

SweepReport run_phase1(const Phase1Config& cfg) {
    if (cfg.methods.empty()) {
        throw Error(ErrorKind::Config, "phase 1 needs at least one PoI method");
    }
    cfg.common.poi.validate();
    const auto truths = list_masks(cfg.common.truth_dir);
    const auto tasks = tasks_for(cfg.coarse_dir, truths, cfg.methods, cfg.train_fraction, cfg.unet_epochs, "");
    return execute(tasks, cfg.common, SweepFactor::Method);
}

SweepReport run_phase2(const Phase2Config& cfg) {
    if (cfg.factor == SweepFactor::Method) {
        throw Error(ErrorKind::Config, "phase 2 sweeps train_fraction or unet_epochs");
    }
    if (cfg.runs.empty()) {
        throw Error(ErrorKind::Config, "phase 2 needs at least one run");
    }
    cfg.common.poi.validate();
    const auto truths = list_masks(cfg.common.truth_dir);
    std::vector<Task> tasks;
    std::set<int> seen;
    for (const auto& run : cfg.runs) {
        if (!seen.insert(run.level).second) {
            throw Error(ErrorKind::Config, "duplicate phase 2 level " + std::to_string(run.level));
        }
        const bool by_fraction = cfg.factor == SweepFactor::TrainFraction;
        const int fraction = by_fraction ? run.level : cfg.fixed_train_fraction;
        const int epochs = by_fraction ? cfg.fixed_unet_epochs : run.level;
        const std::string group = std::string(to_string(cfg.factor)) + "_" + std::to_string(run.level);
        auto more = tasks_for(run.coarse_dir, truths, {cfg.method}, fraction, epochs, group);
        tasks.insert(tasks.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    return execute(tasks, cfg.common, cfg.factor);
}

std::string records_csv(const std::vector<EvalRecord>& records) {
    std::string out = detail::csv_line(kRecordHeader);
    for (const auto& r : records) {
        detail::CsvRow row{r.image_id, r.tool_id, std::string(to_string(r.method)), std::to_string(r.train_fraction),
                           std::to_string(r.unet_epochs)};
        append_scores(row, r.baseline);
        append_scores(row, r.refined);
        out += detail::csv_line(row);
    }
    return out;
}

std::vector<EvalRecord> parse_records_csv(const std::string& text) {
    const auto rows = detail::parse_csv(text);
    if (rows.empty() || rows.front() != kRecordHeader) {
        throw Error(ErrorKind::Parse, "records.csv: unexpected header");
    }
    std::vector<EvalRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != kRecordHeader.size()) {
            throw Error(ErrorKind::Parse, "records.csv line " + std::to_string(i + 1) + ": wrong field count");
        }
        EvalRecord r;
        r.image_id = row[0];
        r.tool_id = row[1];
        r.method = parse_poi_method(row[2]);
        r.train_fraction = static_cast<int>(parse_int(row[3], i + 1));
        r.unet_epochs = static_cast<int>(parse_int(row[4], i + 1));
        r.baseline = parse_scores(row, 5, i + 1);
        r.refined = parse_scores(row, 11, i + 1);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<EvalRecord> read_records_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_records_csv(buffer.str());
}

std::string summary_csv(const SweepReport& report) {
    std::string out = detail::csv_line(
        {"factor", summary_level_header(report.factor), "tool_id", "n", "baseline_eq1_mean", "baseline_eq1_std",
         "refined_eq1_mean", "refined_eq1_std", "delta_eq1", "baseline_jaccard_mean", "baseline_jaccard_std",
         "refined_jaccard_mean", "refined_jaccard_std", "delta_jaccard"});
    for (const auto& g : report.summary) {
        out += detail::csv_line({std::string(to_string(report.factor)), g.level, g.tool_id,
                                 std::to_string(g.refined_eq1.n), detail::format_double(g.baseline_eq1.mean),
                                 detail::format_double(g.baseline_eq1.stddev),
                                 detail::format_double(g.refined_eq1.mean),
                                 detail::format_double(g.refined_eq1.stddev), detail::format_double(g.delta_eq1),
                                 detail::format_double(g.baseline_jaccard.mean),
                                 detail::format_double(g.baseline_jaccard.stddev),
                                 detail::format_double(g.refined_jaccard.mean),
                                 detail::format_double(g.refined_jaccard.stddev),
                                 detail::format_double(g.delta_jaccard)});
    }
    return out;
}

std::string anova_csv(const SweepReport& report) {
    std::string out = detail::csv_line(
        {"factor", "metric", "groups", "f_statistic", "p_value", "df_between", "df_within", "status"});
    for (const auto& a : report.anova) {
        detail::CsvRow row{std::string(to_string(report.factor)), a.metric, std::to_string(a.groups)};
        if (a.result) {
            row.push_back(detail::format_double(a.result->f_statistic));
            row.push_back(detail::format_double(a.result->p_value));
            row.push_back(std::to_string(a.result->df_between));
            row.push_back(std::to_string(a.result->df_within));
        } else {
            row.insert(row.end(), {"", "", "", ""});
        }
        row.push_back(a.status);
        out += detail::csv_line(row);
    }
    return out;
}

void emit_report(const SweepReport& report, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_text(out_dir / "records.csv", records_csv(report.records));
    write_text(out_dir / "summary.csv", summary_csv(report));
    write_text(out_dir / "anova.csv", anova_csv(report));

    std::string failures = detail::csv_line({"image_id", "method", "group", "reason"});
    for (const auto& f : report.failures) {
        failures += detail::csv_line({f.image_id, f.method, f.group, f.reason});
    }
    write_text(out_dir / "failures.csv", failures);

    if (report.records.empty()) {
        return;
    }
    const fs::path plot_dir = out_dir / "plotdata";
    fs::create_directories(plot_dir);
    const std::string factor(to_string(report.factor));

    std::vector<std::tuple<std::string, std::string, double>> by_tool, delta, curve;
    for (const auto& g : report.summary) {
        if (g.tool_id == kPooledTool) {
            curve.emplace_back(g.level, "baseline_eq1", g.baseline_eq1.mean);
            curve.emplace_back(g.level, "refined_eq1", g.refined_eq1.mean);
            curve.emplace_back(g.level, "baseline_jaccard", g.baseline_jaccard.mean);
            curve.emplace_back(g.level, "refined_jaccard", g.refined_jaccard.mean);
        }
        by_tool.emplace_back(g.tool_id, g.level, g.refined_eq1.mean);
        delta.emplace_back(g.level, g.tool_id, g.delta_eq1);
    }
    // Per-tool bars, delta-vs-baseline bars and pooled mean curves.
    write_text(plot_dir / ("refined_eq1_by_tool_and_" + factor + ".tsv"), tsv(by_tool));
    write_text(plot_dir / ("delta_eq1_by_" + factor + ".tsv"), tsv(delta));
    write_text(plot_dir / ("mean_scores_by_" + factor + ".tsv"), tsv(curve));
}

std::map<std::string, std::string> tool_map_from_manifest(const fs::path& manifest_path) {
    const auto manifest = read_manifest(manifest_path);
    std::map<std::string, std::string> out;
    for (const auto& e : manifest.entries) {
        out.emplace(fs::path(e.label_path).stem().string(), e.tool_id);
        out.emplace(fs::path(e.image_path).stem().string(), e.tool_id);
    }
    return out;
}

}  // namespace wearprompt

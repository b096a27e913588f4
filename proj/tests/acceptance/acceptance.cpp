// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// line fails. Runs offline with the identity and oracle refiners only.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wearprompt/dataset.hpp"
#include "wearprompt/harness.hpp"
#include "wearprompt/image_io.hpp"
#include "wearprompt/metrics.hpp"
#include "wearprompt/poi.hpp"
#include "wearprompt/prompts.hpp"
#include "wearprompt/stats.hpp"

using namespace wearprompt;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    return s.str();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'') q += "'\\''";
        else q += c;
    }
    return q + "'";
}

// Exit status of the CLI; stdout goes to `out_file`, stderr is discarded.
int cli(const std::vector<std::string>& args, const fs::path& out_file) {
    std::string cmd = "env -u WEARPROMPT_CONFIG " + quote(WEARPROMPT_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " </dev/null >" + quote(out_file.string()) + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool in_bounds(const BinaryMask& m, const PixelPoint& p) {
    return p.row >= 0 && p.col >= 0 && p.row < m.height() && p.col < m.width();
}

// ---- criteria --------------------------------------------------------------

Outcome poi_invariants() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(0xb10b5);
    long violations = 0, runs = 0;
    for (int i = 0; i < 500; ++i) {
        const auto mask = fixtures::random_blob_mask(rng, 32, 256);
        for (auto method : {PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA}) {
            PoiConfig cfg;
            cfg.method = method;
            const auto pts = generate_prompt_points(mask, cfg);
            ++runs;
            if (pts.positives.empty()) ++violations;
            for (const auto& p : pts.positives)
                if (!in_bounds(mask, p) || !mask.at(p)) ++violations;
            for (const auto& p : pts.negatives)
                if (!in_bounds(mask, p) || mask.at(p)) ++violations;
        }
    }
    const double secs = seconds_since(t0);
    o.detail = "500 masks x 3 methods, " + std::to_string(violations) + " violations, " + fmt(secs) + " s";
    if (violations != 0) o.fail(std::to_string(violations) + " violations in " + std::to_string(runs) + " runs");
    if (secs >= 60.0) o.fail("took " + fmt(secs) + " s (limit 60 s)");
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto catalog = fixtures::shape_catalog();
    int compared = 0;
    PoiConfig alt;
    alt.connectivity = Connectivity::Four;
    alt.se_shape = StructuringElement::Cross3;
    for (const auto& [name, mask] : catalog) {
        for (const PoiConfig& base : {PoiConfig{}, alt}) {
            const auto p = oracle::params_of(base);
            for (auto method : {PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA}) {
                PoiConfig cfg = base;
                cfg.method = method;
                const auto got = generate_prompt_points(mask, cfg);
                const auto want = method == PoiMethod::MS     ? oracle::ms(mask, p)
                                  : method == PoiMethod::CoGA ? oracle::coga(mask, p)
                                                              : oracle::rcoga(mask, p);
                ++compared;
                if (oracle::as_pairs(got.positives) != want) {
                    o.fail(name + " " + std::string(to_string(method)) + " positives differ");
                } else if (oracle::as_pairs(got.negatives) != oracle::negatives(mask, want, p)) {
                    o.fail(name + " " + std::string(to_string(method)) + " negatives differ");
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(catalog.size()) + " shapes, " + std::to_string(compared) + " exact matches";
    return o;
}

Outcome metric_identities() {
    Outcome o;
    std::mt19937_64 rng(0xd1ce);
    std::uniform_real_distribution<double> dens(0.0, 0.7), u(0.0, 1.0);
    std::uniform_int_distribution<int> side(1, 64);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const int w = side(rng), h = side(rng);
        const auto a = fixtures::random_noise(rng, w, h, dens(rng));
        const auto b = fixtures::random_noise(rng, w, h, dens(rng));
        const auto s = score(a, b);
        worst = std::max(worst, std::abs(s.eq1 - 2.0 * s.jaccard / (1.0 + s.jaccard)));
        if (score(a, a).eq1 != 1.0) o.fail("eq1(m, m) != 1");
        if (a.has_foreground() && score(a, complement(a)).eq1 != 0.0) o.fail("eq1 on disjoint masks != 0");

        std::vector<double> v(static_cast<std::size_t>(w) * h);
        for (auto& x : v) x = u(rng);
        const GrayMask prob(w, h, v);
        const auto t = composite_loss(prob, b);
        if (t.total != t.bce + t.overlap) o.fail("total != bce + overlap");
        if (t.overlap != 1.0 - soft_eq1(prob, b)) o.fail("overlap != 1 - soft eq1");
    }
    if (worst > 1e-12) o.fail("|eq1 - 2J/(1+J)| = " + fmt(worst) + " > 1e-12");
    if (o.pass) o.detail = "500 pairs, max |eq1 - 2J/(1+J)| = " + fmt(worst);
    return o;
}

Outcome anova_agreement() {
    Outcome o;
    std::mt19937_64 rng(0xa0a);
    std::uniform_int_distribution<int> ngroups(2, 6), nsamples(2, 30);
    std::uniform_real_distribution<double> shift(-2.0, 2.0), scale(0.1, 2.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    double worst_f = 0.0, worst_p = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<std::vector<double>> groups(ngroups(rng));
        for (auto& g : groups) {
            const double mu = shift(rng), sd = scale(rng);
            g.resize(nsamples(rng));
            for (auto& v : g) v = mu + sd * noise(rng);
        }
        const auto got = anova_oneway(groups);
        const auto want = oracle::anova(groups);
        worst_f = std::max(worst_f, std::abs(got.f_statistic - want.f) / std::max(1.0, std::abs(want.f)));
        worst_p = std::max(worst_p, std::abs(got.p_value - want.p));
        if (got.df_between != want.df1 || got.df_within != want.df2) o.fail("degrees of freedom differ");
    }
    if (worst_f > 1e-6) o.fail("F differs by " + fmt(worst_f));
    if (worst_p > 1e-6) o.fail("p differs by " + fmt(worst_p));
    const double identical = anova_oneway({{0.81, 0.86, 0.9, 0.84}, {0.81, 0.86, 0.9, 0.84}, {0.81, 0.86, 0.9, 0.84}})
                                 .p_value;
    if (identical != 1.0) o.fail("identical groups give p = " + fmt(identical, 17));
    if (o.pass) o.detail = "20 configurations, max dF = " + fmt(worst_f) + ", max dp = " + fmt(worst_p) +
                           "; identical groups p = 1";
    return o;
}

Outcome morphology() {
    Outcome o;
    std::mt19937_64 rng(0xe70de);
    std::uniform_int_distribution<int> side(3, 64);
    std::uniform_real_distribution<double> dens(0.2, 0.95);
    for (int i = 0; i < 500; ++i) {
        const int w = side(rng), h = side(rng);
        const auto small = fixtures::random_noise(rng, w, h, dens(rng));
        BinaryMask big = small;
        for (const auto& p : fixtures::random_noise(rng, w, h, 0.3).foreground()) big.set(p, true);
        for (auto se : {StructuringElement::Square3, StructuringElement::Cross3}) {
            const auto es = erode(small, se);
            if (!is_subset(es, small)) o.fail("erosion not anti-extensive");
            if (!is_subset(es, erode(big, se))) o.fail("erosion not monotone");
        }
    }
    const BinaryMask square(5, 5, true);
    const auto once = erode(square, StructuringElement::Square3);
    const auto twice = erode(once, StructuringElement::Square3);
    if (twice.foreground() != std::vector<PixelPoint>{{2, 2}}) o.fail("5x5 square does not erode to {(2,2)} in 2 steps");
    if (erode(twice, StructuringElement::Square3).has_foreground()) o.fail("third erosion of 5x5 square not empty");
    if (o.pass) o.detail = "500 mask pairs x 2 elements; 5x5 -> 3x3 -> {(2,2)} -> empty";
    return o;
}

Outcome downsampling() {
    Outcome o;
    std::mt19937_64 rng(0x1024);
    std::uniform_real_distribution<double> logd(std::log(1e-5), std::log(0.2));
    for (int i = 0; i < 100; ++i) {
        const auto m = fixtures::random_noise(rng, 1024, 1024, std::exp(logd(rng)));
        if (downsample_maxpool(m) != oracle::window_scan_downsample(m, 4)) {
            o.fail("mask " + std::to_string(i) + " differs from the 4x4 window scan");
            break;
        }
    }
    if (o.pass) o.detail = "100 masks of 1024x1024, all 65536 windows match";
    return o;
}

Outcome end_to_end() {
    Outcome o;
    const auto t0 = Clock::now();
    fixtures::TempDir dir("acceptance-e2e");
    fs::create_directories(dir / "truth");
    fs::create_directories(dir / "coarse");
    std::mt19937_64 rng(0xe2e);
    const int images = 24;
    for (int i = 0; i < images; ++i) {
        const std::string name = "wear_" + std::to_string(i) + ".png";
        const auto truth = fixtures::random_blobs(rng, 256, 256);
        BinaryMask coarse = truth;
        for (int k = 0; k < 1 + i % 3; ++k) coarse = erode(coarse, StructuringElement::Square3);
        // 1% salt noise.
        std::uniform_int_distribution<int> px(0, 256 * 256 - 1);
        for (int k = 0; k < 256 * 256 / 100; ++k) {
            const int at = px(rng);
            coarse.set(at / 256, at % 256, true);
        }
        save_mask(truth, dir / "truth" / name);
        save_mask(coarse, dir / "coarse" / name);
    }

    auto sweep = [&](const std::string& refiner) -> std::optional<std::vector<EvalRecord>> {
        const fs::path out = dir / refiner;
        const int code = cli({"eval-phase1", "--truth-dir", (dir / "truth").string(), "--coarse-dir",
                              (dir / "coarse").string(), "--out-dir", out.string(), "--refiner", refiner},
                             dir / (refiner + ".stdout"));
        if (code != 0) {
            o.fail("eval-phase1 --refiner " + refiner + " exited " + std::to_string(code));
            return std::nullopt;
        }
        if (fixtures::read_file(out / "failures.csv").find('\n') + 1 != fixtures::read_file(out / "failures.csv").size())
            o.fail(refiner + " run recorded failures");
        return read_records_csv(out / "records.csv");
    };

    double baseline_mean = 0.0;
    if (const auto records = sweep("oracle")) {
        if (records->size() != static_cast<std::size_t>(images) * 3) o.fail("oracle run is missing records");
        for (const auto& r : *records) {
            if (r.refined.eq1 != 1.0) o.fail(r.image_id + " refined eq1 = " + fmt(r.refined.eq1, 17));
            baseline_mean += r.baseline.eq1 / static_cast<double>(records->size());
        }
        if (!(baseline_mean < 0.95)) o.fail("baseline mean eq1 = " + fmt(baseline_mean) + " (needs < 0.95)");
    }
    if (const auto records = sweep("identity")) {
        if (records->size() != static_cast<std::size_t>(images) * 3) o.fail("identity run is missing records");
        for (const auto& r : *records)
            if (r.refined.eq1 - r.baseline.eq1 != 0.0 || r.refined.jaccard - r.baseline.jaccard != 0.0)
                o.fail(r.image_id + " identity delta != 0");
        for (const auto& g : aggregate(*records, SweepFactor::Method).summary)
            if (g.delta_eq1 != 0.0) o.fail("summary delta != 0 for " + g.level + "/" + g.tool_id);
    }
    const double secs = seconds_since(t0);
    if (secs >= 300.0) o.fail("took " + fmt(secs) + " s (limit 300 s)");
    if (o.pass)
        o.detail = std::to_string(images) + " images x 3 methods; oracle refined eq1 = 1, baseline mean " +
                   fmt(baseline_mean) + "; identity deltas 0; " + fmt(secs) + " s";
    return o;
}

std::string manifest_66(const fixtures::TempDir& dir, std::mt19937_64& rng) {
    fs::create_directories(dir / "labels");
    std::string csv = "image_path,label_path,tool_id\n";
    std::uniform_int_distribution<int> side(2, 60);
    for (int i = 0; i < 66; ++i) {
        const std::string stem = "t" + std::to_string(i);
        const int s = side(rng);
        save_mask(fixtures::filled_rect(64, 64, 1, 1, s, s), dir / "labels" / (stem + ".png"));
        csv += "images/" + stem + ".png,labels/" + stem + ".png,tool_a\n";
    }
    return csv;
}

Outcome determinism() {
    Outcome o;
    fixtures::TempDir dir("acceptance-det");
    std::mt19937_64 rng(0xde7);
    fixtures::write_file(dir / "m.csv", manifest_66(dir, rng));
    save_mask(fixtures::random_blobs(rng, 256, 256), dir / "mask.png");
    RgbImage img(256, 256);
    for (auto& b : img.pixels) b = static_cast<std::uint8_t>(rng());
    save_rgb(img, dir / "img.png");
    fs::create_directories(dir / "truth");
    fs::create_directories(dir / "coarse");
    for (int i = 0; i < 4; ++i) {
        const auto t = fixtures::random_blobs(rng, 256, 256);
        save_mask(t, dir / "truth" / ("c" + std::to_string(i) + ".png"));
        save_mask(erode(t, StructuringElement::Square3), dir / "coarse" / ("c" + std::to_string(i) + ".png"));
    }

    // Every file a subcommand writes, keyed by run tag.
    auto run_all = [&](const std::string& tag) {
        const fs::path r = dir / tag;
        fs::create_directories(r);
        const std::string m = (dir / "m.csv").string(), mask = (dir / "mask.png").string();
        int bad = 0;
        bad += cli({"--seed", "2024", "split", "--manifest", m, "--train-out", (r / "train.csv").string(),
                    "--test-out", (r / "test.csv").string()},
                   r / "split.out") != 0;
        bad += cli({"--seed", "2024", "subset", "--manifest", m, "--fraction", "40"}, r / "subset.out") != 0;
        bad += cli({"--seed", "2024", "augment", "--image", (dir / "img.png").string(), "--mask", mask, "--image-out",
                    (r / "aug_img.png").string(), "--mask-out", (r / "aug_mask.png").string(), "--draw", "5"},
                   r / "augment.out") != 0;
        bad += cli({"poi", "--mask", mask, "--method", "rcoga"}, r / "poi.out") != 0;
        bad += cli({"prompt", "--mask", mask, "--out", (r / "bundle.json").string()}, r / "prompt.out") != 0;
        bad += cli({"eval-phase1", "--truth-dir", (dir / "truth").string(), "--coarse-dir", (dir / "coarse").string(),
                    "--out-dir", (r / "eval").string(), "--refiner", "oracle", "--workers", "3"},
                   r / "eval.out") != 0;
        return bad;
    };
    if (run_all("a") != 0 || run_all("b") != 0) {
        o.fail("a subcommand exited non-zero");
        return o;
    }
    int compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), dir / "a");
        std::string a = fixtures::read_file(entry.path()), b = fixtures::read_file(dir / "b" / rel);
        // The prompt subcommand echoes its own output path.
        if (rel == "prompt.out") {
            const std::string pa = (dir / "a").string(), pb = (dir / "b").string();
            b.replace(b.find(pb), pb.size(), pa);
        }
        ++compared;
        if (a != b) o.fail(rel.string() + " differs between runs");
    }
    if (o.pass) o.detail = std::to_string(compared) + " output files byte-identical across two runs";
    return o;
}

Outcome bookkeeping() {
    Outcome o;
    fixtures::TempDir dir("acceptance-split");
    std::mt19937_64 rng(0x5b1);
    fixtures::write_file(dir / "m.csv", manifest_66(dir, rng));
    std::string detail;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto code = cli({"--seed", std::to_string(seed), "split", "--manifest", (dir / "m.csv").string(),
                               "--train-out", (dir / "train.csv").string(), "--test-out", (dir / "test.csv").string()},
                              dir / "split.out");
        if (code != 0) {
            o.fail("split exited " + std::to_string(code));
            return o;
        }
        const auto train = read_manifest(dir / "train.csv").entries.size();
        const auto test = read_manifest(dir / "test.csv").entries.size();
        if (train + test != 66) o.fail("split lost images");
        if (std::abs(static_cast<int>(test) - 12) > 1 || std::abs(static_cast<int>(train) - 54) > 1)
            o.fail("split " + std::to_string(train) + "/" + std::to_string(test) + " not within 1 of 54/12");
        detail = std::to_string(train) + "/" + std::to_string(test);
    }

    std::string csv = "image_path,label_path,tool_id\n";
    for (int i = 0; i < 177; ++i) csv += "i" + std::to_string(i) + ".png,l" + std::to_string(i) + ".png,tool_b\n";
    fixtures::write_file(dir / "big.csv", csv);
    if (cli({"--seed", "9", "subset", "--manifest", (dir / "big.csv").string(), "--fraction", "20", "--out",
             (dir / "sub.csv").string()},
            dir / "subset.out") != 0) {
        o.fail("subset failed");
        return o;
    }
    const auto kept = read_manifest(dir / "sub.csv").entries.size();
    if (kept != 35) o.fail("subset of 177 at 20% kept " + std::to_string(kept) + " (want 35)");
    if (o.pass) o.detail = "66 -> " + detail + " train/test; 177 at 20% -> " + std::to_string(kept);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"poi-invariants", poi_invariants},
        {"oracle-equivalence", oracle_equivalence},
        {"metric-identities", metric_identities},
        {"anova", anova_agreement},
        {"morphology", morphology},
        {"downsampling", downsampling},
        {"end-to-end-sweep", end_to_end},
        {"determinism", determinism},
        {"split-subset-bookkeeping", bookkeeping},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome result;
        try {
            result = run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        failed += !result.pass;
        std::cout << (result.pass ? "PASS " : "FAIL ") << name << ": " << result.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "printers.hpp"
#include "wearprompt/error.hpp"
#include "wearprompt/poi.hpp"

using namespace wearprompt;
using fixtures::from_ascii;

namespace {

PoiConfig config(PoiMethod m, int neg = 10) {
    PoiConfig cfg;
    cfg.method = m;
    cfg.neg_distance = neg;
    return cfg;
}

BinaryMask shifted(const BinaryMask& m, int dr, int dc, int pad) {
    BinaryMask out(m.width() + pad, m.height() + pad);
    for (const auto& p : m.foreground()) out.set(p.row + dr, p.col + dc, true);
    return out;
}

BinaryMask mirrored(const BinaryMask& m) {
    BinaryMask out(m.width(), m.height());
    for (const auto& p : m.foreground()) out.set(p.row, m.width() - 1 - p.col, true);
    return out;
}

}  // namespace

TEST_CASE("round half down") {
    CHECK(round_half_down({0.5, 1.5}) == PixelPoint{0, 1});
    CHECK(round_half_down({0.6, 1.49}) == PixelPoint{1, 1});
    CHECK(round_half_down({2.0, 2.5000001}) == PixelPoint{2, 3});
}

TEST_CASE("method names") {
    CHECK(parse_poi_method("RCoGA") == PoiMethod::RCoGA);
    CHECK(parse_poi_method("ms") == PoiMethod::MS);
    CHECK(parse_poi_method("CoGa") == PoiMethod::CoGA);
    CHECK(to_string(PoiMethod::CoGA) == "CoGA");
    CHECK_THROWS_AS(parse_poi_method("centroid"), Error);
}

TEST_CASE("config validation") {
    PoiConfig cfg;
    cfg.max_depth = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.neg_distance = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.min_segment_area = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("MS shrinks a square to its center") {
    CHECK(poi_ms(BinaryMask(5, 5, true), config(PoiMethod::MS)) == std::vector<PixelPoint>{{2, 2}});
    const auto two = from_ascii({
        ".........",
        ".###.###.",
        ".###.###.",
        ".###.###.",
        ".........",
    });
    CHECK(poi_ms(two, config(PoiMethod::MS)) == std::vector<PixelPoint>{{2, 2}, {2, 6}});
}

TEST_CASE("MS on an elongated bar keeps the center line") {
    const auto bar = fixtures::filled_rect(11, 5, 1, 1, 3, 9);
    auto cfg = config(PoiMethod::MS);
    CHECK(poi_ms(bar, cfg) == std::vector<PixelPoint>{{2, 5}});
    cfg.ms_all_pixels = true;
    const auto line = poi_ms(bar, cfg);
    CHECK(line.size() == 7);
    for (const auto& p : line) CHECK(p.row == 2);
}

TEST_CASE("MS points survive k-1 erosions of their component") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = fixtures::random_blob_mask(rng, 24, 64);
        const auto cfg = config(PoiMethod::MS);
        const auto points = poi_ms(m, cfg);
        const auto comps = oracle::flood_fill(oracle::foreground(m), true);
        REQUIRE(points.size() == comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) {
            oracle::PxSet cur = comps[i];
            for (auto next = oracle::erode(cur, true); !next.empty(); next = oracle::erode(cur, true)) cur = next;
            CHECK(cur.count({points[i].row, points[i].col}) == 1);
        }
    }
}

TEST_CASE("CoGA: centroid inside, ring and L shape") {
    CHECK(poi_coga(BinaryMask(3, 3, true), config(PoiMethod::CoGA)) == std::vector<PixelPoint>{{1, 1}});

    const auto l = from_ascii({"###", "#..", "#.."});
    const auto got = poi_coga(l, config(PoiMethod::CoGA));
    REQUIRE(got.size() == 1);
    CHECK(l.at(got[0]));
    CHECK(oracle::as_pairs(got) == oracle::coga(l, {}));

    const auto r = fixtures::ring(15, 6.0);
    const auto on_ring = poi_coga(r, config(PoiMethod::CoGA));
    REQUIRE(on_ring.size() == 1);
    CHECK(r.at(on_ring[0]));
    CHECK(oracle::as_pairs(on_ring) == oracle::coga(r, {}));
}

TEST_CASE("RCoGA: recursion only when the centroid is outside") {
    CHECK(poi_rcoga(BinaryMask(3, 3, true), config(PoiMethod::RCoGA)) == std::vector<PixelPoint>{{1, 1}});

    const auto r = fixtures::ring(15, 6.0);
    const auto pts = poi_rcoga(r, config(PoiMethod::RCoGA));
    CHECK(pts.size() >= 2);
    for (const auto& p : pts) CHECK(r.at(p));
    CHECK(oracle::as_pairs(pts) == oracle::rcoga(r, {}));
}

TEST_CASE("RCoGA at depth 1 equals the depth-limited oracle") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = trial % 3 == 0 ? fixtures::ring(9 + trial % 20, 3.0 + (trial % 20) / 3.0)
                                      : fixtures::random_blob_mask(rng, 16, 48);
        auto cfg = config(PoiMethod::RCoGA);
        cfg.max_depth = 1;
        auto p = oracle::params_of(cfg);
        CHECK(oracle::as_pairs(poi_rcoga(m, cfg)) == oracle::rcoga(m, p));
    }
}

TEST_CASE("gen_negatives hand walk") {
    const auto m = fixtures::filled_rect(9, 9, 3, 3, 3, 3);
    const auto neg = gen_negatives(m, {{4, 4}}, config(PoiMethod::CoGA, 2));
    CHECK(neg == std::vector<PixelPoint>{{4, 7}, {4, 1}, {7, 4}, {1, 4}});

    const auto composed = generate_prompt_points(m, config(PoiMethod::CoGA, 2));
    CHECK(composed.positives == std::vector<PixelPoint>{{4, 4}});
    CHECK(composed.negatives == neg);
}

TEST_CASE("gen_negatives drops out-of-bounds and foreground candidates") {
    const auto edge = fixtures::filled_rect(8, 8, 2, 0, 3, 4);
    const auto neg = gen_negatives(edge, {{3, 1}}, config(PoiMethod::CoGA, 2));
    CHECK(neg == std::vector<PixelPoint>{{3, 5}, {6, 1}, {0, 1}});

    const auto two = from_ascii({
        "..........",
        ".##...##..",
        ".##...##..",
        "..........",
    });
    // +col from (1,1): last foreground is col 2, +4 lands on col 6 in the other blob.
    const auto n = gen_negatives(two, {{1, 1}}, config(PoiMethod::CoGA, 4));
    CHECK(std::find(n.begin(), n.end(), PixelPoint{1, 6}) == n.end());
    CHECK(oracle::as_pairs(n) == oracle::negatives(two, {{1, 1}}, oracle::params_of(config(PoiMethod::CoGA, 4))));

    CHECK_THROWS_AS(gen_negatives(two, {{0, 0}}, config(PoiMethod::CoGA)), Error);
}

TEST_CASE("empty masks are rejected") {
    const BinaryMask empty(6, 6);
    for (auto m : {PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA}) {
        try {
            generate_prompt_points(empty, config(m));
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EmptyInput);
        }
    }
}

TEST_CASE("catalog shapes match the rule oracles for every method") {
    for (const auto& [name, mask] : fixtures::shape_catalog()) {
        CAPTURE(name);
        for (auto conn : {Connectivity::Eight, Connectivity::Four}) {
            for (auto se : {StructuringElement::Square3, StructuringElement::Cross3}) {
                PoiConfig cfg;
                cfg.connectivity = conn;
                cfg.se_shape = se;
                cfg.neg_distance = 3;
                cfg.min_segment_area = 4;
                const auto p = oracle::params_of(cfg);
                CHECK(oracle::as_pairs(poi_ms(mask, cfg)) == oracle::ms(mask, p));
                CHECK(oracle::as_pairs(poi_coga(mask, cfg)) == oracle::coga(mask, p));
                CHECK(oracle::as_pairs(poi_rcoga(mask, cfg)) == oracle::rcoga(mask, p));
                const auto pos = poi_rcoga(mask, cfg);
                CHECK(oracle::as_pairs(gen_negatives(mask, pos, cfg)) == oracle::negatives(mask, oracle::as_pairs(pos), p));
            }
        }
    }
}

TEST_CASE("prompt invariants over random masks") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = fixtures::random_blob_mask(rng, 16, 96);
        const auto ncomp = connected_components(m, Connectivity::Eight).count;
        std::size_t coga_count = 0;
        for (auto method : {PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA}) {
            const auto pts = generate_prompt_points(m, config(method, 5));
            CHECK_FALSE(pts.positives.empty());
            for (const auto& p : pts.positives) CHECK(m.at(p));
            for (const auto& n : pts.negatives) {
                REQUIRE(m.in_bounds(n));
                CHECK_FALSE(m.at(n));
            }
            if (method == PoiMethod::MS) CHECK(pts.positives.size() == static_cast<std::size_t>(ncomp));
            if (method == PoiMethod::CoGA) coga_count = pts.positives.size();
            if (method == PoiMethod::RCoGA) CHECK(pts.positives.size() >= coga_count);
            CHECK(generate_prompt_points(m, config(method, 5)) == pts);
        }
    }
}

TEST_CASE("translation equivariance") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = fixtures::random_blob_mask(rng, 16, 40);
        const int dr = static_cast<int>(rng() % 7), dc = static_cast<int>(rng() % 7);
        const auto moved = shifted(m, dr, dc, 8);
        for (auto method : {PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA}) {
            auto a = generate_prompt_points(m, config(method)).positives;
            const auto b = generate_prompt_points(moved, config(method)).positives;
            for (auto& p : a) p = {p.row + dr, p.col + dc};
            CHECK(a == b);
        }
    }
}

TEST_CASE("mirror equivariance on tie-free shapes") {
    // Asymmetric shape with no rounding or nearest-pixel ties for any method.
    const auto m = from_ascii({
        "............",
        ".######.....",
        ".#########..",
        ".##########.",
        "...#######..",
        "............",
    });
    const auto mm = mirrored(m);
    for (auto method : {PoiMethod::MS, PoiMethod::CoGA, PoiMethod::RCoGA}) {
        const auto a = generate_prompt_points(m, config(method, 1)).positives;
        auto b = generate_prompt_points(mm, config(method, 1)).positives;
        for (auto& p : b) p.col = m.width() - 1 - p.col;
        std::sort(b.begin(), b.end());
        auto sa = a;
        std::sort(sa.begin(), sa.end());
        CAPTURE(to_string(method));
        CHECK(sa == b);
    }
}

#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace fixtures {

namespace fs = std::filesystem;

BinaryMask from_ascii(const std::vector<std::string>& rows) {
    const int h = static_cast<int>(rows.size());
    const int w = h == 0 ? 0 : static_cast<int>(rows.front().size());
    BinaryMask m(w, h);
    for (int r = 0; r < h; ++r) {
        if (static_cast<int>(rows[r].size()) != w) throw std::invalid_argument("ragged ascii mask");
        for (int c = 0; c < w; ++c) m.set(r, c, rows[r][c] == '#');
    }
    return m;
}

std::string to_ascii(const BinaryMask& mask) {
    std::string out;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) out += mask.at(r, c) ? '#' : '.';
        out += '\n';
    }
    return out;
}

BinaryMask random_noise(std::mt19937_64& rng, int width, int height, double density) {
    std::bernoulli_distribution on(density);
    BinaryMask m(width, height);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) m.set(r, c, on(rng));
    return m;
}

BinaryMask random_blobs(std::mt19937_64& rng, int width, int height) {
    BinaryMask m(width, height);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const double cr = unit(rng) * height;
        const double cc = unit(rng) * width;
        const double ar = 1.0 + unit(rng) * height * 0.3;
        const double ac = 1.0 + unit(rng) * width * 0.3;
        const double theta = unit(rng) * 3.14159265358979;
        const bool rect = unit(rng) < 0.3;
        const double cs = std::cos(theta), sn = std::sin(theta);
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                const double dr = r - cr, dc = c - cc;
                const double u = (dr * cs + dc * sn) / ar;
                const double v = (-dr * sn + dc * cs) / ac;
                const bool inside = rect ? (std::abs(u) <= 1.0 && std::abs(v) <= 1.0) : (u * u + v * v <= 1.0);
                if (inside) m.set(r, c, true);
            }
        }
    }
    if (!m.has_foreground()) {
        m.set(height / 2, width / 2, true);
    }
    return m;
}

BinaryMask random_blob_mask(std::mt19937_64& rng, int min_side, int max_side) {
    std::uniform_int_distribution<int> side(min_side, max_side);
    const int s = side(rng);
    return random_blobs(rng, s, s);
}

BinaryMask filled_rect(int width, int height, int top, int left, int rows, int cols) {
    BinaryMask m(width, height);
    for (int r = top; r < top + rows; ++r)
        for (int c = left; c < left + cols; ++c) m.set(r, c, true);
    return m;
}

BinaryMask annulus(int size, double inner, double outer) {
    BinaryMask m(size, size);
    const double center = (size - 1) / 2.0;
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double d = std::hypot(r - center, c - center);
            if (d >= inner && d <= outer) m.set(r, c, true);
        }
    }
    return m;
}

BinaryMask ring(int size, double radius) { return annulus(size, radius - 0.5, radius + 0.5); }

BinaryMask disk(int size, double cr, double cc, double radius) {
    BinaryMask m(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            if (std::hypot(r - cr, c - cc) <= radius) m.set(r, c, true);
    return m;
}

namespace {

BinaryMask unite(const BinaryMask& a, const BinaryMask& b) {
    BinaryMask m = a;
    for (int r = 0; r < a.height(); ++r)
        for (int c = 0; c < a.width(); ++c)
            if (b.at(r, c)) m.set(r, c, true);
    return m;
}

BinaryMask subtract(const BinaryMask& a, const BinaryMask& b) {
    BinaryMask m = a;
    for (int r = 0; r < a.height(); ++r)
        for (int c = 0; c < a.width(); ++c)
            if (b.at(r, c)) m.set(r, c, false);
    return m;
}

}  // namespace

std::vector<NamedMask> shape_catalog() {
    std::vector<NamedMask> out;
    auto add = [&](std::string name, BinaryMask m) { out.push_back({std::move(name), std::move(m)}); };

    add("square3", from_ascii({".....", ".###.", ".###.", ".###.", "....."}));
    add("square5", filled_rect(5, 5, 0, 0, 5, 5));
    add("single_pixel", from_ascii({"...", ".#.", "..."}));
    add("l_small", from_ascii({"###", "#..", "#.."}));
    add("l_large", from_ascii({
        "............",
        ".##.........",
        ".##.........",
        ".##.........",
        ".##.........",
        ".##.........",
        ".##.........",
        ".#########..",
        ".#########..",
        "............",
    }));
    add("c_shape", from_ascii({
        "..........",
        ".#######..",
        ".#######..",
        ".##.......",
        ".##.......",
        ".##.......",
        ".#######..",
        ".#######..",
        "..........",
    }));
    add("u_shape", from_ascii({
        "#.......#",
        "#.......#",
        "#.......#",
        "#.......#",
        "#########",
    }));
    add("two_blobs", from_ascii({
        "............",
        ".###....###.",
        ".###....###.",
        ".###....###.",
        "............",
    }));
    add("two_blobs_near", from_ascii({
        "##...##",
        "##...##",
        "##...##",
    }));
    add("diagonal_pair", from_ascii({"#.", ".#"}));
    add("hline", from_ascii({".........", ".#######.", "........."}));
    add("vline", from_ascii({".#.", ".#.", ".#.", ".#.", ".#.", ".#."}));
    add("diagonal_line", from_ascii({"#.....", ".#....", "..#...", "...#..", "....#.", ".....#"}));
    add("antidiagonal_line", from_ascii({".....#", "....#.", "...#..", "..#...", ".#....", "#....."}));
    add("ring9", ring(9, 3.0));
    add("ring15", ring(15, 6.0));
    add("ring31", ring(31, 13.0));
    add("annulus_thick", annulus(25, 6.0, 10.0));
    add("crescent", subtract(disk(24, 11.5, 11.5, 10.0), disk(24, 11.5, 15.5, 8.0)));
    add("crescent_wide", subtract(disk(32, 15.5, 15.5, 14.0), disk(32, 10.0, 15.5, 12.0)));
    add("edge_touching", filled_rect(10, 8, 0, 0, 4, 10));
    add("corner_blob", filled_rect(12, 12, 8, 8, 4, 4));
    add("plus_sign", from_ascii({
        "...#...",
        "...#...",
        "...#...",
        "#######",
        "...#...",
        "...#...",
        "...#...",
    }));
    add("checker_diag", from_ascii({"#.#.", ".#.#", "#.#.", ".#.#"}));
    add("ring_and_dot", unite(ring(21, 8.0), disk(21, 10.0, 10.0, 1.0)));
    add("spiral", from_ascii({
        "##########",
        "#........#",
        "#.######.#",
        "#.#....#.#",
        "#.#.##.#.#",
        "#.#..#.#.#",
        "#.####.#.#",
        "#......#.#",
        "########.#",
    }));

    std::mt19937_64 rng(0x5eed5ULL);
    for (int i = 0; i < 4; ++i) {
        add("random_blob_" + std::to_string(i), random_blob_mask(rng, 32, 64));
    }
    return out;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("wearprompt_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace fixtures

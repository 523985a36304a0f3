#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "core/errors.hpp"
#include "core/layout.hpp"
#include "oracles.hpp"

using namespace socio;

namespace {

// Reference recurrence: pairwise repulsion r*k^2/d, attraction d^2/k along
// undirected deduplicated non-loop edges, displacement capped by the linear
// temperature, positions clamped to the canvas.
std::vector<Point> ref_fr(std::size_t n,
                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                          std::vector<Point> pos, double repulsion, std::size_t iterations,
                          double width, double height) {
    if (n < 2 || iterations == 0) return pos;
    std::set<std::pair<std::uint32_t, std::uint32_t>> und;
    for (auto [a, b] : edges) {
        if (a == b) continue;
        und.insert({std::min(a, b), std::max(a, b)});
    }
    const double k = std::sqrt(width * height / double(n));
    const double t0 = width / 10.0;
    for (std::size_t iter = 0; iter < iterations; ++iter) {
        const double t = t0 * double(iterations - iter) / double(iterations);
        std::vector<Point> disp(n, {0.0, 0.0});
        auto delta = [&](std::size_t i, std::size_t j, double& dx, double& dy, double& d) {
            dx = pos[i].x - pos[j].x;
            dy = pos[i].y - pos[j].y;
            d = std::sqrt(dx * dx + dy * dy);
            if (d < 1e-9) {
                dx = 1e-6;
                dy = 0.0;
                d = 1e-6;
            }
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx, dy, d;
                delta(i, j, dx, dy, d);
                const double f = repulsion * k * k / d;
                disp[i].x += dx / d * f;
                disp[i].y += dy / d * f;
                disp[j].x -= dx / d * f;
                disp[j].y -= dy / d * f;
            }
        for (auto [u, v] : und) {
            double dx, dy, d;
            delta(u, v, dx, dy, d);
            const double f = d * d / k;
            disp[u].x -= dx / d * f;
            disp[u].y -= dy / d * f;
            disp[v].x += dx / d * f;
            disp[v].y += dy / d * f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
            if (len > 0.0) {
                const double step = std::min(len, t);
                pos[i].x += disp[i].x / len * step;
                pos[i].y += disp[i].y / len * step;
            }
            pos[i].x = std::clamp(pos[i].x, 0.0, width);
            pos[i].y = std::clamp(pos[i].y, 0.0, height);
        }
    }
    return pos;
}

double mean_pair_distance(const std::vector<Point>& pos) {
    double sum = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            sum += std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y);
            ++pairs;
        }
    return pairs ? sum / double(pairs) : 0.0;
}

} // namespace

TEST_CASE("layout validates its inputs") {
    auto g = oracle::make_graph({{0, 1}});
    CHECK_THROWS_AS(fr_layout(g, 0.0, 5, 1), contract_error);
    CHECK_THROWS_AS(fr_layout(g, -1.0, 5, 1), contract_error);
    CHECK_THROWS_AS(fr_layout(g, 1.0, 5, 1, 0.0, 100.0), contract_error);
    CHECK_THROWS_AS(fr_layout_from(g, {{0, 0}}, 1.0, 5), contract_error);
}

TEST_CASE("degenerate layouts") {
    auto empty = build_graph(parse_edge_csv("source,target\n"), DedupMode::CollapsePairs);
    auto r0 = fr_layout(empty, 1.0, 10, 7);
    CHECK(r0.positions.empty());
    CHECK(r0.iterations_run == 10);
    CHECK(r0.seed == 7);
    CHECK(r0.repulsion_multiplier == doctest::Approx(1.0));

    auto single = oracle::make_graph({{0, 0}});
    auto r1 = fr_layout(single, 2.5, 10, 7);
    REQUIRE(r1.positions.size() == 1);
    CHECK(r1.positions[0].x == doctest::Approx(500.0));
    CHECK(r1.positions[0].y == doctest::Approx(500.0));
}

TEST_CASE("zero iterations returns the seeded placement") {
    auto g = oracle::make_graph({{0, 1}, {1, 2}, {2, 3}});
    auto placed = fr_layout(g, 3.5, 0, 99);
    auto moved = fr_layout(g, 3.5, 4, 99);
    REQUIRE(placed.positions.size() == 4);
    auto finished = fr_layout_from(g, placed.positions, 3.5, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(finished.positions[i].x == doctest::Approx(moved.positions[i].x).epsilon(1e-12));
        CHECK(finished.positions[i].y == doctest::Approx(moved.positions[i].y).epsilon(1e-12));
    }
}

TEST_CASE("seeded layout is deterministic and seed-sensitive") {
    auto g = oracle::make_graph({{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    auto a = fr_layout(g, 3.5, 10, 42);
    auto b = fr_layout(g, 3.5, 10, 42);
    REQUIRE(a.positions.size() == b.positions.size());
    for (std::size_t i = 0; i < a.positions.size(); ++i) {
        CHECK(a.positions[i].x == b.positions[i].x);
        CHECK(a.positions[i].y == b.positions[i].y);
    }
    auto c = fr_layout(g, 3.5, 10, 43);
    bool differs = false;
    for (std::size_t i = 0; i < a.positions.size(); ++i)
        differs = differs || a.positions[i].x != c.positions[i].x ||
                  a.positions[i].y != c.positions[i].y;
    CHECK(differs);
}

TEST_CASE("one hand-checked step") {
    auto g = oracle::make_graph({{0, 1}});
    std::vector<Point> start = {{400, 500}, {600, 500}};
    auto r = fr_layout_from(g, start, 1.0, 1);
    // Repulsion k^2/200 = 2500 dominates attraction 200^2/k ~ 56.57; the net
    // displacement exceeds the temperature 100, so each vertex moves 100.
    CHECK(r.positions[0].x == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(r.positions[0].y == doctest::Approx(500.0).epsilon(1e-12));
    CHECK(r.positions[1].x == doctest::Approx(700.0).epsilon(1e-12));
    CHECK(r.positions[1].y == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("recurrence matches the reference implementation") {
    std::mt19937_64 eng(2024);
    std::uniform_real_distribution<double> coord(0.0, 1000.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::size_t> nv(2, 12);
        const std::size_t n = nv(eng);
        auto edges = oracle::random_edges(eng, n, 2 * n);
        // compact ids the way the sorted name table does, so reference
        // indices line up with graph indices
        std::set<std::uint32_t> used;
        for (auto [a, b] : edges) {
            used.insert(a);
            used.insert(b);
        }
        std::map<std::uint32_t, std::uint32_t> dense;
        for (auto v : used) dense[v] = static_cast<std::uint32_t>(dense.size());
        for (auto& [a, b] : edges) {
            a = dense[a];
            b = dense[b];
        }
        auto g = oracle::make_graph(edges);
        std::vector<Point> start(g.vertex_count());
        for (auto& p : start) p = {coord(eng), coord(eng)};

        auto got = fr_layout_from(g, start, 3.5, 5);
        auto want = ref_fr(g.vertex_count(), edges, start, 3.5, 5, 1000.0, 1000.0);
        REQUIRE(got.positions.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(got.positions[i].x == doctest::Approx(want[i].x).epsilon(1e-9));
            CHECK(got.positions[i].y == doctest::Approx(want[i].y).epsilon(1e-9));
        }
    }
}

TEST_CASE("positions stay inside the canvas") {
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto edges = oracle::random_edges(eng, 15, 30);
        auto g = oracle::make_graph(edges);
        auto r = fr_layout(g, 8.0, 25, trial);
        for (const auto& p : r.positions) {
            CHECK(p.x >= 0.0);
            CHECK(p.x <= 1000.0);
            CHECK(p.y >= 0.0);
            CHECK(p.y <= 1000.0);
        }
    }
}

TEST_CASE("coincident vertices separate") {
    auto g = oracle::make_graph({{0, 1}});
    auto r = fr_layout_from(g, {{500, 500}, {500, 500}}, 1.0, 1);
    CHECK(r.positions[0].x != r.positions[1].x);
}

TEST_CASE("edge multiplicity and loops do not change the layout") {
    std::vector<Point> start = {{100, 100}, {900, 200}, {400, 800}};
    auto lean = oracle::make_graph({{0, 1}, {1, 2}});
    auto noisy = oracle::make_graph({{0, 1}, {1, 0}, {0, 1}, {1, 2}, {2, 2}});
    auto a = fr_layout_from(lean, start, 3.5, 6);
    auto b = fr_layout_from(noisy, start, 3.5, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.positions[i].x == doctest::Approx(b.positions[i].x).epsilon(1e-12));
        CHECK(a.positions[i].y == doctest::Approx(b.positions[i].y).epsilon(1e-12));
    }
}

TEST_CASE("stronger repulsion spreads a triangle wider") {
    auto g = oracle::make_graph({{0, 1}, {1, 2}, {0, 2}});
    std::vector<Point> start = {{450, 450}, {550, 450}, {500, 550}};
    auto tight = fr_layout_from(g, start, 0.5, 15);
    auto loose = fr_layout_from(g, start, 8.0, 15);
    CHECK(mean_pair_distance(loose.positions) >= mean_pair_distance(tight.positions));
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "netdeploy/voronoi.hpp"
#include "support/instances.hpp"

using namespace netdeploy;
namespace ts = testing_support;

namespace {

CollapsedNetwork bary_at(const std::vector<Point2>& pts) {
    CollapsedNetwork c;
    for (const auto& p : pts) c.barycenters.push_back({p, 1.0, 0, 0, 1.0});
    c.resolution = 1.0;
    return c;
}

// Length of the bisector of (i, j) that stays closer to i and j than to any other
// sensor: intersect the half-lines along the bisector, one linear constraint each.
double shared_boundary(const SensorSet& p, std::size_t i, std::size_t j) {
    const Point2 mid = 0.5 * (p[i] + p[j]);
    const Vector2 n = p[j] - p[i];
    const Vector2 dir(-n.y(), n.x());
    double lo = -1e6, hi = 1e6;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == i || k == j) continue;
        // |x - p_i|^2 <= |x - p_k|^2  <=>  2 x.(p_k - p_i) <= |p_k|^2 - |p_i|^2
        const Vector2 w = p[k] - p[i];
        const double rhs = p[k].squaredNorm() - p[i].squaredNorm();
        const double a = 2.0 * dir.dot(w);
        const double b = rhs - 2.0 * mid.dot(w);
        if (a > 0) hi = std::min(hi, b / a);
        else if (a < 0) lo = std::max(lo, b / a);
        else if (b < 0) return 0.0;
    }
    return std::max(0.0, hi - lo) * dir.norm();
}

} // namespace

TEST_CASE("allocate_barycenters_lex: small cases") {
    CHECK(allocate_barycenters_lex(bary_at({{1, 0}}), {{0, 0}, {2, 0}}).owner[0] == 0);
    const auto all = allocate_barycenters_lex(bary_at({{1, 0}, {5, 5}, {-3, 2}}), {{0, 0}});
    CHECK(all.owner == std::vector<std::size_t>{0, 0, 0});
    CHECK(allocate_barycenters_lex(bary_at({{1, 0}}), {{0, 0}, {10, 0}}).owner[0] == 0);
    CHECK(allocate_barycenters_lex(bary_at({{9, 0}}), {{0, 0}, {10, 0}}).owner[0] == 1);
}

TEST_CASE("allocate_barycenters_lex: degenerate sensors") {
    CHECK_THROWS_AS(allocate_barycenters_lex(bary_at({{1, 0}}), {{0, 0}, {0, 0}}), DegenerateConfiguration);
    CHECK_THROWS_AS(allocate_barycenters_lex(bary_at({{1, 0}}), {}), DegenerateConfiguration);
}

TEST_CASE("allocate_barycenters_lex matches brute force and partitions") {
    ts::Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Network n = ts::random_network(rng, 5 + trial % 16);
        const auto c = build_collapsed(n, 0.4, uniform_density());
        const SensorSet p = ts::random_plane_sensors(rng, 1 + trial % 10, 0, 10);
        std::vector<Point2> pts;
        for (const auto& b : c.barycenters) pts.push_back(b.position);
        const auto alloc = allocate_barycenters_lex(c, p);
        CHECK(alloc.owner == ts::brute_allocation(pts, p));
        std::size_t total = 0;
        for (std::size_t i = 0; i < p.size(); ++i) total += alloc.cell(i).size();
        CHECK(total == c.barycenters.size());
    }
}

TEST_CASE("clip_network_cells: small cases") {
    const Network n({{0, 0}, {2, 0}}, {{0, 1}});
    auto cells = clip_network_cells(n, {{0, 1}, {2, 1}});
    REQUIRE(cells.by_segment[0].size() == 2);
    CHECK(cells.by_segment[0][0].t1 == 0.5);
    CHECK(cells.by_segment[0][0].owner == 0);
    CHECK(cells.by_segment[0][1].owner == 1);
    CHECK(cells.breakpoints(0) == std::vector<double>{0.5});

    cells = clip_network_cells(n, {{7, 3}});
    REQUIRE(cells.by_segment[0].size() == 1);
    CHECK(cells.by_segment[0][0].t0 == 0.0);
    CHECK(cells.by_segment[0][0].t1 == 1.0);

    cells = clip_network_cells(n, {{1, 1}, {1, -1}});
    REQUIRE(cells.by_segment[0].size() == 1);
    CHECK(cells.by_segment[0][0].owner == 0);
    CHECK(cells.by_sensor[1].empty());

    CHECK_THROWS_AS(clip_network_cells(n, {{1, 1}, {1, 1}}), DegenerateConfiguration);
}

TEST_CASE("clip_network_cells tiling and ownership on random instances") {
    ts::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Network n = ts::random_network(rng, 5 + trial % 16);
        const SensorSet p = ts::random_plane_sensors(rng, 1 + trial % 10, 0, 10);
        const auto cells = clip_network_cells(n, p);
        for (std::size_t k = 0; k < n.segment_count(); ++k) {
            const auto& pieces = cells.by_segment[k];
            REQUIRE(!pieces.empty());
            CHECK(pieces.front().t0 == 0.0);
            CHECK(pieces.back().t1 == 1.0);
            for (std::size_t j = 0; j < pieces.size(); ++j) {
                CHECK(pieces[j].t0 < pieces[j].t1);
                if (j > 0) CHECK(pieces[j].t0 == pieces[j - 1].t1);
                const Point2 q = point_at(n.segment(k), 0.5 * (pieces[j].t0 + pieces[j].t1));
                const double own = (q - p[pieces[j].owner]).norm();
                for (const auto& s : p) CHECK(own <= (q - s).norm() + 1e-9);
            }
        }
    }
}

TEST_CASE("delaunay_neighbors: small cases") {
    auto g = delaunay_neighbors({{0, 0}, {1, 0}, {2, 0}});
    CHECK(g.adjacency[1] == std::set<std::size_t>{0, 2});
    CHECK(g.adjacency[0] == std::set<std::size_t>{1});
    CHECK(g.adjacency[2] == std::set<std::size_t>{1});

    g = delaunay_neighbors({{3, 4}});
    REQUIRE(g.adjacency.size() == 1);
    CHECK(g.adjacency[0].empty());

    g = delaunay_neighbors({{3, 4}, {-1, 0}});
    CHECK(g.adjacency[0] == std::set<std::size_t>{1});

    // Diagonals of a square meet only at the center: not neighbors.
    g = delaunay_neighbors({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(g.adjacency[0] == std::set<std::size_t>{1, 2});
    CHECK(g.adjacency[1] == std::set<std::size_t>{0, 3});
    CHECK(g.adjacency[2] == std::set<std::size_t>{0, 3});
    CHECK(g.adjacency[3] == std::set<std::size_t>{1, 2});

    CHECK_THROWS_AS(delaunay_neighbors({{0, 0}, {0, 0}}), DegenerateConfiguration);
}

TEST_CASE("delaunay_neighbors matches the bisector oracle") {
    ts::Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const SensorSet p = ts::random_plane_sensors(rng, 3 + trial % 12, 0, 10);
        const auto g = delaunay_neighbors(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(g.adjacency[i].count(i) == 0);
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (i == j) continue;
                CHECK(g.adjacency[i].count(j) == g.adjacency[j].count(i));
                const double len = shared_boundary(p, i, j);
                if (len > 1e-6) CHECK(g.adjacency[i].count(j) == 1);
                if (len < 1e-12) CHECK(g.adjacency[i].count(j) == 0);
            }
        }
    }
}

#include <doctest.h>

#include <cmath>

#include "netdeploy/network.hpp"
#include "support/instances.hpp"

using namespace netdeploy;

namespace {

bool has(const std::vector<Violation>& v, Violation::Kind kind) {
    for (const auto& x : v)
        if (x.kind == kind) return true;
    return false;
}

// Independent check: proper crossing of two segments via signed areas.
bool crosses(const Point2& p, const Point2& q, const Point2& r, const Point2& s) {
    auto side = [](const Point2& a, const Point2& b, const Point2& c) {
        return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    };
    return side(p, q, r) * side(p, q, s) < 0 && side(r, s, p) * side(r, s, q) < 0;
}

} // namespace

TEST_CASE("validate_network: minimal valid network") {
    CHECK(validate_network(Network({{0, 0}, {1, 0}}, {{0, 1}})).empty());
}

TEST_CASE("validate_network: isolated vertex") {
    const auto v = validate_network(Network({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}}));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::IsolatedVertex);
    CHECK(v[0].indices == std::vector<std::size_t>{2});
}

TEST_CASE("validate_network: crossing segments") {
    const std::vector<Point2> pts = {{0, 0}, {2, 2}, {0, 2}, {2, 0}};
    REQUIRE(crosses(pts[0], pts[1], pts[2], pts[3]));
    const auto v = validate_network(Network(pts, {{0, 1}, {2, 3}}));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::SegmentIntersection);
    CHECK(v[0].indices == std::vector<std::size_t>{0, 1});
}

TEST_CASE("validate_network: other invariants") {
    CHECK(has(validate_network(Network({{0, 0}, {0, 0}, {1, 0}}, {{0, 2}, {1, 2}})), Violation::Kind::DuplicateVertex));
    CHECK(has(validate_network(Network({{0, 0}, {1, 0}}, {{0, 1}, {1, 0}})), Violation::Kind::DuplicateSegment));
    CHECK(has(validate_network(Network({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}})), Violation::Kind::SelfLoop));
    CHECK(has(validate_network(Network({{0, 0}, {1, 0}}, {{0, 7}})), Violation::Kind::BadIndex));
    CHECK(has(validate_network(Network({{0, 0}, {NAN, 0}}, {{0, 1}})), Violation::Kind::NonFiniteVertex));
    // collinear overlap
    CHECK(has(validate_network(Network({{0, 0}, {2, 0}, {1, 0}, {3, 0}}, {{0, 1}, {2, 3}})),
              Violation::Kind::SegmentIntersection));
    // an endpoint on another segment's interior leaves the open interiors disjoint
    CHECK(validate_network(Network({{0, 0}, {2, 0}, {1, 0}, {1, 1}}, {{0, 1}, {2, 3}})).empty());
    // segments sharing an endpoint are fine
    CHECK(validate_network(Network({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {0, 2}})).empty());
    CHECK_THROWS_AS(require_valid(Network({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}})), ValidationError);
}

TEST_CASE("build_collapsed: counts and weights") {
    const Network one({{0, 0}, {1, 0}}, {{0, 1}});
    const auto c = build_collapsed(one, 0.3, uniform_density());
    CHECK(c.barycenters.size() == 4);

    const auto coarse = build_collapsed(one, 2.0, uniform_density());
    REQUIRE(coarse.barycenters.size() == 1);
    CHECK(coarse.barycenters[0].position == Point2(0.5, 0));

    const auto two = build_collapsed(Network({{0, 0}, {2, 0}}, {{0, 1}}), 1.0, uniform_density());
    REQUIRE(two.barycenters.size() == 2);
    CHECK(two.barycenters[0].position == Point2(0.5, 0));
    CHECK(two.barycenters[1].position == Point2(1.5, 0));
    CHECK(two.barycenters[0].weight == 1.0);
    CHECK(two.barycenters[1].weight == 1.0);

    CHECK_THROWS_AS(build_collapsed(one, 0.0, uniform_density()), InvalidArgument);
    CHECK_THROWS_AS(build_collapsed(one, -1.0, uniform_density()), InvalidArgument);
}

TEST_CASE("build_collapsed: lengths that are exact multiples of r do not gain a sliver") {
    const Network n({{0, 0}, {1.6, 0}}, {{0, 1}});
    CHECK(build_collapsed(n, 0.1, uniform_density()).barycenters.size() == 16);
    CHECK(build_collapsed(n, 0.4, uniform_density()).barycenters.size() == 4);
    CHECK(build_collapsed(n, 0.05, uniform_density()).barycenters.size() == 32);
}

TEST_CASE("build_collapsed invariants on random networks") {
    testing_support::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Network n = testing_support::random_network(rng, 5 + trial % 10);
        const DensityField phi = testing_support::random_density(rng, 3);
        const double r = testing_support::uniform(rng, 0.1, 1.5);
        const auto c = build_collapsed(n, r, phi);
        std::vector<std::size_t> per_segment(n.segment_count(), 0);
        double mass = 0.0;
        for (const auto& b : c.barycenters) {
            ++per_segment[b.segment];
            CHECK(b.sub_length <= r);
            CHECK(project_to_network(n, b.position).dist < 1e-9);
            CHECK(b.weight == doctest::Approx(phi(b.position) * b.sub_length).epsilon(1e-14));
            mass += b.sub_length;
        }
        for (std::size_t k = 0; k < n.segment_count(); ++k)
            CHECK(per_segment[k] == static_cast<std::size_t>(std::ceil(segment_length(n.segment(k)) / r)));
        CHECK(mass == doctest::Approx(n.total_length()).epsilon(1e-12));
    }
}

TEST_CASE("project_to_network") {
    const Network n({{0, 0}, {2, 0}}, {{0, 1}});
    auto p = project_to_network(n, {1.25, 0});
    CHECK(p.point == Point2(1.25, 0));
    CHECK(p.dist == 0.0);
    p = project_to_network(n, {1, 1});
    CHECK(p.point == Point2(1, 0));
    CHECK(p.segment == 0);

    // q = (1,1) is at distance 1 from segment 0 (y = 0) and segment 3 (y = 2).
    const Network four({{0, 0}, {2, 0}, {5, 5}, {6, 5}, {0, 2}, {2, 2}, {7, 7}, {8, 8}},
                       {{0, 1}, {2, 3}, {6, 7}, {4, 5}});
    REQUIRE(validate_network(four).empty());
    p = project_to_network(four, {1, 1});
    CHECK(p.segment == 0);
    CHECK(p.dist == 1.0);
}

TEST_CASE("network_diameter") {
    CHECK(network_diameter(Network({{0, 0}, {3, 4}}, {{0, 1}})) == 5.0);
    const Network square({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(network_diameter(square) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const Network vee({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {0, 2}});
    CHECK(network_diameter(vee) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("incident segments and lengths") {
    const Network vee({{0, 0}, {1, 0}, {0, 2}}, {{0, 1}, {0, 2}});
    CHECK(vee.incident(0) == std::vector<std::size_t>{0, 1});
    CHECK(vee.incident(2) == std::vector<std::size_t>{1});
    CHECK(vee.total_length() == 3.0);
    CHECK(vee.shortest_segment() == 1.0);
}

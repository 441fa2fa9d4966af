#include <doctest.h>

#include <cmath>

#include "netdeploy/geometry.hpp"

using namespace netdeploy;

namespace {

bool same(const Point2& a, const Point2& b, double tol = 1e-15) { return (a - b).norm() <= tol; }

} // namespace

TEST_CASE("segment_length") {
    CHECK(segment_length(Segment({0, 0}, {3, 4})) == 5.0);
    CHECK(segment_length(Segment({1, 1}, {1, 2})) == 1.0);
    CHECK(segment_length(Segment({0, 0}, {2, 0})) == 2.0);
}

TEST_CASE("degenerate and non-finite segments are rejected") {
    CHECK_THROWS_AS(Segment({1, 1}, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(Segment({0, 0}, {NAN, 1}), InvalidArgument);
    CHECK_THROWS_AS(Segment({0, 0}, {INFINITY, 1}), InvalidArgument);
}

TEST_CASE("barycenter") {
    CHECK(same(barycenter(Segment({0, 0}, {2, 4})), {1, 2}));
    CHECK(same(barycenter(Segment({-1, 0}, {1, 0})), {0, 0}));
    CHECK(same(barycenter(Segment({0, 0}, {0, 3})), {0, 1.5}));
}

TEST_CASE("partition_segment") {
    const auto thirds = partition_segment(Segment({0, 0}, {3, 0}), 3);
    REQUIRE(thirds.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(same(thirds[i].a(), Point2(i, 0)));
        CHECK(same(thirds[i].b(), Point2(i + 1, 0)));
    }

    const auto whole = partition_segment(Segment({0, 0}, {1, 1}), 1);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].a() == Point2(0, 0));
    CHECK(whole[0].b() == Point2(1, 1));

    const auto quarters = partition_segment(Segment({0, 0}, {1, 0}), 4);
    REQUIRE(quarters.size() == 4);
    for (const auto& q : quarters) CHECK(segment_length(q) == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(partition_segment(Segment({0, 0}, {1, 0}), 0), InvalidArgument);
}

TEST_CASE("partition pieces chain exactly and end at b") {
    const Segment s({0.1, 0.7}, {3.3, -2.9});
    const auto parts = partition_segment(s, 7);
    CHECK(parts.front().a() == s.a());
    CHECK(parts.back().b() == s.b());
    for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i].a() == parts[i - 1].b());
}

TEST_CASE("point_at") {
    CHECK(same(point_at(Segment({0, 0}, {2, 0}), 0.5), {1, 0}));
    CHECK(point_at(Segment({0, 0}, {2, 0}), 0.0) == Point2(0, 0));
    CHECK(same(point_at(Segment({0, 0}, {4, 2}), 0.25), {1, 0.5}));
    const Segment s({0.3, 0.1}, {0.7, 0.9});
    CHECK(point_at(s, 1.0) == s.b());
    CHECK_THROWS_AS(point_at(s, -0.1), InvalidArgument);
    CHECK_THROWS_AS(point_at(s, 1.5), InvalidArgument);
}

TEST_CASE("project_point_to_segment") {
    const Segment s({0, 0}, {2, 0});
    auto p = project_point_to_segment(Point2(1, 1), s);
    CHECK(same(p.point, {1, 0}));
    CHECK(p.t == 0.5);
    CHECK(p.dist == 1.0);

    p = project_point_to_segment(Point2(-1, 1), s);
    CHECK(same(p.point, {0, 0}));
    CHECK(p.t == 0.0);
    CHECK(p.dist == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    p = project_point_to_segment(Point2(1, 0), s);
    CHECK(same(p.point, {1, 0}));
    CHECK(p.t == 0.5);
    CHECK(p.dist == 0.0);
}

TEST_CASE("orientation uses an absolute distance tolerance") {
    const Point2 a(0, 0), b(1, 0);
    CHECK(orientation(a, b, Point2(0.5, 1.0)) == 1);
    CHECK(orientation(a, b, Point2(0.5, -1.0)) == -1);
    CHECK(orientation(a, b, Point2(0.5, 1e-12)) == 0);
}

TEST_CASE("templated on scalar") {
    const SegmentT<float> s({0.0f, 0.0f}, {3.0f, 4.0f});
    CHECK(segment_length(s) == 5.0f);
    CHECK(point_at(s, 0.5f).x() == 1.5f);
}

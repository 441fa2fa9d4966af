#include <doctest.h>

#include <cmath>

#include "netdeploy/density.hpp"
#include "netdeploy/performance.hpp"

using namespace netdeploy;

TEST_CASE("eval_f: tanh profile") {
    const auto f = PerformanceFunction::tanh_profile(1.0);
    CHECK(eval_f(f, 0.5) == 0.5);
    CHECK(eval_f(f, 0.0) == doctest::Approx(0.5 * (1.0 - std::tanh(-3.0))).epsilon(1e-15));
    CHECK(eval_f(f, 0.0) == doctest::Approx(0.9975274).epsilon(1e-7));
    CHECK(f.tanh_radius() == 1.0);
    CHECK(f.continuous());
}

TEST_CASE("eval_f: half-open pieces") {
    const auto f = PerformanceFunction::step(2.0);
    CHECK(eval_f(f, 0.0) == 1.0);
    CHECK(eval_f(f, 1.999999) == 1.0);
    CHECK(eval_f(f, 2.0) == 0.0);
    CHECK(eval_f(f, 5.0) == 0.0);
    CHECK(!f.continuous());
    CHECK(f.jump(0) == -1.0);
    CHECK(f.jump_at(2.0) == 0);
    CHECK(f.jump_at(1.0) == PerformanceFunction::npos);
    CHECK_THROWS_AS(eval_f(f, -0.1), InvalidArgument);
}

TEST_CASE("eval_f_derivative") {
    for (const double R : {0.5, 1.0, 3.0}) {
        const auto f = PerformanceFunction::tanh_profile(R);
        CHECK(eval_f_derivative(f, R / 2) == doctest::Approx(-3.0 / R).epsilon(1e-14));
        CHECK(std::abs(eval_f_derivative(f, 20 * R)) < 1e-40);
        // closed form against a central difference
        const double x = 0.37 * R, h = 1e-6;
        CHECK(eval_f_derivative(f, x) == doctest::Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-8));
    }
    CHECK(eval_f_derivative(PerformanceFunction::constant(3.0), 1.2) == 0.0);
    CHECK_THROWS_AS(eval_f_derivative(PerformanceFunction::step(2.0), 2.0), UndefinedDerivative);
    CHECK(eval_f_derivative(PerformanceFunction::step(2.0), 1.0) == 0.0);
}

TEST_CASE("continuous breakpoint: zero jump, derivative allowed") {
    // 1 - x/2 on [0, 1), 0.5 exp(-(x-1)^2 ...) style tail via an affine continuation
    const PerformanceFunction f({AffinePiece{1.0, -0.5}, AffinePiece{0.75, -0.25}}, {1.0});
    CHECK(f.continuous());
    CHECK(f.jump(0) == 0.0);
    CHECK(eval_f_derivative(f, 1.0) == -0.25);
    CHECK(f(1.0) == 0.5);
}

TEST_CASE("profile construction rejects invalid shapes") {
    CHECK_THROWS_AS(PerformanceFunction({ConstantPiece{1.0}}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(PerformanceFunction({ConstantPiece{1.0}, ConstantPiece{2.0}}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(PerformanceFunction({AffinePiece{0.0, 1.0}}, {}), InvalidArgument);
    CHECK_THROWS_AS(PerformanceFunction({ConstantPiece{1.0}, ConstantPiece{0.5}, ConstantPiece{0.0}}, {2.0, 1.0}),
                    InvalidArgument);
    CHECK_THROWS_AS(PerformanceFunction({ConstantPiece{1.0}, ConstantPiece{0.0}}, {0.0}), InvalidArgument);
}

TEST_CASE("pieces are non-increasing on their domains") {
    const PerformanceFunction f({TanhPiece{2.0}, ConstantPiece{0.2}, GaussianPiece{0.1, 3.0}}, {1.0, 2.0});
    for (double x = 0.0; x < 6.0; x += 1e-3) CHECK(f(x + 1e-3) <= f(x) + 1e-12);
    CHECK(f.breakpoints().size() == 2);
    CHECK(f.jump(0) < 0.0);
    CHECK(f.jump(1) < 0.0);
}

TEST_CASE("eval_density: airport field") {
    const auto airport = DensityField::airport();
    REQUIRE(airport.gaussians().size() == 11);
    const DensityField first({airport.gaussians()[0]});
    CHECK(eval_density(first, {4.3, 2.3}) == 20.0);

    // Direct summation of the published table.
    const double a[] = {20, 20, 20, 10, 4, 20, 20, 20, 10, 10, 4};
    const double cx[] = {4.3, 5, 6, 3.5, 9, 12.5, 13.5, 15, 14.5, 17, 20};
    const double cy[] = {2.3, 4, 5.5, 5, 8.5, 8.5, 7.2, 6.2, 10.5, 9, 7};
    const double sx[] = {1.5, 1.5, 1.5, 2, 4, 1.5, 1.5, 1.5, 2, 2, 4};
    const double sy[] = {1.5, 1.5, 1.5, 2, 4, 1.5, 1.5, 1.5, 2, 2, 2};
    for (const Point2& q : {Point2(4.3, 2.3), Point2(12.5, 8.5), Point2(0, 0), Point2(20, 11)}) {
        double sum = 0.0;
        for (int k = 0; k < 11; ++k)
            sum += a[k] * std::exp(-std::pow((q.x() - cx[k]) / sx[k], 2) - std::pow((q.y() - cy[k]) / sy[k], 2));
        CHECK(eval_density(airport, q) == doctest::Approx(sum).epsilon(1e-14));
    }
    CHECK(eval_density(airport, {12.5, 8.5}) > 20.0);
}

TEST_CASE("eval_density: empty field and validation") {
    const DensityField empty;
    CHECK(eval_density(empty, {1, 2}) == 0.0);
    CHECK(eval_density(empty, {-100, 7}) == 0.0);
    CHECK_THROWS_AS(DensityField({{-1.0, 0, 0, 1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(DensityField({{1.0, 0, 0, 0, 1}}), InvalidArgument);
}

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "netdeploy/errors.hpp"

namespace netdeploy {

/// Absolute tolerance for geometric equality, in scenario length units.
inline constexpr double kGeomTol = 1e-9;

template <typename Scalar>
using Point2T = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector2T = Eigen::Matrix<Scalar, 2, 1>;

using Point2 = Point2T<double>;
using Vector2 = Vector2T<double>;

/// Closed straight segment [a, b] with a != b.
template <typename Scalar>
class SegmentT {
public:
    using PointType = Point2T<Scalar>;

    SegmentT(const PointType& a, const PointType& b) : a_(a), b_(b) {
        if (!a.allFinite() || !b.allFinite())
            throw InvalidArgument("segment endpoints must be finite");
        if (!((b - a).norm() > Scalar(0)))
            throw InvalidArgument("degenerate segment: endpoints coincide");
    }

    const PointType& a() const { return a_; }
    const PointType& b() const { return b_; }
    Vector2T<Scalar> delta() const { return b_ - a_; }

private:
    PointType a_;
    PointType b_;
};

using Segment = SegmentT<double>;

template <typename Scalar>
struct ProjectionT {
    Point2T<Scalar> point;
    Scalar t;
    Scalar dist;
};

using Projection = ProjectionT<double>;

template <typename Scalar>
Scalar segment_length(const SegmentT<Scalar>& s) {
    return s.delta().norm();
}

/// Affine interpolation (1-t) a + t b; exact at both endpoints.
template <typename Scalar>
Point2T<Scalar> point_at(const SegmentT<Scalar>& s, Scalar t) {
    if (!(t >= Scalar(0) && t <= Scalar(1)))
        throw InvalidArgument("point_at: parameter outside [0, 1]");
    return (Scalar(1) - t) * s.a() + t * s.b();
}

template <typename Scalar>
Point2T<Scalar> barycenter(const SegmentT<Scalar>& s) {
    return Scalar(0.5) * (s.a() + s.b());
}

/// The k equal sub-segments of s, in order from a to b.
template <typename Scalar>
std::vector<SegmentT<Scalar>> partition_segment(const SegmentT<Scalar>& s, std::size_t k) {
    if (k == 0) throw InvalidArgument("partition_segment: k must be positive");
    std::vector<SegmentT<Scalar>> parts;
    parts.reserve(k);
    Point2T<Scalar> start = s.a();
    for (std::size_t i = 1; i <= k; ++i) {
        Point2T<Scalar> end = i == k ? s.b() : point_at(s, Scalar(i) / Scalar(k));
        parts.emplace_back(start, end);
        start = end;
    }
    return parts;
}

template <typename Scalar>
ProjectionT<Scalar> project_point_to_segment(const Point2T<Scalar>& q, const SegmentT<Scalar>& s) {
    const Vector2T<Scalar> d = s.delta();
    Scalar t = (q - s.a()).dot(d) / d.squaredNorm();
    if (t < Scalar(0)) t = Scalar(0);
    if (t > Scalar(1)) t = Scalar(1);
    const Point2T<Scalar> p = point_at(s, t);
    return {p, t, (q - p).norm()};
}

/// Parameter of the orthogonal foot of q on the line through s (unclamped).
template <typename Scalar>
Scalar foot_parameter(const Point2T<Scalar>& q, const SegmentT<Scalar>& s) {
    const Vector2T<Scalar> d = s.delta();
    return (q - s.a()).dot(d) / d.squaredNorm();
}

template <typename Scalar>
Scalar cross2(const Vector2T<Scalar>& u, const Vector2T<Scalar>& v) {
    return u.x() * v.y() - u.y() * v.x();
}

/// Sign of the turn a -> b -> c; zero when c is within tol of line ab.
template <typename Scalar>
int orientation(const Point2T<Scalar>& a, const Point2T<Scalar>& b, const Point2T<Scalar>& c,
                Scalar tol = Scalar(kGeomTol)) {
    const Vector2T<Scalar> ab = b - a;
    const Scalar len = ab.norm();
    const Scalar signed_dist = cross2<Scalar>(ab, c - a) / len;
    if (signed_dist > tol) return 1;
    if (signed_dist < -tol) return -1;
    return 0;
}

} // namespace netdeploy

#include "netdeploy/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace netdeploy {

std::vector<std::size_t> Network::incident(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < edges_.size(); ++k)
        if (edges_[k].from == v || edges_[k].to == v) out.push_back(k);
    return out;
}

double Network::total_length() const {
    double sum = 0.0;
    for (std::size_t k = 0; k < edges_.size(); ++k) sum += segment_length(segment(k));
    return sum;
}

double Network::shortest_segment() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < edges_.size(); ++k) best = std::min(best, segment_length(segment(k)));
    return best;
}

std::string Violation::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::NonFiniteVertex: os << "non-finite vertex"; break;
    case Kind::DuplicateVertex: os << "duplicate vertex"; break;
    case Kind::BadIndex: os << "segment index out of range in segment"; break;
    case Kind::SelfLoop: os << "segment joins a vertex to itself"; break;
    case Kind::DuplicateSegment: os << "duplicate segment"; break;
    case Kind::IsolatedVertex: os << "isolated vertex"; break;
    case Kind::SegmentIntersection: os << "segment intersection"; break;
    }
    for (std::size_t i = 0; i < indices.size(); ++i) os << (i == 0 ? " " : " x ") << indices[i];
    return os.str();
}

namespace {

// Interiors of [p,q] and [r,s] share a point.
bool interiors_intersect(const Point2& p, const Point2& q, const Point2& r, const Point2& s) {
    const int o1 = orientation(p, q, r);
    const int o2 = orientation(p, q, s);
    const int o3 = orientation(r, s, p);
    const int o4 = orientation(r, s, q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && o2 == 0) {
        // Collinear: overlap of positive length along the common line.
        const Vector2 d = (q - p).normalized();
        double a0 = 0.0, a1 = (q - p).dot(d);
        double b0 = (r - p).dot(d), b1 = (s - p).dot(d);
        if (b0 > b1) std::swap(b0, b1);
        return std::min(a1, b1) - std::max(a0, b0) > kGeomTol;
    }
    return false;
}

} // namespace

std::vector<Violation> validate_network(const Network& n) {
    using Kind = Violation::Kind;
    std::vector<Violation> out;
    const auto& V = n.vertices();
    const auto& E = n.edges();

    for (std::size_t i = 0; i < V.size(); ++i)
        if (!V[i].allFinite()) out.push_back({Kind::NonFiniteVertex, {i}});
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size(); ++j)
            if ((V[i] - V[j]).norm() <= kGeomTol) out.push_back({Kind::DuplicateVertex, {i, j}});

    std::vector<bool> usable(E.size(), true);
    std::vector<int> degree(V.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < E.size(); ++k) {
        const auto [a, b] = E[k];
        if (a >= V.size() || b >= V.size()) {
            out.push_back({Kind::BadIndex, {k}});
            usable[k] = false;
            continue;
        }
        if (a == b) {
            out.push_back({Kind::SelfLoop, {k}});
            usable[k] = false;
            continue;
        }
        ++degree[a];
        ++degree[b];
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
            out.push_back({Kind::DuplicateSegment, {k}});
            usable[k] = false;
        }
    }
    for (std::size_t i = 0; i < V.size(); ++i)
        if (degree[i] == 0) out.push_back({Kind::IsolatedVertex, {i}});

    for (std::size_t k = 0; k < E.size(); ++k) {
        if (!usable[k] || (V[E[k].from] - V[E[k].to]).norm() <= kGeomTol) continue;
        for (std::size_t l = k + 1; l < E.size(); ++l) {
            if (!usable[l] || (V[E[l].from] - V[E[l].to]).norm() <= kGeomTol) continue;
            if (interiors_intersect(V[E[k].from], V[E[k].to], V[E[l].from], V[E[l].to]))
                out.push_back({Kind::SegmentIntersection, {k, l}});
        }
    }
    return out;
}

void require_valid(const Network& n) {
    const auto violations = validate_network(n);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "invalid network:";
    for (const auto& v : violations) os << "\n  " << v.describe();
    throw ValidationError("network", os.str());
}

double CollapsedNetwork::total_weight() const {
    double sum = 0.0;
    for (const auto& b : barycenters) sum += b.weight;
    return sum;
}

CollapsedNetwork build_collapsed(const Network& n, double r, const DensityFn& density) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("build_collapsed: r must be positive");
    CollapsedNetwork c;
    c.resolution = r;
    for (std::size_t k = 0; k < n.segment_count(); ++k) {
        const Segment s = n.segment(k);
        // Ratios that are integers up to rounding (1.6 / 0.1) must not gain a sliver piece.
        const double ratio = segment_length(s) / r;
        const auto pieces =
            partition_segment(s, std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)))));
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const Point2 b = barycenter(pieces[i]);
            const double len = segment_length(pieces[i]);
            c.barycenters.push_back({b, density(b) * len, k, i, len});
        }
    }
    return c;
}

NetworkProjection project_to_network(const Network& n, const Point2& q) {
    NetworkProjection best;
    best.dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n.segment_count(); ++k) {
        const Projection p = project_point_to_segment(q, n.segment(k));
        if (p.dist < best.dist) best = {p.point, k, p.t, p.dist};
    }
    return best;
}

double network_diameter(const Network& n) {
    double best = 0.0;
    const auto& V = n.vertices();
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size(); ++j) best = std::max(best, (V[i] - V[j]).norm());
    return best;
}

std::pair<Point2, Point2> bounding_box(const Network& n) {
    Point2 lo = Point2::Constant(std::numeric_limits<double>::infinity());
    Point2 hi = -lo;
    for (const auto& v : n.vertices()) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return {lo, hi};
}

} // namespace netdeploy

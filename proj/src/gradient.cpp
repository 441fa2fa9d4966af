#include "netdeploy/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netdeploy {

namespace {

double active_slope(const PerformanceFunction& f, double x) {
    return piece_derivative(f.pieces()[f.piece_index(x)], x);
}

Vector2 barycenter_term(const PerformanceFunction& f, const Barycenter& b, const Point2& position) {
    const Vector2 diff = position - b.position;
    const double dist = diff.norm();
    if (!(dist > 0.0)) throw SingularConfiguration("sensor coincides with a barycenter");
    return active_slope(f, dist) * (diff / dist) * b.weight;
}

} // namespace

PiecewiseIntegrand performance_integrand(const PerformanceFunction& f, DensityFn density) {
    PiecewiseIntegrand out;
    out.breakpoints = f.breakpoints();
    for (std::size_t i = 0; i < out.breakpoints.size(); ++i) out.continuous_at.push_back(f.jump(i) == 0.0);
    const auto pieces = f.pieces();
    out.value = [pieces, density](std::size_t piece, double nu, const Point2& q) {
        return piece_value(pieces[piece], nu) * density(q);
    };
    out.dnu = [pieces, density](std::size_t piece, double nu, const Point2& q) {
        return piece_derivative(pieces[piece], nu) * density(q);
    };
    return out;
}

std::vector<double> GenericDistance::level_crossings(const Point2& x, const Segment& s, double R) const {
    std::vector<double> out;
    auto g = [&](double t) { return nu(x, s.a() + s.delta() * t) - R; };
    double t_prev = 0.0;
    double g_prev = g(0.0);
    if (g_prev == 0.0) out.push_back(0.0);
    for (int k = 1; k <= samples; ++k) {
        const double t = static_cast<double>(k) / samples;
        const double gt = g(t);
        if (gt == 0.0) {
            out.push_back(t);
        } else if (g_prev != 0.0 && (gt < 0.0) != (g_prev < 0.0)) {
            double lo = t_prev, hi = t, glo = g_prev;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if ((gm < 0.0) == (glo < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        t_prev = t;
        g_prev = gt;
    }
    return out;
}

namespace detail {

void check_kernel_endpoint(double nu_end, double R) {
    if (std::abs(nu_end - R) <= kGeomTol)
        throw AssumptionViolated("segment endpoint lies on a jump level (nu = " + std::to_string(R) + ")");
}

void check_kernel_rate(double rate, double length) {
    if (std::abs(rate) / length <= kGeomTol) throw AssumptionViolated("tangential crossing of a jump level");
}

} // namespace detail

std::vector<Vector2> grad_collapsed_lex(const CollapsedNetwork& c, const PerformanceFunction& f,
                                        const SensorSet& p) {
    return grad_collapsed_lex(c, f, p, allocate_barycenters_lex(c, p));
}

std::vector<Vector2> grad_collapsed_lex(const CollapsedNetwork& c, const PerformanceFunction& f,
                                        const SensorSet& p, const CollapsedAllocation& alloc) {
    std::vector<Vector2> g(p.size(), Vector2::Zero());
    for (std::size_t e = 0; e < c.barycenters.size(); ++e) {
        const std::size_t h = alloc.owner[e];
        g[h] += barycenter_term(f, c.barycenters[e], p[h]);
    }
    return g;
}

Vector2 cell_gradient_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f,
                                const std::vector<std::size_t>& cell, const Point2& position) {
    Vector2 g = Vector2::Zero();
    for (const std::size_t e : cell) g += barycenter_term(f, c.barycenters[e], position);
    return g;
}

Vector2 grad_collapsed_local(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p,
                             std::size_t i, const NeighborGraph& neighbors) {
    const auto& peers = neighbors.adjacency.at(i);
    Vector2 g = Vector2::Zero();
    for (const auto& b : c.barycenters) {
        const double di = (b.position - p[i]).squaredNorm();
        bool mine = true;
        for (const std::size_t j : peers) {
            const double dj = (b.position - p[j]).squaredNorm();
            if (dj < di || (dj == di && j < i)) {
                mine = false;
                break;
            }
        }
        if (mine) g += barycenter_term(f, b, p[i]);
    }
    return g;
}

Vector2 cell_gradient_full(const Network& n, const std::vector<CellPiece>& cell, const Point2& position,
                           const PerformanceFunction& f, const DensityFn& phi, const QuadratureTolerance& tol) {
    const PiecewiseIntegrand integrand = performance_integrand(f, phi);
    const EuclideanDistance nu;
    Vector2 g = Vector2::Zero();
    for (const auto& piece : cell) {
        const Segment s = n.segment(piece.segment);
        if (piece.t0 == 0.0 && piece.t1 == 1.0) {
            g += segment_integral_derivative(integrand, nu, s, position, tol);
            continue;
        }
        const Point2 a = s.a() + s.delta() * piece.t0;
        const Point2 b = s.a() + s.delta() * piece.t1;
        if (a == b) continue;
        g += segment_integral_derivative(integrand, nu, Segment(a, b), position, tol);
    }
    return g;
}

Vector2 cell_derivative_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi,
                             const SensorSet& p, std::size_t h, const NetworkCells& cells,
                             const QuadratureTolerance& tol) {
    return cell_gradient_full(n, cells.by_sensor.at(h), p.at(h), f, phi, tol);
}

NetworkLocation locate_on_network(const Network& n, const Point2& q) {
    const NetworkProjection proj = project_to_network(n, q);
    if (!(proj.dist <= 1e-6)) throw OffNetwork("point is " + std::to_string(proj.dist) + " away from the network");
    NetworkLocation out;
    out.segment = proj.segment;
    out.t = proj.t;
    out.point = proj.point;
    const Edge& e = n.edges()[proj.segment];
    const double da = (n.vertices()[e.from] - proj.point).norm();
    const double db = (n.vertices()[e.to] - proj.point).norm();
    if (da <= kGeomTol && da <= db) {
        out.vertex = e.from;
        out.t = 0.0;
        out.point = n.vertices()[e.from];
    } else if (db <= kGeomTol) {
        out.vertex = e.to;
        out.t = 1.0;
        out.point = n.vertices()[e.to];
    }
    return out;
}

FeasibleDirections feasible_directions(const Network& n, std::size_t vertex, const Vector2& g) {
    constexpr double probe = 1e-7;
    FeasibleDirections out;
    out.vertex = vertex;
    const Point2& v = n.vertices().at(vertex);
    for (const std::size_t k : n.incident(vertex)) {
        const Edge& e = n.edges()[k];
        const Point2& other = n.vertices()[e.from == vertex ? e.to : e.from];
        const Vector2 d = (other - v).normalized();
        if (project_to_network(n, v + probe * d).dist > kGeomTol) continue;
        out.options.push_back({k, d, g.dot(d)});
    }
    return out;
}

ConstrainedDerivative dir_deriv_on_network(const Vector2& g, const Network& n, const NetworkLocation& where) {
    ConstrainedDerivative out;
    out.segment = where.segment;
    if (!where.vertex) {
        const Vector2 w = n.segment(where.segment).delta().normalized();
        out.direction = w;
        out.rate = g.dot(w);
        return out;
    }
    double best = 0.0;
    for (const auto& opt : feasible_directions(n, *where.vertex, g).options) {
        if (opt.value > best) {
            best = opt.value;
            out.segment = opt.segment;
            out.direction = opt.direction;
            out.rate = opt.value;
        }
    }
    return out;
}

} // namespace netdeploy

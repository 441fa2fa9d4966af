#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "netdeploy/density.hpp"
#include "netdeploy/network.hpp"
#include "netdeploy/objective.hpp"
#include "netdeploy/performance.hpp"
#include "netdeploy/quadrature.hpp"
#include "netdeploy/voronoi.hpp"

namespace netdeploy {

// Segment-derivative kernel ----------------------------------------------------

/// phi(nu, q): piecewise in nu with breakpoints R_1 < ... < R_N, smooth in q.
/// Piece alpha (0-based) is active on [R_alpha, R_{alpha+1}).
struct PiecewiseIntegrand {
    std::vector<double> breakpoints;
    /// true when the two pieces meeting at a breakpoint agree there for every q
    std::vector<bool> continuous_at;
    std::function<double(std::size_t piece, double nu, const Point2& q)> value;
    std::function<double(std::size_t piece, double nu, const Point2& q)> dnu;

    std::size_t piece_index(double nu) const {
        return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), nu) -
                                        breakpoints.begin());
    }
};

/// phi(nu, q) = f(nu) * density(q).
PiecewiseIntegrand performance_integrand(const PerformanceFunction& f, DensityFn density);

/// nu(x, q) = |q - x|.
struct EuclideanDistance {
    double value(const Point2& x, const Point2& q) const { return (q - x).norm(); }

    Vector2 grad_x(const Point2& x, const Point2& q) const {
        const double r = (x - q).norm();
        if (!(r > 0.0)) throw SingularConfiguration("distance gradient at zero distance");
        return (x - q) / r;
    }

    /// d/dt nu(x, gamma(t)).
    double rate(const Point2& x, const Segment& s, double t) const {
        const Point2 q = s.a() + s.delta() * t;
        const double r = (q - x).norm();
        if (!(r > 0.0)) return 0.0;
        return (q - x).dot(s.delta()) / r;
    }

    std::vector<double> level_crossings(const Point2& x, const Segment& s, double R) const {
        return radius_crossings(s, x, R);
    }

    /// Parameters where t -> nu(x, gamma(t)) is not smooth.
    std::vector<double> kinks(const Point2& x, const Segment& s) const {
        const double foot = foot_parameter(x, s);
        if (foot > 0.0 && foot < 1.0 && (point_at(s, foot) - x).norm() <= kGeomTol) return {foot};
        return {};
    }
};

/// Any smooth distance-like map given by closures. Level crossings are found by
/// dense sampling plus bisection.
struct GenericDistance {
    std::function<double(const Point2& x, const Point2& q)> nu;
    std::function<Vector2(const Point2& x, const Point2& q)> grad_x_fn;
    std::function<Vector2(const Point2& x, const Point2& q)> grad_q_fn;
    int samples = 512;

    double value(const Point2& x, const Point2& q) const { return nu(x, q); }
    Vector2 grad_x(const Point2& x, const Point2& q) const { return grad_x_fn(x, q); }
    double rate(const Point2& x, const Segment& s, double t) const {
        return grad_q_fn(x, s.a() + s.delta() * t).dot(s.delta());
    }
    std::vector<double> level_crossings(const Point2& x, const Segment& s, double R) const;
    std::vector<double> kinks(const Point2&, const Segment&) const { return {}; }
};

namespace detail {

void check_kernel_endpoint(double nu_end, double R);
void check_kernel_rate(double rate, double length);

} // namespace detail

/// d/dx of the line integral of phi(nu(x, q), q) over s, at x.
///
/// Smooth part: integral of dphi/dnu * dnu/dx away from the level crossings.
/// Jump part: at every crossing t of a level R_i, the jump
/// phi(R_i+) - phi(R_i-) times dnu/dx, weighted by |b - a| / |d nu / dt| (the
/// Dirac mass of delta(nu - R_i) pulled back to the segment parameter).
///
/// Throws AssumptionViolated when nu at an endpoint equals a jump level or a
/// crossing is tangential.
template <typename Kernel>
Vector2 segment_integral_derivative(const PiecewiseIntegrand& phi, const Kernel& nu, const Segment& s,
                                    const Point2& x, const QuadratureTolerance& tol = {}) {
    const double L = segment_length(s);
    const Point2 a = s.a();
    const Vector2 d = s.delta();

    std::vector<double> knots = nu.kinks(x, s);
    Vector2 jump_part = Vector2::Zero();
    for (std::size_t i = 0; i < phi.breakpoints.size(); ++i) {
        const double R = phi.breakpoints[i];
        const bool has_jump = i >= phi.continuous_at.size() || !phi.continuous_at[i];
        if (has_jump) {
            detail::check_kernel_endpoint(nu.value(x, s.a()), R);
            detail::check_kernel_endpoint(nu.value(x, s.b()), R);
        }
        for (const double t : nu.level_crossings(x, s, R)) {
            knots.push_back(t);
            if (!has_jump) continue;
            const double rate = nu.rate(x, s, t);
            detail::check_kernel_rate(rate, L);
            const Point2 q = a + d * t;
            const double jump = phi.value(i + 1, R, q) - phi.value(i, R, q);
            jump_part += jump * nu.grad_x(x, q) * (L / std::abs(rate));
        }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::remove_if(knots.begin(), knots.end(), [](double t) { return t <= 0.0 || t >= 1.0; }),
                knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    knots.insert(knots.begin(), 0.0);
    knots.push_back(1.0);

    Vector2 smooth_part = Vector2::Zero();
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double tm = 0.5 * (knots[k] + knots[k + 1]);
        const std::size_t piece = phi.piece_index(nu.value(x, a + d * tm));
        auto integrand = [&](double t) -> Vector2 {
            const Point2 q = a + d * t;
            // A node landing exactly on x is a null set for the integral.
            if (q == x) return Vector2(Vector2::Zero());
            return phi.dnu(piece, nu.value(x, q), q) * nu.grad_x(x, q);
        };
        smooth_part += integrate(integrand, knots[k], knots[k + 1], tol);
    }
    return L * smooth_part + jump_part;
}

// Collapsed gradient -----------------------------------------------------------

/// Lexicographic gradient: per sensor, sum over its own barycenters of
/// f'(|b - p|) (p - b)/|p - b| * weight. Ascent direction of the objective.
std::vector<Vector2> grad_collapsed_lex(const CollapsedNetwork& c, const PerformanceFunction& f,
                                        const SensorSet& p);

std::vector<Vector2> grad_collapsed_lex(const CollapsedNetwork& c, const PerformanceFunction& f,
                                        const SensorSet& p, const CollapsedAllocation& alloc);

/// Gradient of the frozen cell objective with the sensor at position.
Vector2 cell_gradient_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f,
                                const std::vector<std::size_t>& cell, const Point2& position);

/// Sensor i's gradient computed from its Delaunay neighbors only.
Vector2 grad_collapsed_local(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p,
                             std::size_t i, const NeighborGraph& neighbors);

// Full-network gradient --------------------------------------------------------

/// dH/dp_h summed over the pieces of cell h, jump terms included.
Vector2 cell_derivative_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi,
                             const SensorSet& p, std::size_t h, const NetworkCells& cells,
                             const QuadratureTolerance& tol = {});

/// Same, with a frozen list of pieces and an explicit sensor position.
Vector2 cell_gradient_full(const Network& n, const std::vector<CellPiece>& cell, const Point2& position,
                           const PerformanceFunction& f, const DensityFn& phi, const QuadratureTolerance& tol);

// Network-constrained derivatives -----------------------------------------------

/// Where a sensor sits on the network.
struct NetworkLocation {
    Point2 point;
    std::size_t segment = 0;
    double t = 0.0;
    std::optional<std::size_t> vertex;
};

/// Snaps q onto N; throws OffNetwork if q is farther than 1e-6.
NetworkLocation locate_on_network(const Network& n, const Point2& q);

struct FeasibleDirection {
    std::size_t segment = 0;
    Vector2 direction = Vector2::Zero();
    double value = 0.0;
};

struct FeasibleDirections {
    std::size_t vertex = 0;
    std::vector<FeasibleDirection> options;
};

/// Incident directions at a vertex that keep the sensor on N, with the
/// one-sided derivative g . d of each.
FeasibleDirections feasible_directions(const Network& n, std::size_t vertex, const Vector2& g);

/// Constrained derivative: rate * direction, direction a unit vector along
/// a network edge (zero when blocked).
struct ConstrainedDerivative {
    std::size_t segment = 0;
    Vector2 direction = Vector2::Zero();
    double rate = 0.0;

    Vector2 vector() const { return rate * direction; }
    double magnitude() const { return std::abs(rate); }
};

/// Projection of the cell gradient g onto the host edge, or the vertex max rule.
ConstrainedDerivative dir_deriv_on_network(const Vector2& g, const Network& n, const NetworkLocation& where);

} // namespace netdeploy

#include "netdeploy/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netdeploy {

DensityField DensityField::airport() {
    return DensityField({
        {20.0, 4.3, 2.3, 1.5, 1.5},
        {20.0, 5.0, 4.0, 1.5, 1.5},
        {20.0, 6.0, 5.5, 1.5, 1.5},
        {10.0, 3.5, 5.0, 2.0, 2.0},
        {4.0, 9.0, 8.5, 4.0, 4.0},
        {20.0, 12.5, 8.5, 1.5, 1.5},
        {20.0, 13.5, 7.2, 1.5, 1.5},
        {20.0, 15.0, 6.2, 1.5, 1.5},
        {10.0, 14.5, 10.5, 2.0, 2.0},
        {10.0, 17.0, 9.0, 2.0, 2.0},
        {4.0, 20.0, 7.0, 4.0, 2.0},
    });
}

double h_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p) {
    require_distinct(p);
    double sum = 0.0;
    for (const auto& b : c.barycenters) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& s : p) best = std::max(best, f((b.position - s).norm()));
        sum += best * b.weight;
    }
    return sum;
}

double h_collapsed_voronoi(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p,
                           const CollapsedAllocation& alloc) {
    double sum = 0.0;
    for (const double v : h_cells_collapsed(c, f, p, alloc)) sum += v;
    return sum;
}

std::vector<double> h_cells_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f,
                                      const SensorSet& p, const CollapsedAllocation& alloc) {
    std::vector<double> cells(p.size(), 0.0);
    for (std::size_t e = 0; e < c.barycenters.size(); ++e) {
        const auto& b = c.barycenters[e];
        const std::size_t i = alloc.owner[e];
        cells[i] += f((b.position - p[i]).norm()) * b.weight;
    }
    return cells;
}

double h_cell_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p,
                        std::size_t i) {
    return h_cells_collapsed(c, f, p, allocate_barycenters_lex(c, p)).at(i);
}

double cell_value_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f,
                            const std::vector<std::size_t>& cell, const Point2& position) {
    double sum = 0.0;
    for (const std::size_t e : cell) {
        const auto& b = c.barycenters[e];
        sum += f((b.position - position).norm()) * b.weight;
    }
    return sum;
}

std::vector<double> radius_crossings(const Segment& s, const Point2& p, double R) {
    const Vector2 d = s.delta();
    const double L = d.norm();
    const double t_foot = foot_parameter(p, s);
    const double h = std::abs(cross2<double>(d, p - s.a())) / L;
    std::vector<double> out;
    if (h > R + 1e-12 * R) return out;
    if (std::abs(R - h) <= 1e-12 * R) {
        if (t_foot >= 0.0 && t_foot <= 1.0) out.push_back(t_foot);
        return out;
    }
    const double half = std::sqrt((R - h) * (R + h)) / L;
    for (const double t : {t_foot - half, t_foot + half})
        if (t >= 0.0 && t <= 1.0) out.push_back(t);
    return out;
}

std::vector<double> piece_split_points(const Segment& s, double t0, double t1, const Point2& p,
                                       const PerformanceFunction& f) {
    std::vector<double> cuts;
    const double foot = foot_parameter(p, s);
    if (foot > t0 && foot < t1) cuts.push_back(foot);
    for (const double R : f.breakpoints())
        for (const double t : radius_crossings(s, p, R))
            if (t > t0 && t < t1) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

double piece_integral(const Segment& s, double t0, double t1, const Point2& p, const PerformanceFunction& f,
                      const DensityFn& phi, const QuadratureTolerance& tol) {
    const double L = segment_length(s);
    const Point2 a = s.a();
    const Vector2 d = s.delta();
    std::vector<double> knots = piece_split_points(s, t0, t1, p, f);
    knots.insert(knots.begin(), t0);
    knots.push_back(t1);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        // The active piece of f is constant inside each sub-interval.
        const double tm = 0.5 * (knots[k] + knots[k + 1]);
        const auto& piece = f.pieces()[f.piece_index((a + d * tm - p).norm())];
        auto integrand = [&](double t) {
            const Point2 q = a + d * t;
            return piece_value(piece, (q - p).norm()) * phi(q);
        };
        sum += integrate(integrand, knots[k], knots[k + 1], tol);
    }
    return sum * L;
}

double segment_objective(const Segment& s, const std::vector<CellPiece>& pieces, const SensorSet& p,
                         const PerformanceFunction& f, const DensityFn& phi, const QuadratureTolerance& tol) {
    double sum = 0.0;
    for (const auto& piece : pieces) sum += piece_integral(s, piece.t0, piece.t1, p[piece.owner], f, phi, tol);
    return sum;
}

double h_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi, const SensorSet& p,
              const QuadratureTolerance& tol) {
    const NetworkCells cells = clip_network_cells(n, p);
    double sum = 0.0;
    for (std::size_t k = 0; k < n.segment_count(); ++k)
        sum += segment_objective(n.segment(k), cells.by_segment[k], p, f, phi, tol);
    return sum;
}

std::vector<double> h_cells_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi,
                                 const SensorSet& p, const NetworkCells& cells, const QuadratureTolerance& tol) {
    std::vector<double> out(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = cell_value_full(n, cells.by_sensor[i], p[i], f, phi, tol);
    return out;
}

double h_cell_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi, const SensorSet& p,
                   std::size_t i, const QuadratureTolerance& tol) {
    const NetworkCells cells = clip_network_cells(n, p);
    return cell_value_full(n, cells.by_sensor.at(i), p[i], f, phi, tol);
}

double cell_value_full(const Network& n, const std::vector<CellPiece>& cell, const Point2& position,
                       const PerformanceFunction& f, const DensityFn& phi, const QuadratureTolerance& tol) {
    double sum = 0.0;
    for (const auto& piece : cell) sum += piece_integral(n.segment(piece.segment), piece.t0, piece.t1, position, f, phi, tol);
    return sum;
}

} // namespace netdeploy

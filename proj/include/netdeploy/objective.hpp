#pragma once

#include <cstddef>
#include <vector>

#include "netdeploy/density.hpp"
#include "netdeploy/network.hpp"
#include "netdeploy/performance.hpp"
#include "netdeploy/quadrature.hpp"
#include "netdeploy/voronoi.hpp"

namespace netdeploy {

// Collapsed model ------------------------------------------------------------

/// Sum over barycenters of max_i f(|b - p_i|) * weight.
double h_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p);

/// Same objective written cell by cell through the lexicographic allocation.
double h_collapsed_voronoi(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p,
                           const CollapsedAllocation& alloc);

/// Contribution of every sensor's cell; sums to h_collapsed.
std::vector<double> h_cells_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f,
                                      const SensorSet& p, const CollapsedAllocation& alloc);

double h_cell_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p,
                        std::size_t i);

/// sum_{e in cell} f(|b_e - position|) * weight_e; the cell is held fixed.
double cell_value_collapsed(const CollapsedNetwork& c, const PerformanceFunction& f,
                            const std::vector<std::size_t>& cell, const Point2& position);

// Full network ---------------------------------------------------------------

/// t in [0, 1] where |gamma(t) - p| = R, sorted; a tangency is reported once.
std::vector<double> radius_crossings(const Segment& s, const Point2& p, double R);

/// Parameters in (t0, t1) where the integrand of a cell piece loses smoothness:
/// the foot of p and every radius crossing of a breakpoint of f.
std::vector<double> piece_split_points(const Segment& s, double t0, double t1, const Point2& p,
                                       const PerformanceFunction& f);

/// Integral of f(|q - p|) phi(q) over the piece [t0, t1] of segment s.
double piece_integral(const Segment& s, double t0, double t1, const Point2& p, const PerformanceFunction& f,
                      const DensityFn& phi, const QuadratureTolerance& tol);

/// Objective restricted to the pieces of one segment (already clipped).
double segment_objective(const Segment& s, const std::vector<CellPiece>& pieces, const SensorSet& p,
                         const PerformanceFunction& f, const DensityFn& phi, const QuadratureTolerance& tol);

double h_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi, const SensorSet& p,
              const QuadratureTolerance& tol = {});

std::vector<double> h_cells_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi,
                                 const SensorSet& p, const NetworkCells& cells,
                                 const QuadratureTolerance& tol = {});

double h_cell_full(const Network& n, const PerformanceFunction& f, const DensityFn& phi, const SensorSet& p,
                   std::size_t i, const QuadratureTolerance& tol = {});

/// Integral over a frozen list of pieces with the sensor moved to position.
double cell_value_full(const Network& n, const std::vector<CellPiece>& cell, const Point2& position,
                       const PerformanceFunction& f, const DensityFn& phi, const QuadratureTolerance& tol);

} // namespace netdeploy

#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "netdeploy/geometry.hpp"
#include "netdeploy/network.hpp"

namespace netdeploy {

/// Sensor positions; the index order is the lexicographic tie-break order.
using SensorSet = std::vector<Point2>;

/// Throws DegenerateConfiguration if the set is empty or two positions coincide.
void require_distinct(const SensorSet& p);

/// owner[e] = sensor owning barycenter e.
struct CollapsedAllocation {
    std::vector<std::size_t> owner;

    /// Barycenter indices owned by sensor i, ascending.
    std::vector<std::size_t> cell(std::size_t i) const;
};

/// Nearest sensor for every barycenter, ties to the lowest index.
CollapsedAllocation allocate_barycenters_lex(const CollapsedNetwork& c, const SensorSet& p);

/// Sub-interval [t0, t1] of one network segment.
struct CellPiece {
    std::size_t segment = 0;
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t owner = 0;
};

struct NetworkCells {
    /// Per segment, ordered pieces tiling [0, 1].
    std::vector<std::vector<CellPiece>> by_segment;
    /// Per sensor, the pieces it owns (segment-major order).
    std::vector<std::vector<CellPiece>> by_sensor;

    /// Per segment, the interior breakpoints where ownership changes.
    std::vector<double> breakpoints(std::size_t segment) const;
};

/// Pieces of one segment, owner per piece. Exposed for incremental updates.
std::vector<CellPiece> clip_segment(const Segment& s, std::size_t segment_index, const SensorSet& p);

/// Lexicographic partition of the network among the sensors.
NetworkCells clip_network_cells(const Network& n, const SensorSet& p);

struct NeighborGraph {
    std::vector<std::set<std::size_t>> adjacency;
};

/// Sensors whose planar Voronoi cells share a boundary longer than kGeomTol.
NeighborGraph delaunay_neighbors(const SensorSet& p);

} // namespace netdeploy

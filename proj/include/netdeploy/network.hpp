#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "netdeploy/density.hpp"
#include "netdeploy/geometry.hpp"

namespace netdeploy {

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Straight-segment environment N = (V, S). Construction does not validate;
/// see validate_network / require_valid.
class Network {
public:
    Network() = default;
    Network(std::vector<Point2> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t segment_count() const { return edges_.size(); }

    Segment segment(std::size_t k) const { return {vertices_[edges_[k].from], vertices_[edges_[k].to]}; }

    /// Segment indices incident to vertex v.
    std::vector<std::size_t> incident(std::size_t v) const;

    double total_length() const;
    double shortest_segment() const;

private:
    std::vector<Point2> vertices_;
    std::vector<Edge> edges_;
};

struct Violation {
    enum class Kind {
        NonFiniteVertex,
        DuplicateVertex,
        BadIndex,
        SelfLoop,
        DuplicateSegment,
        IsolatedVertex,
        SegmentIntersection,
    };
    Kind kind;
    std::vector<std::size_t> indices;

    std::string describe() const;
};

/// Every violated network invariant; empty iff the network is valid.
std::vector<Violation> validate_network(const Network& n);

/// Throws ValidationError listing the violations, if any.
void require_valid(const Network& n);

/// Midpoint of one sub-segment, carrying its quadrature mass.
struct Barycenter {
    Point2 position;
    double weight = 0.0;
    std::size_t segment = 0;
    std::size_t sub_index = 0;
    double sub_length = 0.0;
};

struct CollapsedNetwork {
    std::vector<Barycenter> barycenters;
    double resolution = 0.0;

    double total_weight() const;
};

/// Splits each segment into ceil(len / r) pieces; weight = phi(midpoint) * piece length.
CollapsedNetwork build_collapsed(const Network& n, double r, const DensityFn& density);

struct NetworkProjection {
    Point2 point;
    std::size_t segment = 0;
    double t = 0.0;
    double dist = 0.0;
};

/// Closest point of N to q; ties go to the lowest segment index.
NetworkProjection project_to_network(const Network& n, const Point2& q);

double network_diameter(const Network& n);

/// Axis-aligned bounding box of the vertices as (min, max).
std::pair<Point2, Point2> bounding_box(const Network& n);

} // namespace netdeploy

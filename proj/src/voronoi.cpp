#include "netdeploy/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netdeploy {

void require_distinct(const SensorSet& p) {
    if (p.empty()) throw DegenerateConfiguration("sensor set is empty");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].allFinite()) throw DegenerateConfiguration("sensor position is not finite");
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] == p[j])
                throw DegenerateConfiguration("sensors " + std::to_string(i) + " and " + std::to_string(j) +
                                              " coincide");
    }
}

std::vector<std::size_t> CollapsedAllocation::cell(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < owner.size(); ++e)
        if (owner[e] == i) out.push_back(e);
    return out;
}

CollapsedAllocation allocate_barycenters_lex(const CollapsedNetwork& c, const SensorSet& p) {
    require_distinct(p);
    CollapsedAllocation alloc;
    alloc.owner.resize(c.barycenters.size());
    for (std::size_t e = 0; e < c.barycenters.size(); ++e) {
        const Point2& b = c.barycenters[e].position;
        std::size_t best = 0;
        double best_d2 = (b - p[0]).squaredNorm();
        for (std::size_t i = 1; i < p.size(); ++i) {
            const double d2 = (b - p[i]).squaredNorm();
            if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
            }
        }
        alloc.owner[e] = best;
    }
    return alloc;
}

std::vector<double> NetworkCells::breakpoints(std::size_t segment) const {
    std::vector<double> out;
    const auto& pieces = by_segment.at(segment);
    for (std::size_t k = 1; k < pieces.size(); ++k) out.push_back(pieces[k].t0);
    return out;
}

std::vector<CellPiece> clip_segment(const Segment& s, std::size_t segment_index, const SensorSet& p) {
    // Squared distance along the segment is L^2 t^2 + slope_i t + offset_i; the
    // quadratic term is shared, so ownership is the lower envelope of lines.
    const Vector2 d = s.delta();
    const std::size_t m = p.size();
    std::vector<double> slope(m), offset(m);
    double scale = d.squaredNorm();
    for (std::size_t i = 0; i < m; ++i) {
        const Vector2 ap = s.a() - p[i];
        slope[i] = 2.0 * d.dot(ap);
        offset[i] = ap.squaredNorm();
        scale = std::max({scale, std::abs(slope[i]), std::abs(offset[i])});
    }
    const double tol = 1e-12 * scale;
    constexpr double merge = 1e-12;

    auto pick = [&](double t) {
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) gmin = std::min(gmin, slope[i] * t + offset[i]);
        double smin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i)
            if (slope[i] * t + offset[i] <= gmin + tol) smin = std::min(smin, slope[i]);
        for (std::size_t i = 0; i < m; ++i)
            if (slope[i] * t + offset[i] <= gmin + tol && slope[i] <= smin + tol) return i;
        return std::size_t{0};
    };

    std::vector<CellPiece> pieces;
    double start = 0.0;
    double t_cur = 0.0;
    std::size_t owner = pick(0.0);
    while (true) {
        double t_next = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == owner || !(slope[j] < slope[owner] - tol)) continue;
            const double tx = (offset[j] - offset[owner]) / (slope[owner] - slope[j]);
            if (tx > t_cur + merge && tx < t_next) t_next = tx;
        }
        if (t_next >= 1.0 - merge) {
            pieces.push_back({segment_index, start, 1.0, owner});
            break;
        }
        t_cur = t_next;
        const std::size_t next_owner = pick(t_cur);
        if (next_owner != owner) {
            pieces.push_back({segment_index, start, t_cur, owner});
            start = t_cur;
            owner = next_owner;
        }
    }
    return pieces;
}

NetworkCells clip_network_cells(const Network& n, const SensorSet& p) {
    require_distinct(p);
    NetworkCells cells;
    cells.by_segment.resize(n.segment_count());
    cells.by_sensor.resize(p.size());
    for (std::size_t k = 0; k < n.segment_count(); ++k) {
        cells.by_segment[k] = clip_segment(n.segment(k), k, p);
        for (const auto& piece : cells.by_segment[k]) cells.by_sensor[piece.owner].push_back(piece);
    }
    return cells;
}

NeighborGraph delaunay_neighbors(const SensorSet& p) {
    require_distinct(p);
    const std::size_t m = p.size();
    NeighborGraph g;
    g.adjacency.resize(m);
    if (m <= 2) {
        if (m == 2) {
            g.adjacency[0].insert(1);
            g.adjacency[1].insert(0);
        }
        return g;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            // Bisector z(s) = mid + s u, clipped by "closer to i than to k" for all k.
            const Point2 mid = 0.5 * (p[i] + p[j]);
            const Vector2 dij = p[j] - p[i];
            const Vector2 u = Vector2(-dij.y(), dij.x()).normalized();
            double lo = -inf, hi = inf;
            for (std::size_t k = 0; k < m && lo < hi; ++k) {
                if (k == i || k == j) continue;
                const Vector2 dik = p[k] - p[i];
                const double A = 2.0 * (mid - p[i]).dot(dik);
                const double B = 2.0 * u.dot(dik);
                const double C = dik.squaredNorm();
                if (std::abs(B) <= 1e-14 * std::sqrt(C)) {
                    if (A > C) hi = lo;
                } else if (B > 0.0) {
                    hi = std::min(hi, (C - A) / B);
                } else {
                    lo = std::max(lo, (C - A) / B);
                }
            }
            if (hi - lo > kGeomTol) {
                g.adjacency[i].insert(j);
                g.adjacency[j].insert(i);
            }
        }
    }
    return g;
}

} // namespace netdeploy

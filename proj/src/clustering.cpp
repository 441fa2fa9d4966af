#include "netdeploy/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace netdeploy {

namespace {

std::size_t nearest(const std::vector<Point2>& centers, const Point2& q) {
    std::size_t best = 0;
    double best_d2 = (q - centers[0]).squaredNorm();
    for (std::size_t c = 1; c < centers.size(); ++c) {
        const double d2 = (q - centers[c]).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = c;
        }
    }
    return best;
}

std::size_t pick_index(std::size_t n, Rng& rng) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

} // namespace

Clustering cluster_sensors(const std::vector<Point2>& positions, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    return cluster_sensors(positions, k, rng);
}

Clustering cluster_sensors(const std::vector<Point2>& positions, std::size_t k, Rng& rng) {
    const std::size_t n = positions.size();
    if (k == 0) throw InvalidArgument("cluster count must be positive");
    if (k > n) throw InvalidArgument("more clusters than positions");

    // k-means++ seeding
    Clustering out;
    out.centers.push_back(positions[pick_index(n, rng)]);
    std::vector<double> d2(n);
    while (out.centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = (positions[i] - out.centers[nearest(out.centers, positions[i])]).squaredNorm();
            total += d2[i];
        }
        if (!(total > 0.0)) {
            out.centers.push_back(positions[pick_index(n, rng)]);
            continue;
        }
        const double target = uniform01(rng) * total;
        double acc = 0.0;
        std::size_t chosen = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            acc += d2[i];
            chosen = i;
            if (acc > target) break;
        }
        out.centers.push_back(positions[chosen]);
    }

    out.assignment.assign(n, 0);
    for (int round = 0; round < 100; ++round) {
        for (std::size_t i = 0; i < n; ++i) out.assignment[i] = nearest(out.centers, positions[i]);
        std::vector<Point2> sum(k, Point2::Zero());
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sum[out.assignment[i]] += positions[i];
            ++count[out.assignment[i]];
        }
        double moved = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] == 0) continue;
            const Point2 next = sum[c] / static_cast<double>(count[c]);
            moved = std::max(moved, (next - out.centers[c]).norm());
            out.centers[c] = next;
        }
        if (moved < 1e-9) break;
    }
    return out;
}

Point2 random_network_point(const Network& n, Rng& rng) {
    if (n.segment_count() == 0) throw InvalidArgument("network has no segments");
    const double target = uniform01(rng) * n.total_length();
    const double t = uniform01(rng);
    double acc = 0.0;
    for (std::size_t k = 0; k < n.segment_count(); ++k) {
        acc += segment_length(n.segment(k));
        if (target < acc) return point_at(n.segment(k), t);
    }
    return point_at(n.segment(n.segment_count() - 1), t);
}

SensorSet spread_and_project(const Network& n, const std::vector<Point2>& centers, std::size_t per_cluster,
                             double rho, std::uint64_t seed) {
    Rng rng(seed);
    return spread_and_project(n, centers, per_cluster, rho, rng);
}

SensorSet spread_and_project(const Network& n, const std::vector<Point2>& centers, std::size_t per_cluster,
                             double rho, Rng& rng) {
    if (centers.empty()) throw InvalidArgument("no cluster centers");
    if (!(rho >= 0.0)) throw InvalidArgument("spread radius must be >= 0");
    constexpr double nudge = 1e-6;
    SensorSet out;
    for (const auto& c : centers) {
        for (std::size_t s = 0; s < per_cluster; ++s) {
            const double r = rho * std::sqrt(uniform01(rng));
            const double theta = 2.0 * std::numbers::pi * uniform01(rng);
            const NetworkProjection proj = project_to_network(n, c + r * Vector2(std::cos(theta), std::sin(theta)));
            const Segment seg = n.segment(proj.segment);
            const double dt = nudge / segment_length(seg);
            Point2 q = proj.point;
            for (int attempt = 1;; ++attempt) {
                const bool clash = std::any_of(out.begin(), out.end(),
                                               [&](const Point2& o) { return (o - q).norm() <= kGeomTol; });
                if (!clash) break;
                if (attempt > 1000) throw DegenerateConfiguration("cannot separate projected sensors");
                // Walk outward alternately on both sides of the projection.
                const double offset = ((attempt + 1) / 2) * dt * (attempt % 2 ? 1.0 : -1.0);
                q = point_at(seg, std::clamp(proj.t + offset, 0.0, 1.0));
            }
            out.push_back(q);
        }
    }
    return out;
}

} // namespace netdeploy

#include "netdeploy/scenario.hpp"

#include <algorithm>
#include <queue>

namespace netdeploy {

namespace {

constexpr std::size_t kCols = 9;
constexpr std::size_t kRows = 7;
constexpr std::size_t kRemoved = 23;
constexpr double kX0 = 2.0, kX1 = 21.0, kY0 = 1.0, kY1 = 11.0;

bool connected(std::size_t vertex_count, const std::vector<Edge>& edges, std::size_t skip) {
    std::vector<std::vector<std::size_t>> adj(vertex_count);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (k == skip) continue;
        adj[edges[k].from].push_back(edges[k].to);
        adj[edges[k].to].push_back(edges[k].from);
    }
    std::vector<bool> seen(vertex_count, false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop();
        for (const std::size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                todo.push(w);
            }
    }
    return reached == vertex_count;
}

Network attempt(Rng& rng) {
    const double dx = (kX1 - kX0) / (kCols - 1);
    const double dy = (kY1 - kY0) / (kRows - 1);
    const double jitter = 0.25;
    std::vector<Point2> vertices;
    for (std::size_t r = 0; r < kRows; ++r) {
        for (std::size_t c = 0; c < kCols; ++c) {
            const double ux = (2.0 * uniform01(rng) - 1.0) * jitter * dx;
            const double uy = (2.0 * uniform01(rng) - 1.0) * jitter * dy;
            const bool edge_col = c == 0 || c + 1 == kCols;
            const bool edge_row = r == 0 || r + 1 == kRows;
            // Boundary vertices slide along the box; corners stay put.
            vertices.emplace_back(kX0 + c * dx + (edge_col ? 0.0 : ux), kY0 + r * dy + (edge_row ? 0.0 : uy));
        }
    }
    std::vector<Edge> edges;
    auto id = [](std::size_t r, std::size_t c) { return r * kCols + c; };
    for (std::size_t r = 0; r < kRows; ++r)
        for (std::size_t c = 0; c + 1 < kCols; ++c) edges.push_back({id(r, c), id(r, c + 1)});
    for (std::size_t r = 0; r + 1 < kRows; ++r)
        for (std::size_t c = 0; c < kCols; ++c) edges.push_back({id(r, c), id(r + 1, c)});

    std::vector<std::size_t> order(edges.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    for (std::size_t k = order.size(); k > 1; --k)
        std::swap(order[k - 1], order[std::min(k - 1, static_cast<std::size_t>(uniform01(rng) * k))]);

    std::vector<bool> removed(edges.size(), false);
    std::size_t count = 0;
    std::vector<Edge> kept = edges;
    for (const std::size_t k : order) {
        if (count == kRemoved) break;
        // Position of edge k in the current kept list.
        std::size_t pos = 0;
        for (std::size_t j = 0; j < k; ++j) pos += removed[j] ? 0 : 1;
        if (!connected(vertices.size(), kept, pos)) continue;
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
        removed[k] = true;
        ++count;
    }
    return Network(std::move(vertices), std::move(kept));
}

} // namespace

Benchmark generate_benchmark(std::uint64_t seed) {
    Rng rng(seed);
    for (int tries = 0; tries < 100; ++tries) {
        Network n = attempt(rng);
        if (n.segment_count() == 87 && validate_network(n).empty()) return {std::move(n), DensityField::airport()};
    }
    throw NumericalFailure("benchmark generation failed", 0.0, 0.0);
}

ScenarioConfig benchmark_scenario(std::uint64_t seed) {
    Benchmark b = generate_benchmark(seed);
    ScenarioConfig cfg;
    cfg.network = std::move(b.network);
    cfg.density = std::move(b.density);
    cfg.performance.kind = PerformanceSpec::Kind::Tanh;
    cfg.performance.R = cfg.pipeline.R_final;
    cfg.pipeline.rng_seed = seed;
    return cfg;
}

} // namespace netdeploy

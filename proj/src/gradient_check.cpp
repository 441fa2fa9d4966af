#include "netdeploy/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netdeploy {

namespace {

struct Placement {
    SensorSet sensors;
    std::vector<std::size_t> segments;
};

Point2 interior_point(const Network& n, Rng& rng, std::size_t& segment) {
    const double target = uniform01(rng) * n.total_length();
    const double t = 0.05 + 0.9 * uniform01(rng);
    double acc = 0.0;
    segment = n.segment_count() - 1;
    for (std::size_t k = 0; k < n.segment_count(); ++k) {
        acc += segment_length(n.segment(k));
        if (target < acc) {
            segment = k;
            break;
        }
    }
    return point_at(n.segment(segment), t);
}

Placement draw(const Network& n, Mode mode, std::size_t m, Rng& rng) {
    Placement out;
    auto [lo, hi] = bounding_box(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (mode == Mode::PlaneCollapsed) {
            out.sensors.emplace_back(lo.x() + (hi.x() - lo.x()) * uniform01(rng),
                                     lo.y() + (hi.y() - lo.y()) * uniform01(rng));
            out.segments.push_back(0);
        } else {
            std::size_t k = 0;
            out.sensors.push_back(interior_point(n, rng, k));
            out.segments.push_back(k);
        }
    }
    return out;
}

bool sensors_separated(const SensorSet& p, double margin) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if ((p[i] - p[j]).norm() < margin) return false;
    return true;
}

bool collapsed_ok(const CollapsedNetwork& c, const PerformanceFunction& f, const SensorSet& p, double margin) {
    std::vector<double> jumps;
    for (std::size_t k = 0; k < f.breakpoints().size(); ++k)
        if (f.jump(k) != 0.0) jumps.push_back(f.breakpoints()[k]);
    for (const auto& b : c.barycenters) {
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        for (const auto& s : p) {
            const double d = (b.position - s).norm();
            if (d < d1) {
                d2 = d1;
                d1 = d;
            } else if (d < d2) {
                d2 = d;
            }
        }
        if (d1 < margin || d2 - d1 < margin) return false;
        for (const double R : jumps)
            if (std::abs(d1 - R) < margin) return false;
    }
    return true;
}

double rel_error(const std::vector<double>& g, const std::vector<double>& fd) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        num += (g[k] - fd[k]) * (g[k] - fd[k]);
        den += fd[k] * fd[k];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-8);
}

} // namespace

double gradient_tolerance(Mode mode) { return mode == Mode::NetworkFull ? 1e-4 : 1e-5; }

GradientCheckReport check_gradients(const Network& n, const PerformanceFunction& f, const DensityFn& density,
                                    const GradientCheckOptions& opt) {
    GradientCheckReport report;
    Rng rng(opt.seed);
    const CollapsedNetwork collapsed = build_collapsed(n, opt.r_collapse, density);
    const double h = opt.fd_step;

    for (const Mode mode : opt.modes) {
        ModeCheck check;
        check.mode = mode;
        if (mode == Mode::NetworkFull && !f.continuous()) {
            check.skipped = true;
            report.modes.push_back(check);
            continue;
        }
        double sum = 0.0;
        while (check.samples < opt.samples) {
            const std::size_t span = opt.max_sensors - opt.min_sensors + 1;
            const std::size_t m = opt.min_sensors + std::min(span - 1, static_cast<std::size_t>(uniform01(rng) * span));
            const Placement place = draw(n, mode, m, rng);
            const SensorSet& p = place.sensors;
            const bool ok = sensors_separated(p, opt.margin) &&
                            (mode == Mode::NetworkFull || collapsed_ok(collapsed, f, p, opt.margin));
            if (!ok) {
                ++check.rejected;
                if (check.rejected > 1000 * (opt.samples + 1)) throw DegenerateConfiguration("no admissible samples");
                continue;
            }

            std::vector<double> g, fd;
            if (mode == Mode::PlaneCollapsed) {
                const auto grad = grad_collapsed_lex(collapsed, f, p);
                for (std::size_t i = 0; i < m; ++i) {
                    for (int c = 0; c < 2; ++c) {
                        SensorSet plus = p, minus = p;
                        plus[i][c] += h;
                        minus[i][c] -= h;
                        g.push_back(grad[i][c]);
                        fd.push_back((h_collapsed(collapsed, f, plus) - h_collapsed(collapsed, f, minus)) / (2 * h));
                    }
                }
            } else if (mode == Mode::NetworkCollapsed) {
                const auto grad = grad_collapsed_lex(collapsed, f, p);
                for (std::size_t i = 0; i < m; ++i) {
                    const NetworkLocation where{p[i], place.segments[i], 0.0, std::nullopt};
                    const ConstrainedDerivative cd = dir_deriv_on_network(grad[i], n, where);
                    const Vector2 w = cd.direction;
                    SensorSet plus = p, minus = p;
                    plus[i] += h * w;
                    minus[i] -= h * w;
                    g.push_back(cd.rate);
                    fd.push_back((h_collapsed(collapsed, f, plus) - h_collapsed(collapsed, f, minus)) / (2 * h));
                }
            } else {
                const NetworkCells cells = clip_network_cells(n, p);
                for (std::size_t i = 0; i < m; ++i) {
                    const Vector2 gi = cell_derivative_full(n, f, density, p, i, cells, opt.full_tol);
                    for (int c = 0; c < 2; ++c) {
                        SensorSet plus = p, minus = p;
                        plus[i][c] += h;
                        minus[i][c] -= h;
                        g.push_back(gi[c]);
                        fd.push_back((h_full(n, f, density, plus, opt.full_tol) -
                                      h_full(n, f, density, minus, opt.full_tol)) /
                                     (2 * h));
                    }
                }
            }
            const double e = rel_error(g, fd);
            check.max_rel_error = std::max(check.max_rel_error, e);
            sum += e;
            ++check.samples;
        }
        check.mean_rel_error = check.samples ? sum / static_cast<double>(check.samples) : 0.0;
        report.modes.push_back(check);
    }
    return report;
}

} // namespace netdeploy

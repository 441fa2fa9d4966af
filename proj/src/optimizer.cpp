#include "netdeploy/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace netdeploy {

unsigned worker_count() {
    if (const char* env = std::getenv("NETDEPLOY_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t w) {
        for (std::size_t i = w; i < count; i += workers) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::PlaneCollapsed: return "plane-collapsed";
    case Mode::NetworkCollapsed: return "network-collapsed";
    case Mode::NetworkFull: return "network-full";
    }
    return "unknown";
}

DeploymentModel DeploymentModel::make(Mode mode, Network network, const PerformanceFunction& f, DensityFn density,
                                      double r_collapse, QuadratureTolerance quadrature) {
    DeploymentModel m;
    m.mode = mode;
    m.network = std::move(network);
    m.f = f;
    m.density = std::move(density);
    m.quadrature = quadrature;
    if (mode != Mode::NetworkFull) m.collapsed = build_collapsed(m.network, r_collapse, m.density);
    return m;
}

double default_delta_max(const DeploymentModel& model, const LineSearchParams& ls) {
    if (ls.delta_max > 0.0) return ls.delta_max;
    if (model.mode == Mode::PlaneCollapsed) return 0.25 * model.collapsed.resolution;
    return 0.1 * model.network.shortest_segment();
}

CellSnapshot take_snapshot(const DeploymentModel& model, const SensorSet& p) {
    CellSnapshot snap;
    snap.values.assign(p.size(), 0.0);
    if (model.mode == Mode::NetworkFull) {
        snap.network_cells = clip_network_cells(model.network, p);
        parallel_for(p.size(), [&](std::size_t i) {
            snap.values[i] = cell_value_full(model.network, snap.network_cells.by_sensor[i], p[i], model.f,
                                             model.density, model.quadrature);
        });
    } else {
        snap.allocation = allocate_barycenters_lex(model.collapsed, p);
        snap.collapsed_cells.resize(p.size());
        for (std::size_t e = 0; e < snap.allocation.owner.size(); ++e)
            snap.collapsed_cells[snap.allocation.owner[e]].push_back(e);
        for (std::size_t i = 0; i < p.size(); ++i)
            snap.values[i] = cell_value_collapsed(model.collapsed, model.f, snap.collapsed_cells[i], p[i]);
    }
    for (const double v : snap.values) snap.total += v;
    return snap;
}

double objective_value(const DeploymentModel& model, const SensorSet& p) { return take_snapshot(model, p).total; }

namespace {

double frozen_value(const DeploymentModel& model, const CellSnapshot& snap, std::size_t i, const Point2& x) {
    if (model.mode == Mode::NetworkFull)
        return cell_value_full(model.network, snap.network_cells.by_sensor[i], x, model.f, model.density,
                               model.quadrature);
    return cell_value_collapsed(model.collapsed, model.f, snap.collapsed_cells[i], x);
}

} // namespace

SensorDirection sensor_direction(const DeploymentModel& model, const CellSnapshot& snap, const SensorSet& p,
                                 std::size_t i) {
    SensorDirection out;
    if (model.mode == Mode::NetworkFull)
        out.gradient = cell_gradient_full(model.network, snap.network_cells.by_sensor[i], p[i], model.f,
                                          model.density, model.quadrature);
    else
        out.gradient = cell_gradient_collapsed(model.collapsed, model.f, snap.collapsed_cells[i], p[i]);

    if (model.mode == Mode::PlaneCollapsed) {
        out.direction = out.gradient;
        out.magnitude = out.gradient.norm();
        return out;
    }
    const NetworkLocation where = locate_on_network(model.network, p[i]);
    const ConstrainedDerivative cd = dir_deriv_on_network(out.gradient, model.network, where);
    out.direction = cd.vector();
    out.magnitude = cd.magnitude();
    out.segment = cd.segment;
    if (where.vertex) {
        out.t = model.network.edges()[cd.segment].from == *where.vertex ? 0.0 : 1.0;
    } else {
        out.t = where.t;
    }
    return out;
}

LineSearchResult line_search(const DeploymentModel& model, const CellSnapshot& snap, const SensorSet& p,
                             std::size_t i, const SensorDirection& dir, double delta_max,
                             const LineSearchParams& ls) {
    LineSearchResult out;
    out.position = p[i];
    out.value_after = snap.values[i];
    if (!(dir.magnitude > 0.0)) return out;

    const double before = snap.values[i];
    double step = delta_max / dir.magnitude;
    for (int k = 0; k < ls.max_backtracks; ++k, step *= 0.5) {
        Point2 trial;
        if (model.mode == Mode::PlaneCollapsed) {
            trial = p[i] + step * dir.direction;
        } else {
            // Motion stays on the host segment and stops at its vertices.
            const Segment s = model.network.segment(dir.segment);
            const double dt = step * dir.direction.dot(s.delta()) / s.delta().squaredNorm();
            double t = std::clamp(dir.t + dt, 0.0, 1.0);
            const double snap_t = kGeomTol / std::sqrt(s.delta().squaredNorm());
            if (t < snap_t) t = 0.0;
            if (t > 1.0 - snap_t) t = 1.0;
            trial = point_at(s, t);
        }
        const double predicted = dir.gradient.dot(trial - p[i]);
        if (!(predicted > 0.0)) continue;
        bool crowded = false;
        for (std::size_t j = 0; j < p.size() && !crowded; ++j)
            crowded = j != i && (trial - p[j]).norm() <= ls.separation;
        if (crowded) continue;
        // The collapsed gradient is undefined on a barycenter.
        if (model.mode != Mode::NetworkFull) {
            bool singular = false;
            for (const auto& b : model.collapsed.barycenters)
                if ((trial - b.position).squaredNorm() <= kGeomTol * kGeomTol) {
                    singular = true;
                    break;
                }
            if (singular) continue;
        }
        double value = 0.0;
        try {
            value = frozen_value(model, snap, i, trial);
        } catch (const SingularConfiguration&) {
            continue;
        }
        if (value - before >= ls.armijo * predicted) {
            out.delta = step;
            out.position = trial;
            out.value_after = value;
            out.backtracks = k;
            return out;
        }
    }
    out.backtracks = ls.max_backtracks;
    return out;
}

StepReport ascent_iteration(const DeploymentModel& model, DeploymentState& state, const LineSearchParams& ls) {
    const SensorSet& p = state.sensors;
    const std::size_t m = p.size();
    const CellSnapshot snap = take_snapshot(model, p);

    StepReport report;
    report.h_before = snap.total;
    report.cell_before = snap.values;
    report.derivative.assign(m, 0.0);
    std::vector<SensorDirection> dirs(m);
    parallel_for(m, [&](std::size_t i) { dirs[i] = sensor_direction(model, snap, p, i); });
    for (std::size_t i = 0; i < m; ++i) {
        report.derivative[i] = dirs[i].magnitude;
        report.max_derivative = std::max(report.max_derivative, dirs[i].magnitude);
    }

    const double dmax = default_delta_max(model, ls);
    std::vector<LineSearchResult> moves(m);
    bool accepted = false;
    for (int retry = 0; retry <= ls.max_retries && !accepted; ++retry) {
        const double cap = std::ldexp(dmax, -retry);
        parallel_for(m, [&](std::size_t i) { moves[i] = line_search(model, snap, p, i, dirs[i], cap, ls); });
        SensorSet next(m);
        for (std::size_t i = 0; i < m; ++i) next[i] = moves[i].position;
        CellSnapshot after;
        try {
            after = take_snapshot(model, next);
        } catch (const DegenerateConfiguration&) {
            report.retries = retry + 1;
            continue;
        }
        if (after.total >= snap.total - ls.decrease_tol) {
            accepted = true;
            report.retries = retry;
            report.h_after = after.total;
            report.cell_after = after.values;
            state.sensors = std::move(next);
            for (std::size_t i = 0; i < m; ++i) report.delta.push_back(moves[i].delta);
        } else {
            report.retries = retry + 1;
        }
    }
    if (!accepted) {
        report.h_after = snap.total;
        report.cell_after = snap.values;
        report.delta.assign(m, 0.0);
    }
    if (state.h_history.empty()) state.h_history.push_back(report.h_before);
    state.h_history.push_back(report.h_after);
    state.mode = model.mode;
    ++state.iteration;
    return report;
}

void PipelineConfig::validate() const {
    auto fail = [](const char* field, const std::string& what) { throw ValidationError(field, what); };
    if (cluster_count == 0) fail("pipeline.cluster_count", "must be positive");
    if (sensors_per_cluster == 0) fail("pipeline.sensors_per_cluster", "must be positive");
    if (!(r_collapse > 0.0) || !std::isfinite(r_collapse)) fail("pipeline.r_collapse", "must be finite and > 0");
    if (!(R_final > 0.0) || !std::isfinite(R_final)) fail("pipeline.R_final", "must be finite and > 0");
    if (!std::isfinite(R_initial) || !(R_initial >= R_final))
        fail("pipeline.R_final", "R_final must not exceed R_initial");
    if (step1_iterations == 0) fail("pipeline.step1_iterations", "must be positive");
    if (step2_iterations == 0) fail("pipeline.step2_iterations", "must be positive");
    if (!(spread_radius > 0.0) || !std::isfinite(spread_radius)) fail("pipeline.spread_radius", "must be > 0");
    for (const auto* ls : {&step1_search, &step2_search}) {
        const char* name = "pipeline.line_search";
        if (!(ls->delta_max >= 0.0)) fail(name, "delta_max must be >= 0");
        if (ls->max_backtracks <= 0) fail(name, "max_backtracks must be positive");
        if (!(ls->armijo >= 0.0 && ls->armijo < 1.0)) fail(name, "armijo must lie in [0, 1)");
        if (ls->max_retries < 0) fail(name, "max_retries must be >= 0");
    }
    if (!(quadrature.absolute > 0.0) || !(quadrature.relative >= 0.0))
        fail("pipeline.quadrature_tol", "must be > 0");
    if (!(gradient_tol >= 0.0)) fail("pipeline.gradient_tol", "must be >= 0");
    if (!initial_sensors.empty() && initial_sensors.size() != cluster_count * sensors_per_cluster)
        fail("initial_sensors", "must hold cluster_count * sensors_per_cluster points");
}

double annealed_radius(const PipelineConfig& config, std::size_t j) {
    if (config.step1_iterations <= 1) return config.R_final;
    return config.R_initial + (config.R_final - config.R_initial) * static_cast<double>(j) /
                                  static_cast<double>(config.step1_iterations - 1);
}

PerformanceFunction profile_at(const PipelineConfig& config, double R) {
    if (config.profile) return *config.profile;
    return PerformanceFunction::tanh_profile(R);
}

namespace {

TraceRow make_row(std::size_t iteration, double R, double H, const SensorSet& p, std::vector<double> deltas) {
    TraceRow row;
    row.iteration = iteration;
    row.R = R;
    row.H = H;
    row.positions = p;
    row.deltas = std::move(deltas);
    return row;
}

} // namespace

Step1Result run_step1(const PipelineConfig& config, const Network& network, const DensityFn& density,
                      const SensorSet& initial_centers) {
    config.validate();
    require_distinct(initial_centers);
    DeploymentModel model = DeploymentModel::make(Mode::PlaneCollapsed, network,
                                                  profile_at(config, annealed_radius(config, 0)), density,
                                                  config.r_collapse, config.quadrature);
    DeploymentState state;
    state.sensors = initial_centers;
    state.mode = Mode::PlaneCollapsed;

    Step1Result out;
    state.radius = annealed_radius(config, 0);
    out.trace.rows.push_back(make_row(0, state.radius, objective_value(model, state.sensors), state.sensors,
                                      std::vector<double>(state.sensors.size(), 0.0)));
    for (std::size_t j = 0; j < config.step1_iterations; ++j) {
        state.radius = annealed_radius(config, j);
        model.f = profile_at(config, state.radius);
        const StepReport report = ascent_iteration(model, state, config.step1_search);
        out.trace.rows.push_back(make_row(j + 1, state.radius, report.h_after, state.sensors, report.delta));
    }
    out.centers = state.sensors;
    return out;
}

Step2Result run_step2(const PipelineConfig& config, const Network& network, const DensityFn& density,
                      const SensorSet& initial) {
    config.validate();
    const Mode mode = config.step2_model == Step2Model::Full ? Mode::NetworkFull : Mode::NetworkCollapsed;
    const PerformanceFunction f = profile_at(config, config.R_final);
    if (mode == Mode::NetworkFull && !f.continuous())
        throw InvalidArgument("the full-network model needs a continuous performance function");
    DeploymentModel model = DeploymentModel::make(mode, network, f, density, config.r_collapse, config.quadrature);

    DeploymentState state;
    state.mode = mode;
    state.radius = config.R_final;
    for (const auto& q : initial) state.sensors.push_back(locate_on_network(network, q).point);
    require_distinct(state.sensors);

    Step2Result out;
    out.trace.rows.push_back(make_row(0, state.radius, objective_value(model, state.sensors), state.sensors,
                                      std::vector<double>(state.sensors.size(), 0.0)));
    for (std::size_t j = 0; j < config.step2_iterations; ++j) {
        const StepReport report = ascent_iteration(model, state, config.step2_search);
        out.trace.rows.push_back(make_row(j + 1, state.radius, report.h_after, state.sensors, report.delta));
        const bool stalled = std::all_of(report.delta.begin(), report.delta.end(), [](double d) { return d == 0.0; });
        if (report.max_derivative < config.gradient_tol || stalled) break;
    }
    out.sensors = state.sensors;
    return out;
}

PipelineResult run_pipeline(const PipelineConfig& config, const Network& network, const DensityFn& density,
                            PipelineStages stages) {
    config.validate();
    require_valid(network);
    Rng rng(config.rng_seed);
    PipelineResult out;
    if (config.initial_sensors.empty()) {
        for (std::size_t i = 0; i < config.cluster_count * config.sensors_per_cluster; ++i)
            out.initial_sensors.push_back(random_network_point(network, rng));
    } else {
        out.initial_sensors = config.initial_sensors;
    }
    out.cluster_centers = cluster_sensors(out.initial_sensors, config.cluster_count, rng).centers;

    using clock = std::chrono::steady_clock;
    SensorSet centers = out.cluster_centers;
    if (stages != PipelineStages::Step2) {
        const auto t0 = clock::now();
        Step1Result s1 = run_step1(config, network, density, centers);
        out.step1_seconds = std::chrono::duration<double>(clock::now() - t0).count();
        out.step1 = std::move(s1.trace);
        centers = std::move(s1.centers);
    }
    if (stages == PipelineStages::Step1) {
        out.final_sensors = centers;
        return out;
    }
    out.spread_sensors = spread_and_project(network, centers, config.sensors_per_cluster, config.spread_radius, rng);
    const auto t0 = clock::now();
    Step2Result s2 = run_step2(config, network, density, out.spread_sensors);
    out.step2_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    out.step2 = std::move(s2.trace);
    out.final_sensors = std::move(s2.sensors);
    return out;
}

} // namespace netdeploy

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "netdeploy/density.hpp"
#include "netdeploy/gradient.hpp"
#include "netdeploy/network.hpp"
#include "netdeploy/objective.hpp"
#include "netdeploy/performance.hpp"
#include "netdeploy/trace.hpp"
#include "netdeploy/voronoi.hpp"

namespace netdeploy {

// Parallel helpers -------------------------------------------------------------

/// Worker count from NETDEPLOY_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

/// Calls fn(i) for i in [0, count), split over worker_count() threads. The
/// first exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// Randomness -------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits; identical across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Engine -----------------------------------------------------------------------

enum class Mode { PlaneCollapsed, NetworkCollapsed, NetworkFull };

const char* mode_name(Mode m);

/// Everything the objective depends on except the sensor positions.
struct DeploymentModel {
    Mode mode = Mode::PlaneCollapsed;
    Network network;
    CollapsedNetwork collapsed;
    PerformanceFunction f = PerformanceFunction::tanh_profile(1.0);
    DensityFn density = uniform_density();
    QuadratureTolerance quadrature;

    static DeploymentModel make(Mode mode, Network network, const PerformanceFunction& f, DensityFn density,
                                double r_collapse, QuadratureTolerance quadrature = {});
};

struct LineSearchParams {
    /// Largest displacement length of a single sensor per iteration; 0 picks
    /// 0.25 r_collapse (collapsed modes) or 0.1 * shortest segment (network).
    double delta_max = 0.0;
    int max_backtracks = 40;
    /// Sufficient-increase factor c: accept when gain >= c * g . displacement.
    double armijo = 0.25;
    int max_retries = 20;
    /// Global decrease tolerated before a retry.
    double decrease_tol = 1e-9;
    /// Trial positions closer than this to another sensor are rejected.
    double separation = 1e-9;
};

double default_delta_max(const DeploymentModel& model, const LineSearchParams& ls);

struct DeploymentState {
    SensorSet sensors;
    Mode mode = Mode::PlaneCollapsed;
    double radius = 1.0;
    std::size_t iteration = 0;
    std::vector<double> h_history;
};

/// Objective with fresh allocation, summed cell by cell in sensor order.
double objective_value(const DeploymentModel& model, const SensorSet& p);

/// Per-sensor frozen-cell values and gradients at a configuration.
struct CellSnapshot {
    CollapsedAllocation allocation;
    std::vector<std::vector<std::size_t>> collapsed_cells;
    NetworkCells network_cells;
    std::vector<double> values;
    double total = 0.0;
};

CellSnapshot take_snapshot(const DeploymentModel& model, const SensorSet& p);

/// One sensor's move direction at the snapshot.
struct SensorDirection {
    Vector2 gradient = Vector2::Zero();
    /// Ascent direction actually followed (projected in network modes).
    Vector2 direction = Vector2::Zero();
    double magnitude = 0.0;
    std::size_t segment = 0;
    double t = 0.0;
};

SensorDirection sensor_direction(const DeploymentModel& model, const CellSnapshot& snap, const SensorSet& p,
                                 std::size_t i);

struct LineSearchResult {
    double delta = 0.0;
    Point2 position;
    double value_after = 0.0;
    int backtracks = 0;
};

/// Backtracking on sensor i alone with its cell frozen. The first trial moves
/// the sensor by delta_max; each rejection halves the step. delta is the
/// multiplier of dir.direction (0 when nothing was accepted).
LineSearchResult line_search(const DeploymentModel& model, const CellSnapshot& snap, const SensorSet& p,
                             std::size_t i, const SensorDirection& dir, double delta_max,
                             const LineSearchParams& ls = {});

struct StepReport {
    std::vector<double> delta;
    std::vector<double> derivative;
    std::vector<double> cell_before;
    std::vector<double> cell_after;
    double h_before = 0.0;
    double h_after = 0.0;
    double max_derivative = 0.0;
    int retries = 0;
};

/// Synchronous update of all sensors. Appends H to state.h_history.
StepReport ascent_iteration(const DeploymentModel& model, DeploymentState& state, const LineSearchParams& ls = {});

// Pipeline ---------------------------------------------------------------------

enum class Step2Model { Collapsed, Full };

struct PipelineConfig {
    std::size_t cluster_count = 10;
    std::size_t sensors_per_cluster = 5;
    double r_collapse = 0.3;
    double R_initial = 10.0;
    double R_final = 1.0;
    std::size_t step1_iterations = 200;
    std::size_t step2_iterations = 200;
    double spread_radius = 0.5;
    std::uint64_t rng_seed = 1;
    Step2Model step2_model = Step2Model::Full;
    LineSearchParams step1_search;
    LineSearchParams step2_search;
    QuadratureTolerance quadrature;
    /// Stop step 2 once every constrained derivative is below this.
    double gradient_tol = 1e-6;
    /// Fixed profile; when unset the tanh profile is annealed from R_initial to R_final.
    std::optional<PerformanceFunction> profile;
    /// Starting sensors for clustering; drawn on the network when empty.
    std::vector<Point2> initial_sensors;

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// R used before iteration j of step 1.
double annealed_radius(const PipelineConfig& config, std::size_t j);

PerformanceFunction profile_at(const PipelineConfig& config, double R);

struct Step1Result {
    SensorSet centers;
    RunTrace trace;
};

struct Step2Result {
    SensorSet sensors;
    RunTrace trace;
};

Step1Result run_step1(const PipelineConfig& config, const Network& network, const DensityFn& density,
                      const SensorSet& initial_centers);

Step2Result run_step2(const PipelineConfig& config, const Network& network, const DensityFn& density,
                      const SensorSet& initial);

struct PipelineResult {
    SensorSet initial_sensors;
    SensorSet cluster_centers;
    SensorSet spread_sensors;
    SensorSet final_sensors;
    RunTrace step1;
    RunTrace step2;
    double step1_seconds = 0.0;
    double step2_seconds = 0.0;
};

enum class PipelineStages { Step1, Step2, Both };

/// Random start on N (or config.initial_sensors), k-means, step 1, one
/// spread-and-project, step 2. Step2 alone skips the plane optimization.
PipelineResult run_pipeline(const PipelineConfig& config, const Network& network, const DensityFn& density,
                            PipelineStages stages = PipelineStages::Both);

// Clustering -------------------------------------------------------------------

struct Clustering {
    std::vector<Point2> centers;
    std::vector<std::size_t> assignment;
};

/// Seeded k-means (k-means++ seeding, at most 100 Lloyd rounds).
Clustering cluster_sensors(const std::vector<Point2>& positions, std::size_t k, std::uint64_t seed);
Clustering cluster_sensors(const std::vector<Point2>& positions, std::size_t k, Rng& rng);

/// per_cluster points uniform in the disc of radius rho around each center,
/// projected on the network and nudged apart along their segment if needed.
SensorSet spread_and_project(const Network& n, const std::vector<Point2>& centers, std::size_t per_cluster,
                             double rho, std::uint64_t seed);
SensorSet spread_and_project(const Network& n, const std::vector<Point2>& centers, std::size_t per_cluster,
                             double rho, Rng& rng);

/// Uniform point on N with respect to arc length.
Point2 random_network_point(const Network& n, Rng& rng);

} // namespace netdeploy

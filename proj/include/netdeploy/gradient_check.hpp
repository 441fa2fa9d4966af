#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netdeploy/optimizer.hpp"

namespace netdeploy {

struct GradientCheckOptions {
    std::size_t samples = 100;
    double fd_step = 1e-6;
    std::uint64_t seed = 1;
    std::size_t min_sensors = 2;
    std::size_t max_sensors = 10;
    double r_collapse = 0.3;
    /// Minimum gap to an allocation tie, a jump radius or another sensor.
    double margin = 1e-3;
    QuadratureTolerance full_tol{1e-10, 1e-10, 40};
    std::vector<Mode> modes = {Mode::PlaneCollapsed, Mode::NetworkCollapsed, Mode::NetworkFull};
};

struct ModeCheck {
    Mode mode = Mode::PlaneCollapsed;
    std::size_t samples = 0;
    std::size_t rejected = 0;
    double max_rel_error = 0.0;
    double mean_rel_error = 0.0;
    /// Full mode is skipped for discontinuous profiles.
    bool skipped = false;
};

struct GradientCheckReport {
    std::vector<ModeCheck> modes;
};

/// Relative error ||G - G_fd|| / max(||G_fd||, 1e-8) at random non-degenerate
/// configurations, one entry per mode. Plane mode compares planar gradients,
/// network-collapsed the along-edge derivatives, network-full the planar cell
/// derivatives against central differences of h_full.
GradientCheckReport check_gradients(const Network& n, const PerformanceFunction& f, const DensityFn& density,
                                    const GradientCheckOptions& options = {});

/// Tolerance a mode must meet: 1e-5 for collapsed modes, 1e-4 for the full model.
double gradient_tolerance(Mode mode);

} // namespace netdeploy

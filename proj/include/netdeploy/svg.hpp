#pragma once

#include <string>

#include "netdeploy/density.hpp"
#include "netdeploy/network.hpp"
#include "netdeploy/voronoi.hpp"

namespace netdeploy {

struct SvgOptions {
    /// Sensing parameter; sensors are drawn as discs of radius 7/8 R.
    double R = 1.0;
    bool density_contours = true;
    int grid_x = 200;
    int grid_y = 100;
    int levels = 8;
    /// World units added around the network's bounding box.
    double margin = 1.0;
    /// Output width in pixels; height follows the aspect ratio.
    double width_px = 1000.0;
};

/// Standalone SVG in world coordinates (y up). cells may be null.
std::string render_svg(const Network& n, const DensityFn& density, const SensorSet& sensors,
                       const NetworkCells* cells, const SvgOptions& options = {});

void emit_svg(const Network& n, const DensityFn& density, const SensorSet& sensors, const NetworkCells* cells,
              const std::string& path, const SvgOptions& options = {});

} // namespace netdeploy

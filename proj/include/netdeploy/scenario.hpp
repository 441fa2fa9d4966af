#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netdeploy/density.hpp"
#include "netdeploy/network.hpp"
#include "netdeploy/optimizer.hpp"
#include "netdeploy/performance.hpp"

namespace netdeploy {

struct PerformanceSpec {
    enum class Kind { Tanh, Piecewise };
    Kind kind = Kind::Tanh;
    /// Tanh radius for fixed-profile uses (gradient checks); the pipeline anneals R itself.
    double R = 1.0;
    std::vector<double> breakpoints;
    std::vector<ProfilePiece> pieces;

    PerformanceFunction build() const;
};

struct OutputSpec {
    std::string directory = "out";
    bool svg = false;
};

struct ScenarioConfig {
    /// Network file as written in the scenario; empty when the network is inline.
    std::string network_file;
    Network network;
    DensityField density = DensityField::airport();
    PerformanceSpec performance;
    PipelineConfig pipeline;
    OutputSpec output;
};

/// Reads and validates a scenario. Relative network paths resolve against
/// the scenario's directory. Throws ParseError (with line) or ValidationError
/// (with field path).
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text, const std::string& base_dir = ".");

/// Canonical JSON: every field written, fixed key order.
std::string serialize_scenario(const ScenarioConfig& config);

Network load_network_file(const std::string& path);
Network parse_network(const std::string& text);
/// Reads the file without enforcing the network invariants.
Network read_network_unchecked(const std::string& path);
std::string serialize_network(const Network& n);

struct Benchmark {
    Network network;
    DensityField density;
};

/// Jittered-grid corridor network: 63 vertices, 87 segments, inside [2,21]x[1,11],
/// with the airport density field.
Benchmark generate_benchmark(std::uint64_t seed);

/// Benchmark network and density with default pipeline values.
ScenarioConfig benchmark_scenario(std::uint64_t seed);

} // namespace netdeploy

#include "netdeploy/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "netdeploy/gradient_check.hpp"
#include "netdeploy/scenario.hpp"
#include "netdeploy/svg.hpp"

namespace netdeploy {

namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

int cmd_validate(const std::string& path) {
    const Network n = read_network_unchecked(path);
    const auto violations = validate_network(n);
    if (violations.empty()) {
        std::cout << "valid: " << n.vertex_count() << " vertices, " << n.segment_count() << " segments\n";
        return 0;
    }
    for (const auto& v : violations) std::cout << v.describe() << "\n";
    return 1;
}

int cmd_run(const std::string& scenario_path, const std::string& step, const std::optional<std::uint64_t>& seed,
            const std::string& out_dir, bool svg) {
    ScenarioConfig cfg = load_scenario(scenario_path);
    if (seed) cfg.pipeline.rng_seed = *seed;
    const fs::path dir = out_dir.empty() ? fs::path(cfg.output.directory) : fs::path(out_dir);
    fs::create_directories(dir);
    const PipelineStages stages =
        step == "1" ? PipelineStages::Step1 : step == "2" ? PipelineStages::Step2 : PipelineStages::Both;

    const DensityField density = cfg.density;
    const PipelineResult result = run_pipeline(cfg.pipeline, cfg.network, density, stages);
    if (stages != PipelineStages::Step2) write_trace(result.step1, (dir / "step1_trace.csv").string());
    if (stages != PipelineStages::Step1) write_trace(result.step2, (dir / "step2_trace.csv").string());

    if (svg || cfg.output.svg) {
        SvgOptions opt;
        opt.R = cfg.pipeline.R_final;
        if (stages != PipelineStages::Step2)
            emit_svg(cfg.network, density, result.step1.rows.back().positions, nullptr, (dir / "step1.svg").string(), opt);
        if (stages != PipelineStages::Step1) {
            const NetworkCells cells = clip_network_cells(cfg.network, result.final_sensors);
            emit_svg(cfg.network, density, result.final_sensors, &cells, (dir / "step2.svg").string(), opt);
        }
    }

    auto summary = [](const char* name, const RunTrace& t, double seconds) {
        if (t.rows.empty()) return;
        std::printf("%s: %zu iterations, H %.10g -> %.10g (%.2f s)\n", name, t.iterations(), t.rows.front().H,
                    t.rows.back().H, seconds);
    };
    summary("step 1", result.step1, result.step1_seconds);
    summary("step 2", result.step2, result.step2_seconds);
    std::printf("outputs in %s\n", dir.string().c_str());
    return 0;
}

int cmd_benchmark(std::uint64_t seed, const std::string& out_dir) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    ScenarioConfig cfg = benchmark_scenario(seed);
    write_text(dir / "network.json", serialize_network(cfg.network));
    cfg.network_file = "network.json";
    cfg.output.directory = (dir / "results").string();
    write_text(dir / "scenario.json", serialize_scenario(cfg));
    std::printf("benchmark: %zu vertices, %zu segments -> %s\n", cfg.network.vertex_count(),
                cfg.network.segment_count(), (dir / "scenario.json").string().c_str());
    return 0;
}

int cmd_check(const std::string& scenario_path, std::size_t samples, const std::optional<std::uint64_t>& seed) {
    const ScenarioConfig cfg = load_scenario(scenario_path);
    GradientCheckOptions opt;
    opt.samples = samples;
    opt.seed = seed.value_or(cfg.pipeline.rng_seed);
    opt.r_collapse = cfg.pipeline.r_collapse;
    const PerformanceFunction f = cfg.performance.build();
    const DensityField density = cfg.density;
    const GradientCheckReport report = check_gradients(cfg.network, f, density, opt);
    bool pass = true;
    double worst = 0.0;
    for (const auto& m : report.modes) {
        if (m.skipped) {
            std::printf("%-18s skipped (discontinuous profile)\n", mode_name(m.mode));
            continue;
        }
        const bool ok = m.max_rel_error < gradient_tolerance(m.mode);
        pass = pass && ok;
        worst = std::max(worst, m.max_rel_error);
        std::printf("%-18s samples %zu  max rel error %.3e  mean %.3e  (tol %.0e) %s\n", mode_name(m.mode),
                    m.samples, m.max_rel_error, m.mean_rel_error, gradient_tolerance(m.mode), ok ? "ok" : "FAIL");
    }
    std::printf("max relative error: %.6e\n", worst);
    return pass ? 0 : 1;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Sensor deployment over planar networks"};
    app.require_subcommand(1);

    std::string scenario, network_path, step = "both", out_dir;
    std::uint64_t seed_value = 0;
    bool svg = false;
    std::size_t samples = 100;

    auto* run = app.add_subcommand("run", "optimize a scenario and write traces");
    run->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--step", step, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));
    auto* run_seed = run->add_option("--seed", seed_value, "override the scenario seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--svg", svg, "write SVG plots");

    auto* validate = app.add_subcommand("validate", "check a network file");
    validate->add_option("--network", network_path, "network JSON")->required()->check(CLI::ExistingFile);

    auto* bench = app.add_subcommand("benchmark", "write the generated benchmark scenario");
    auto* bench_seed = bench->add_option("--seed", seed_value, "generator seed");
    bench->add_option("--out", out_dir, "output directory")->required();

    auto* check = app.add_subcommand("check-gradients", "compare derivatives with finite differences");
    check->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    check->add_option("--samples", samples, "configurations per mode")->check(CLI::PositiveNumber);
    auto* check_seed = check->add_option("--seed", seed_value, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            std::optional<std::uint64_t> seed;
            if (run_seed->count()) seed = seed_value;
            return cmd_run(scenario, step, seed, out_dir, svg);
        }
        if (validate->parsed()) return cmd_validate(network_path);
        if (bench->parsed()) return cmd_benchmark(bench_seed->count() ? seed_value : 1, out_dir);
        if (check->parsed()) {
            std::optional<std::uint64_t> seed;
            if (check_seed->count()) seed = seed_value;
            return cmd_check(scenario, samples, seed);
        }
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace netdeploy

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>

#include "netdeploy/scenario.hpp"
#include "netdeploy/svg.hpp"
#include "netdeploy/trace.hpp"

using namespace netdeploy;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({
  "network": {"vertices": [[0, 0], [2, 0], [2, 1]], "segments": [[0, 1], [1, 2]]},
  "density": {"gaussians": [{"a": 3, "cx": 1, "cy": 0.5, "sx": 1, "sy": 2}]},
  "pipeline": {"cluster_count": 1, "sensors_per_cluster": 2, "R_initial": 3, "R_final": 1}
})";

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "netdeploy_scenario_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string field_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "<no error>";
}

RunTrace sample_trace(std::size_t iterations) {
    RunTrace t;
    for (std::size_t k = 0; k <= iterations; ++k) {
        TraceRow row;
        row.iteration = k;
        row.R = 10.0 - 0.1 * k;
        row.H = 1.0 / 3.0 + k * 0.1;
        row.positions = {{0.1 * k, 1.0 / 7.0}, {2.0 / 3.0, -1e-300}};
        row.deltas = {k ? 0.125 : 0.0, 1e-17};
        t.rows.push_back(row);
    }
    return t;
}

} // namespace

TEST_CASE("scenario round trip is canonical") {
    const ScenarioConfig a = parse_scenario(kSmall);
    const std::string once = serialize_scenario(a);
    const std::string twice = serialize_scenario(parse_scenario(once));
    CHECK(once == twice);
    CHECK(a.pipeline.sensors_per_cluster == 2);
    CHECK(a.density.gaussians().size() == 1);
}

TEST_CASE("scenario defaults match the benchmark") {
    const ScenarioConfig c = parse_scenario(R"({"network": {"vertices": [[0,0],[1,0]], "segments": [[0,1]]}})");
    CHECK(c.pipeline.cluster_count == 10);
    CHECK(c.pipeline.sensors_per_cluster == 5);
    CHECK(c.pipeline.r_collapse == 0.3);
    CHECK(c.pipeline.R_initial == 10.0);
    CHECK(c.pipeline.R_final == 1.0);
    CHECK(c.density.gaussians().size() == 11);
    CHECK(c.performance.kind == PerformanceSpec::Kind::Tanh);
    CHECK(c.pipeline.step2_model == Step2Model::Full);
}

TEST_CASE("scenario validation names the field") {
    const std::string net = R"("network": {"vertices": [[0,0],[1,0]], "segments": [[0,1]]})";
    CHECK(field_of("{" + net + R"(, "pipeline": {"R_initial": 1, "R_final": 2}})") == "pipeline.R_final");
    CHECK(field_of("{" + net + R"(, "pipeline": {"colour": 1}})") == "pipeline.colour");
    CHECK(field_of("{" + net + R"(, "extra": 1})") == "extra");
    CHECK(field_of("{" + net + R"(, "pipeline": {"r_collapse": "big"}})") == "pipeline.r_collapse");
    CHECK(field_of("{" + net + R"(, "density": {"gaussians": [{"a": 1, "cx": 0, "cy": 0, "sx": -1, "sy": 1}]}})") ==
          "density.gaussians[0]");
    CHECK(field_of("{" + net + R"(, "performance": {"kind": "cubic"}})") == "performance.kind");
    CHECK(field_of(R"({"network": {"vertices": [[0,0],[1,0],[9,9]], "segments": [[0,1]]}})") == "network");
    CHECK(field_of("{}") == "network");
}

TEST_CASE("malformed JSON reports the position") {
    try {
        parse_scenario("{\n  \"network\": [1, 2,\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("piecewise performance and network files") {
    const fs::path net = scratch("net.json");
    write(net, serialize_network(Network({{0, 0}, {3, 0}}, {{0, 1}})));
    const fs::path sc = scratch("piecewise.json");
    write(sc, R"({"network": "net.json",
      "performance": {"kind": "piecewise", "breakpoints": [1.5],
        "pieces": [{"type": "affine", "offset": 1, "slope": -0.2}, {"type": "constant", "value": 0.1}]},
      "pipeline": {"step2_model": "collapsed"}})");
    const ScenarioConfig c = load_scenario(sc.string());
    CHECK(c.network.segment_count() == 1);
    REQUIRE(c.pipeline.profile.has_value());
    CHECK((*c.pipeline.profile)(1.0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK((*c.pipeline.profile)(1.5) == 0.1);
    CHECK(serialize_scenario(parse_scenario(serialize_scenario(c), scratch("").string())) == serialize_scenario(c));

    write(net, R"({"vertices": [[0,0],[1,1],[0,1],[1,0]], "segments": [[0,1],[2,3]]})");
    CHECK_THROWS_AS(load_network_file(net.string()), ValidationError);
    CHECK(read_network_unchecked(net.string()).segment_count() == 2);
}

TEST_CASE("benchmark network") {
    const Benchmark b = generate_benchmark(1);
    CHECK(b.network.vertex_count() == 63);
    CHECK(b.network.segment_count() == 87);
    CHECK(validate_network(b.network).empty());
    const auto [lo, hi] = bounding_box(b.network);
    CHECK(lo.x() == 2.0);
    CHECK(lo.y() == 1.0);
    CHECK(hi.x() == 21.0);
    CHECK(hi.y() == 11.0);
    bool found = false;
    for (const auto& g : b.density.gaussians())
        found = found || (g.a == 20.0 && g.cx == 12.5 && g.cy == 8.5);
    CHECK(found);
    CHECK(b.density({12.5, 8.5}) >= 20.0);

    for (std::uint64_t seed : {2, 7, 99, 12345}) {
        const Benchmark other = generate_benchmark(seed);
        CHECK(validate_network(other.network).empty());
        CHECK(other.network.segment_count() == 87);
        CHECK(serialize_network(generate_benchmark(seed).network) == serialize_network(other.network));
    }
    CHECK(serialize_network(generate_benchmark(2).network) != serialize_network(generate_benchmark(3).network));
}

TEST_CASE("trace CSV") {
    const RunTrace three = sample_trace(3);
    const std::string csv = trace_to_csv(three);
    std::size_t lines = 0;
    for (const char c : csv) lines += c == '\n';
    CHECK(lines == 5);
    CHECK(csv.rfind("iteration,R,H,sensor0_x,sensor0_y,delta0,sensor1_x,sensor1_y,delta1\n", 0) == 0);

    const fs::path p = scratch("trace.csv");
    write_trace(three, p.string());
    const RunTrace back = read_trace(p.string());
    REQUIRE(back.rows.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(back.rows[k].iteration == three.rows[k].iteration);
        CHECK(back.rows[k].R == three.rows[k].R);
        CHECK(back.rows[k].H == three.rows[k].H);
        CHECK(back.rows[k].positions == three.rows[k].positions);
        CHECK(back.rows[k].deltas == three.rows[k].deltas);
    }
    CHECK(back.h_column() == three.h_column());

    const std::string empty = trace_to_csv(sample_trace(0));
    CHECK(std::count(empty.begin(), empty.end(), '\n') == 2);
    CHECK_THROWS_AS(write_trace(three, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("SVG output") {
    const Network n({{0, 0}, {4, 0}, {4, 3}}, {{0, 1}, {1, 2}});
    const SensorSet p = {{1, 0}, {4, 1}, {4, 2.5}};
    SvgOptions opt;
    opt.R = 1.6;
    const std::string svg = render_svg(n, DensityField::airport(), p, nullptr, opt);
    const std::regex circle("<circle[^>]* r=\"([^\"]+)\"");
    std::size_t circles = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it) {
        ++circles;
        CHECK(std::stod((*it)[1]) == 0.875 * 1.6);
    }
    CHECK(circles == 3);

    const std::string bare = render_svg(n, DensityField::airport(), {}, nullptr, opt);
    CHECK(bare.find("<circle") == std::string::npos);
    CHECK(bare.find("<polyline") != std::string::npos);

    const NetworkCells cells = clip_network_cells(n, p);
    const fs::path a = scratch("a.svg"), b = scratch("b.svg");
    emit_svg(n, DensityField::airport(), p, &cells, a.string(), opt);
    emit_svg(n, DensityField::airport(), p, &cells, b.string(), opt);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(!sa.empty());
    CHECK(sa == sb);
    CHECK_THROWS_AS(emit_svg(n, DensityField::airport(), p, nullptr, "/nonexistent-dir/x.svg", opt), IoError);
}

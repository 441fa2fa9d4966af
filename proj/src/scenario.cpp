#include "netdeploy/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace netdeploy {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) throw ValidationError(path, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ValidationError(path.empty() ? key : path + "." + key, "unknown key");
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ValidationError(path, "expected a number");
    return v.get<double>();
}

double number(const json& obj, const std::string& key, const std::string& path, double fallback) {
    return obj.contains(key) ? number(obj.at(key), join(path, key)) : fallback;
}

std::uint64_t count(const json& obj, const std::string& key, const std::string& path, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) throw ValidationError(join(path, key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

bool flag(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw ValidationError(join(path, key), "expected true or false");
    return obj.at(key).get<bool>();
}

std::string text(const json& obj, const std::string& key, const std::string& path, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_string()) throw ValidationError(join(path, key), "expected a string");
    return obj.at(key).get<std::string>();
}

Point2 point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) throw ValidationError(path, "expected [x, y]");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

Network network_from_json(const json& j, const std::string& path, bool check = true) {
    check_keys(j, {"vertices", "segments"}, path);
    if (!j.contains("vertices") || !j.at("vertices").is_array()) throw ValidationError(join(path, "vertices"), "required array");
    if (!j.contains("segments") || !j.at("segments").is_array()) throw ValidationError(join(path, "segments"), "required array");
    std::vector<Point2> vertices;
    for (std::size_t i = 0; i < j.at("vertices").size(); ++i)
        vertices.push_back(point(j.at("vertices")[i], join(path, "vertices") + "[" + std::to_string(i) + "]"));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < j.at("segments").size(); ++i) {
        const json& s = j.at("segments")[i];
        const std::string p = join(path, "segments") + "[" + std::to_string(i) + "]";
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() || !s[1].is_number_unsigned())
            throw ValidationError(p, "expected [i, j] with vertex indices");
        edges.push_back({s[0].get<std::size_t>(), s[1].get<std::size_t>()});
    }
    Network n(std::move(vertices), std::move(edges));
    if (!check) return n;
    const auto violations = validate_network(n);
    if (!violations.empty()) {
        std::string msg = "invalid network:";
        for (const auto& v : violations) msg += " " + v.describe() + ";";
        throw ValidationError(path.empty() ? "network" : path, msg);
    }
    return n;
}

json network_to_json(const Network& n) {
    json vertices = json::array();
    for (const auto& v : n.vertices()) vertices.push_back({v.x(), v.y()});
    json segments = json::array();
    for (const auto& e : n.edges()) segments.push_back({e.from, e.to});
    json out;
    out["vertices"] = std::move(vertices);
    out["segments"] = std::move(segments);
    return out;
}

ProfilePiece piece_from_json(const json& j, const std::string& path) {
    const std::string type = text(j, "type", path, "");
    if (type == "constant") {
        check_keys(j, {"type", "value"}, path);
        return ConstantPiece{number(j, "value", path, 0.0)};
    }
    if (type == "affine") {
        check_keys(j, {"type", "offset", "slope"}, path);
        return AffinePiece{number(j, "offset", path, 0.0), number(j, "slope", path, 0.0)};
    }
    if (type == "tanh") {
        check_keys(j, {"type", "R"}, path);
        return TanhPiece{number(j, "R", path, 1.0)};
    }
    if (type == "gaussian") {
        check_keys(j, {"type", "amplitude", "width"}, path);
        return GaussianPiece{number(j, "amplitude", path, 1.0), number(j, "width", path, 1.0)};
    }
    throw ValidationError(join(path, "type"), "expected constant, affine, tanh or gaussian");
}

json piece_to_json(const ProfilePiece& piece) {
    json out;
    if (const auto* c = std::get_if<ConstantPiece>(&piece)) {
        out["type"] = "constant";
        out["value"] = c->value;
    } else if (const auto* a = std::get_if<AffinePiece>(&piece)) {
        out["type"] = "affine";
        out["offset"] = a->offset;
        out["slope"] = a->slope;
    } else if (const auto* t = std::get_if<TanhPiece>(&piece)) {
        out["type"] = "tanh";
        out["R"] = t->R;
    } else if (const auto* g = std::get_if<GaussianPiece>(&piece)) {
        out["type"] = "gaussian";
        out["amplitude"] = g->amplitude;
        out["width"] = g->width;
    }
    return out;
}

} // namespace

PerformanceFunction PerformanceSpec::build() const {
    if (kind == Kind::Tanh) return PerformanceFunction::tanh_profile(R);
    return PerformanceFunction(pieces, breakpoints);
}

Network parse_network(const std::string& text) { return network_from_json(parse_json(text, "network"), ""); }

Network load_network_file(const std::string& path) {
    return network_from_json(parse_json(read_file(path), path), "");
}

Network read_network_unchecked(const std::string& path) {
    return network_from_json(parse_json(read_file(path), path), "", false);
}

std::string serialize_network(const Network& n) { return network_to_json(n).dump(2) + "\n"; }

ScenarioConfig parse_scenario(const std::string& source, const std::string& base_dir) {
    const json root = parse_json(source, "scenario");
    check_keys(root, {"network", "density", "performance", "pipeline", "initial_sensors", "output"}, "");
    ScenarioConfig cfg;

    if (!root.contains("network")) throw ValidationError("network", "required");
    const json& nj = root.at("network");
    if (nj.is_string()) {
        cfg.network_file = nj.get<std::string>();
        std::filesystem::path p(cfg.network_file);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        try {
            cfg.network = network_from_json(parse_json(read_file(p.string()), p.string()), "network");
        } catch (const IoError& e) {
            throw ValidationError("network", e.what());
        }
    } else {
        cfg.network = network_from_json(nj, "network");
    }

    if (root.contains("density")) {
        const json& dj = root.at("density");
        check_keys(dj, {"gaussians"}, "density");
        if (!dj.contains("gaussians") || !dj.at("gaussians").is_array())
            throw ValidationError("density.gaussians", "required array");
        std::vector<Gaussian> gs;
        for (std::size_t i = 0; i < dj.at("gaussians").size(); ++i) {
            const json& g = dj.at("gaussians")[i];
            const std::string path = "density.gaussians[" + std::to_string(i) + "]";
            check_keys(g, {"a", "cx", "cy", "sx", "sy"}, path);
            for (const char* k : {"a", "cx", "cy", "sx", "sy"})
                if (!g.contains(k)) throw ValidationError(join(path, k), "required");
            gs.push_back({number(g, "a", path, 0), number(g, "cx", path, 0), number(g, "cy", path, 0),
                          number(g, "sx", path, 1), number(g, "sy", path, 1)});
            try {
                DensityField({gs.back()});
            } catch (const InvalidArgument& e) {
                throw ValidationError(path, e.what());
            }
        }
        cfg.density = DensityField(std::move(gs));
    }

    PipelineConfig& pc = cfg.pipeline;
    if (root.contains("pipeline")) {
        const json& pj = root.at("pipeline");
        const std::string P = "pipeline";
        check_keys(pj,
                   {"cluster_count", "sensors_per_cluster", "r_collapse", "R_initial", "R_final", "step1_iterations",
                    "step2_iterations", "spread_radius", "rng_seed", "step2_model", "gradient_tol", "quadrature_tol",
                    "line_search"},
                   P);
        pc.cluster_count = count(pj, "cluster_count", P, pc.cluster_count);
        pc.sensors_per_cluster = count(pj, "sensors_per_cluster", P, pc.sensors_per_cluster);
        pc.r_collapse = number(pj, "r_collapse", P, pc.r_collapse);
        pc.R_initial = number(pj, "R_initial", P, pc.R_initial);
        pc.R_final = number(pj, "R_final", P, pc.R_final);
        pc.step1_iterations = count(pj, "step1_iterations", P, pc.step1_iterations);
        pc.step2_iterations = count(pj, "step2_iterations", P, pc.step2_iterations);
        pc.spread_radius = number(pj, "spread_radius", P, pc.spread_radius);
        pc.rng_seed = count(pj, "rng_seed", P, pc.rng_seed);
        const std::string model = text(pj, "step2_model", P, "full");
        if (model == "full")
            pc.step2_model = Step2Model::Full;
        else if (model == "collapsed")
            pc.step2_model = Step2Model::Collapsed;
        else
            throw ValidationError("pipeline.step2_model", "expected full or collapsed");
        pc.gradient_tol = number(pj, "gradient_tol", P, pc.gradient_tol);
        const double qt = number(pj, "quadrature_tol", P, pc.quadrature.absolute);
        pc.quadrature.absolute = qt;
        pc.quadrature.relative = qt;
        if (pj.contains("line_search")) {
            const json& lj = pj.at("line_search");
            const std::string L = "pipeline.line_search";
            check_keys(lj, {"step1_delta_max", "step2_delta_max", "max_backtracks", "armijo", "max_retries"}, L);
            pc.step1_search.delta_max = number(lj, "step1_delta_max", L, 0.0);
            pc.step2_search.delta_max = number(lj, "step2_delta_max", L, 0.0);
            const auto backtracks = count(lj, "max_backtracks", L, 40);
            const auto retries = count(lj, "max_retries", L, 20);
            const double armijo = number(lj, "armijo", L, 0.25);
            for (auto* ls : {&pc.step1_search, &pc.step2_search}) {
                ls->max_backtracks = static_cast<int>(std::min<std::uint64_t>(backtracks, 1000));
                ls->max_retries = static_cast<int>(std::min<std::uint64_t>(retries, 1000));
                ls->armijo = armijo;
            }
        }
    }

    if (root.contains("performance")) {
        const json& fj = root.at("performance");
        check_keys(fj, {"kind", "R", "breakpoints", "pieces"}, "performance");
        const std::string kind = text(fj, "kind", "performance", "tanh");
        if (kind == "tanh") {
            check_keys(fj, {"kind", "R"}, "performance");
            cfg.performance.kind = PerformanceSpec::Kind::Tanh;
            cfg.performance.R = number(fj, "R", "performance", pc.R_final);
            if (!(cfg.performance.R > 0.0)) throw ValidationError("performance.R", "must be > 0");
        } else if (kind == "piecewise") {
            check_keys(fj, {"kind", "breakpoints", "pieces"}, "performance");
            cfg.performance.kind = PerformanceSpec::Kind::Piecewise;
            if (!fj.contains("pieces") || !fj.at("pieces").is_array())
                throw ValidationError("performance.pieces", "required array");
            if (fj.contains("breakpoints")) {
                if (!fj.at("breakpoints").is_array()) throw ValidationError("performance.breakpoints", "expected array");
                for (std::size_t i = 0; i < fj.at("breakpoints").size(); ++i)
                    cfg.performance.breakpoints.push_back(
                        number(fj.at("breakpoints")[i], "performance.breakpoints[" + std::to_string(i) + "]"));
            }
            for (std::size_t i = 0; i < fj.at("pieces").size(); ++i)
                cfg.performance.pieces.push_back(
                    piece_from_json(fj.at("pieces")[i], "performance.pieces[" + std::to_string(i) + "]"));
            try {
                pc.profile = cfg.performance.build();
            } catch (const InvalidArgument& e) {
                throw ValidationError("performance", e.what());
            }
        } else {
            throw ValidationError("performance.kind", "expected tanh or piecewise");
        }
    } else {
        cfg.performance.R = pc.R_final;
    }

    if (root.contains("initial_sensors")) {
        const json& ij = root.at("initial_sensors");
        if (!ij.is_array()) throw ValidationError("initial_sensors", "expected an array of [x, y]");
        for (std::size_t i = 0; i < ij.size(); ++i)
            pc.initial_sensors.push_back(point(ij[i], "initial_sensors[" + std::to_string(i) + "]"));
    }

    if (root.contains("output")) {
        const json& oj = root.at("output");
        check_keys(oj, {"directory", "svg"}, "output");
        cfg.output.directory = text(oj, "directory", "output", cfg.output.directory);
        cfg.output.svg = flag(oj, "svg", "output", cfg.output.svg);
    }

    pc.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    const std::string source = read_file(path);
    const std::string base = std::filesystem::path(path).parent_path().string();
    try {
        return parse_scenario(source, base.empty() ? "." : base);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
    json root;
    if (cfg.network_file.empty())
        root["network"] = network_to_json(cfg.network);
    else
        root["network"] = cfg.network_file;

    json gaussians = json::array();
    for (const auto& g : cfg.density.gaussians()) {
        json gj;
        gj["a"] = g.a;
        gj["cx"] = g.cx;
        gj["cy"] = g.cy;
        gj["sx"] = g.sx;
        gj["sy"] = g.sy;
        gaussians.push_back(std::move(gj));
    }
    root["density"]["gaussians"] = std::move(gaussians);

    json perf;
    if (cfg.performance.kind == PerformanceSpec::Kind::Tanh) {
        perf["kind"] = "tanh";
        perf["R"] = cfg.performance.R;
    } else {
        perf["kind"] = "piecewise";
        perf["breakpoints"] = cfg.performance.breakpoints;
        json pieces = json::array();
        for (const auto& p : cfg.performance.pieces) pieces.push_back(piece_to_json(p));
        perf["pieces"] = std::move(pieces);
    }
    root["performance"] = std::move(perf);

    const PipelineConfig& pc = cfg.pipeline;
    json pj;
    pj["cluster_count"] = pc.cluster_count;
    pj["sensors_per_cluster"] = pc.sensors_per_cluster;
    pj["r_collapse"] = pc.r_collapse;
    pj["R_initial"] = pc.R_initial;
    pj["R_final"] = pc.R_final;
    pj["step1_iterations"] = pc.step1_iterations;
    pj["step2_iterations"] = pc.step2_iterations;
    pj["spread_radius"] = pc.spread_radius;
    pj["rng_seed"] = pc.rng_seed;
    pj["step2_model"] = pc.step2_model == Step2Model::Full ? "full" : "collapsed";
    pj["gradient_tol"] = pc.gradient_tol;
    pj["quadrature_tol"] = pc.quadrature.absolute;
    json lj;
    lj["step1_delta_max"] = pc.step1_search.delta_max;
    lj["step2_delta_max"] = pc.step2_search.delta_max;
    lj["max_backtracks"] = pc.step1_search.max_backtracks;
    lj["armijo"] = pc.step1_search.armijo;
    lj["max_retries"] = pc.step1_search.max_retries;
    pj["line_search"] = std::move(lj);
    root["pipeline"] = std::move(pj);

    if (!pc.initial_sensors.empty()) {
        json ij = json::array();
        for (const auto& q : pc.initial_sensors) ij.push_back({q.x(), q.y()});
        root["initial_sensors"] = std::move(ij);
    }

    root["output"]["directory"] = cfg.output.directory;
    root["output"]["svg"] = cfg.output.svg;
    return root.dump(2) + "\n";
}

} // namespace netdeploy

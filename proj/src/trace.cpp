#include "netdeploy/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "netdeploy/errors.hpp"

namespace netdeploy {

namespace {

void put(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("trace line " + std::to_string(line) + ": bad number '" + s + "'");
    }
}

} // namespace

std::vector<double> RunTrace::h_column() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.H);
    return out;
}

std::string trace_to_csv(const RunTrace& trace) {
    const std::size_t m = trace.rows.empty() ? 0 : trace.rows.front().positions.size();
    std::string out = "iteration,R,H";
    for (std::size_t i = 0; i < m; ++i) {
        const std::string k = std::to_string(i);
        out += ",sensor" + k + "_x,sensor" + k + "_y,delta" + k;
    }
    out += '\n';
    for (const auto& row : trace.rows) {
        if (row.positions.size() != m || row.deltas.size() != m)
            throw InvalidArgument("trace rows must all have the same sensor count");
        out += std::to_string(row.iteration);
        out += ',';
        put(out, row.R);
        out += ',';
        put(out, row.H);
        for (std::size_t i = 0; i < m; ++i) {
            out += ',';
            put(out, row.positions[i].x());
            out += ',';
            put(out, row.positions[i].y());
            out += ',';
            put(out, row.deltas[i]);
        }
        out += '\n';
    }
    return out;
}

void write_trace(const RunTrace& trace, const std::string& path) {
    const std::string text = trace_to_csv(trace);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

RunTrace trace_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trace is empty");
    const auto header = split(line);
    if (header.size() < 3 || header[0] != "iteration" || header[1] != "R" || header[2] != "H" ||
        (header.size() - 3) % 3 != 0)
        throw ParseError("trace line 1: unexpected header");
    const std::size_t m = (header.size() - 3) / 3;
    RunTrace trace;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != header.size())
            throw ParseError("trace line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields");
        TraceRow row;
        row.iteration = static_cast<std::size_t>(parse_double(fields[0], lineno));
        row.R = parse_double(fields[1], lineno);
        row.H = parse_double(fields[2], lineno);
        for (std::size_t i = 0; i < m; ++i) {
            row.positions.emplace_back(parse_double(fields[3 + 3 * i], lineno),
                                       parse_double(fields[4 + 3 * i], lineno));
            row.deltas.push_back(parse_double(fields[5 + 3 * i], lineno));
        }
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

RunTrace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return trace_from_csv(buf.str());
}

} // namespace netdeploy

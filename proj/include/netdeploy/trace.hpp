#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netdeploy/geometry.hpp"

namespace netdeploy {

struct TraceRow {
    std::size_t iteration = 0;
    double R = 0.0;
    double H = 0.0;
    std::vector<Point2> positions;
    /// Step multipliers of the iteration that produced this row; zero in row 0.
    std::vector<double> deltas;
};

/// Row 0 is the initial state, row k the state after iteration k.
struct RunTrace {
    std::vector<TraceRow> rows;

    std::size_t iterations() const { return rows.empty() ? 0 : rows.size() - 1; }
    std::vector<double> h_column() const;
};

/// CSV: iteration,R,H,sensor0_x,sensor0_y,delta0,... with 17 significant digits.
void write_trace(const RunTrace& trace, const std::string& path);
std::string trace_to_csv(const RunTrace& trace);
RunTrace read_trace(const std::string& path);
RunTrace trace_from_csv(const std::string& text);

} // namespace netdeploy

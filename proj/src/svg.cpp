#include "netdeploy/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <vector>

#include "netdeploy/errors.hpp"

namespace netdeploy {

namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    std::string s = buf;
    if (s == "-0.00000") s = "0.00000";
    return s;
}

struct Grid {
    double x0, y0, hx, hy;
    int nx, ny;
    std::vector<double> v;
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * nx + i]; }
};

// One isoline level over the whole grid as "M..L.." path data.
std::string contour_path(const Grid& g, double level) {
    std::string d;
    auto lerp = [&](double a, double b) { return (level - a) / (b - a); };
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double v00 = g.at(i, j), v10 = g.at(i + 1, j), v11 = g.at(i + 1, j + 1), v01 = g.at(i, j + 1);
            const int code = (v00 >= level) | (v10 >= level) << 1 | (v11 >= level) << 2 | (v01 >= level) << 3;
            if (code == 0 || code == 15) continue;
            const double x = g.x0 + i * g.hx, y = g.y0 + j * g.hy;
            // Edge crossing points: bottom, right, top, left.
            const Point2 e[4] = {
                {x + lerp(v00, v10) * g.hx, y},
                {x + g.hx, y + lerp(v10, v11) * g.hy},
                {x + lerp(v01, v11) * g.hx, y + g.hy},
                {x, y + lerp(v00, v01) * g.hy},
            };
            auto seg = [&](int a, int b) {
                d += "M" + fmt(e[a].x()) + " " + fmt(e[a].y()) + "L" + fmt(e[b].x()) + " " + fmt(e[b].y());
            };
            const bool centre_high = 0.25 * (v00 + v10 + v11 + v01) >= level;
            switch (code) {
            case 1: case 14: seg(3, 0); break;
            case 2: case 13: seg(0, 1); break;
            case 3: case 12: seg(3, 1); break;
            case 4: case 11: seg(1, 2); break;
            case 6: case 9: seg(0, 2); break;
            case 7: case 8: seg(3, 2); break;
            case 5:
                if (centre_high) { seg(3, 2); seg(0, 1); } else { seg(3, 0); seg(1, 2); }
                break;
            case 10:
                if (centre_high) { seg(3, 0); seg(1, 2); } else { seg(3, 2); seg(0, 1); }
                break;
            default: break;
            }
        }
    }
    return d;
}

} // namespace

std::string render_svg(const Network& n, const DensityFn& density, const SensorSet& sensors,
                       const NetworkCells* cells, const SvgOptions& opt) {
    auto [lo, hi] = bounding_box(n);
    lo -= Vector2::Constant(opt.margin);
    hi += Vector2::Constant(opt.margin);
    const double w = hi.x() - lo.x(), h = hi.y() - lo.y();
    const double height_px = opt.width_px * h / w;
    const double stroke = 0.004 * std::max(w, h);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(opt.width_px) + "\" height=\"" + fmt(height_px) +
           "\" viewBox=\"" + fmt(lo.x()) + " " + fmt(lo.y()) + " " + fmt(w) + " " + fmt(h) + "\">\n";
    out += "<rect x=\"" + fmt(lo.x()) + "\" y=\"" + fmt(lo.y()) + "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
           "\" fill=\"white\"/>\n";
    // Flip y so world coordinates read upward.
    out += "<g transform=\"translate(0 " + fmt(lo.y() + hi.y()) + ") scale(1 -1)\">\n";

    if (opt.density_contours && density && opt.grid_x > 1 && opt.grid_y > 1 && opt.levels > 0) {
        Grid g{lo.x(), lo.y(), w / (opt.grid_x - 1), h / (opt.grid_y - 1), opt.grid_x, opt.grid_y, {}};
        g.v.reserve(static_cast<std::size_t>(g.nx) * g.ny);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) g.v.push_back(density(Point2(g.x0 + i * g.hx, g.y0 + j * g.hy)));
        const auto [vmin, vmax] = std::minmax_element(g.v.begin(), g.v.end());
        if (*vmax > *vmin) {
            out += "<g class=\"density\" fill=\"none\">\n";
            for (int k = 1; k <= opt.levels; ++k) {
                const double level = *vmin + (*vmax - *vmin) * k / (opt.levels + 1);
                const std::string d = contour_path(g, level);
                if (d.empty()) continue;
                out += "<path d=\"" + d + "\" stroke=\"#6a8caf\" stroke-opacity=\"" +
                       fmt(0.2 + 0.6 * k / opt.levels) + "\" stroke-width=\"" + fmt(0.5 * stroke) + "\"/>\n";
            }
            out += "</g>\n";
        }
    }

    out += "<g class=\"network\" stroke=\"#222222\" stroke-width=\"" + fmt(stroke) + "\" fill=\"none\">\n";
    for (std::size_t k = 0; k < n.segment_count(); ++k) {
        const Segment s = n.segment(k);
        out += "<polyline points=\"" + fmt(s.a().x()) + "," + fmt(s.a().y()) + " " + fmt(s.b().x()) + "," +
               fmt(s.b().y()) + "\"/>\n";
    }
    out += "</g>\n";

    if (cells) {
        out += "<g class=\"cells\" stroke-width=\"" + fmt(2.5 * stroke) + "\" fill=\"none\">\n";
        for (const auto& pieces : cells->by_segment) {
            for (const auto& piece : pieces) {
                const Segment s = n.segment(piece.segment);
                const Point2 a = point_at(s, piece.t0), b = point_at(s, piece.t1);
                out += "<polyline points=\"" + fmt(a.x()) + "," + fmt(a.y()) + " " + fmt(b.x()) + "," + fmt(b.y()) +
                       "\" stroke=\"" + kPalette[piece.owner % kPalette.size()] + "\"/>\n";
            }
        }
        out += "</g>\n";
    }

    out += "<g class=\"sensors\" stroke=\"#000000\" stroke-width=\"" + fmt(0.5 * stroke) + "\">\n";
    char r_attr[32];
    std::snprintf(r_attr, sizeof r_attr, "%.17g", 0.875 * opt.R);
    for (std::size_t i = 0; i < sensors.size(); ++i) {
        out += "<circle cx=\"" + fmt(sensors[i].x()) + "\" cy=\"" + fmt(sensors[i].y()) + "\" r=\"" + r_attr +
               "\" fill=\"" + kPalette[i % kPalette.size()] + "\" fill-opacity=\"0.3\"/>\n";
    }
    out += "</g>\n</g>\n</svg>\n";
    return out;
}

void emit_svg(const Network& n, const DensityFn& density, const SensorSet& sensors, const NetworkCells* cells,
              const std::string& path, const SvgOptions& options) {
    const std::string text = render_svg(n, density, sensors, cells, options);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace netdeploy

#pragma once

#include <functional>
#include <vector>

#include "netdeploy/geometry.hpp"

namespace netdeploy {

/// Importance weight over the plane.
using DensityFn = std::function<double(const Point2&)>;

/// a * exp(-((x - cx)/sx)^2 - ((y - cy)/sy)^2)
struct Gaussian {
    double a = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double sx = 1.0;
    double sy = 1.0;

    double operator()(const Point2& q) const {
        const double u = (q.x() - cx) / sx;
        const double v = (q.y() - cy) / sy;
        return a * std::exp(-u * u - v * v);
    }
};

/// Sum of anisotropic Gaussian bumps. An empty field is zero everywhere.
class DensityField {
public:
    DensityField() = default;
    explicit DensityField(std::vector<Gaussian> gaussians) : gaussians_(std::move(gaussians)) {
        for (const auto& g : gaussians_) {
            if (!(g.a >= 0.0) || !std::isfinite(g.a))
                throw InvalidArgument("density: gaussian amplitude must be finite and >= 0");
            if (!(g.sx > 0.0) || !(g.sy > 0.0) || !std::isfinite(g.sx) || !std::isfinite(g.sy))
                throw InvalidArgument("density: gaussian widths must be finite and > 0");
            if (!std::isfinite(g.cx) || !std::isfinite(g.cy))
                throw InvalidArgument("density: gaussian center must be finite");
        }
    }

    const std::vector<Gaussian>& gaussians() const { return gaussians_; }

    double operator()(const Point2& q) const {
        double sum = 0.0;
        for (const auto& g : gaussians_) sum += g(q);
        return sum;
    }

    /// The 11-bump airport field, the default density.
    static DensityField airport();

private:
    std::vector<Gaussian> gaussians_;
};

inline double eval_density(const DensityField& d, const Point2& q) { return d(q); }

inline DensityFn uniform_density(double value = 1.0) {
    return [value](const Point2&) { return value; };
}

} // namespace netdeploy

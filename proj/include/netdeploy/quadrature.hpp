#pragma once

#include <array>
#include <cmath>
#include <type_traits>

#include <Eigen/Core>

#include "netdeploy/errors.hpp"

namespace netdeploy {

struct QuadratureTolerance {
    double absolute = 1e-8;
    double relative = 1e-8;
    int max_depth = 40;
};

namespace detail {

inline constexpr std::array<double, 7> kGlNodes = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
inline constexpr std::array<double, 7> kGlWeights = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

inline double magnitude(double v) { return std::abs(v); }

template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
    return v.template lpNorm<Eigen::Infinity>();
}

template <typename F>
auto gauss7(const F& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    using Result = std::decay_t<decltype(f(lo))>;
    Result sum = kGlWeights[0] * f(mid + half * kGlNodes[0]);
    for (std::size_t i = 1; i < kGlNodes.size(); ++i) sum += kGlWeights[i] * f(mid + half * kGlNodes[i]);
    return Result(half * sum);
}

template <typename F, typename Result>
Result adapt(const F& f, double lo, double hi, const Result& whole, double eps, int depth,
             const QuadratureTolerance& tol) {
    const double mid = 0.5 * (lo + hi);
    const Result left = gauss7(f, lo, mid);
    const Result right = gauss7(f, mid, hi);
    const Result refined = left + right;
    if (magnitude(refined - whole) <= eps || (hi - lo) <= 1e-15 * (1.0 + std::abs(lo))) return refined;
    if (depth >= tol.max_depth) throw NumericalFailure("adaptive quadrature did not converge", lo, hi);
    return Result(adapt(f, lo, mid, left, 0.5 * eps, depth + 1, tol) +
                  adapt(f, mid, hi, right, 0.5 * eps, depth + 1, tol));
}

} // namespace detail

/// Adaptive 7-point Gauss-Legendre integral of f over [lo, hi].
///
/// f may return a scalar or a fixed-size Eigen vector. Panels are bisected
/// until the two-halves estimate agrees with the parent panel to within the
/// panel's share of max(absolute, relative * |integral|).
template <typename F>
auto integrate(const F& f, double lo, double hi, const QuadratureTolerance& tol = {}) {
    using Result = std::decay_t<decltype(detail::gauss7(f, lo, hi))>;
    if (!(hi > lo)) {
        if constexpr (std::is_arithmetic_v<Result>)
            return Result(0);
        else
            return Result(Result::Zero());
    }
    const Result whole = detail::gauss7(f, lo, hi);
    const double eps = std::max(tol.absolute, tol.relative * detail::magnitude(whole));
    return detail::adapt(f, lo, hi, whole, eps, 0, tol);
}

} // namespace netdeploy

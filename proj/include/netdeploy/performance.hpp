#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace netdeploy {

/// f(x) = value
struct ConstantPiece {
    double value = 0.0;
};

/// f(x) = offset + slope * x, slope <= 0
struct AffinePiece {
    double offset = 0.0;
    double slope = 0.0;
};

/// f(x) = 1/2 (1 - tanh((x - R/2) / (R/6)))
struct TanhPiece {
    double R = 1.0;
};

/// f(x) = amplitude * exp(-(x / width)^2)
struct GaussianPiece {
    double amplitude = 1.0;
    double width = 1.0;
};

using ProfilePiece = std::variant<ConstantPiece, AffinePiece, TanhPiece, GaussianPiece>;

double piece_value(const ProfilePiece& piece, double x);
double piece_derivative(const ProfilePiece& piece, double x);

/// Non-increasing sensing profile with optional downward jumps.
///
/// Piece alpha is active on [R_{alpha-1}, R_alpha), with R_0 = 0 and
/// R_{N+1} = +inf. A breakpoint may carry a zero jump, in which case f stays
/// continuous there and only its derivative may change.
class PerformanceFunction {
public:
    /// Throws InvalidArgument unless pieces.size() == breakpoints.size() + 1,
    /// breakpoints are strictly increasing and positive, every piece is
    /// non-increasing on its domain and no jump goes upward.
    PerformanceFunction(std::vector<ProfilePiece> pieces, std::vector<double> breakpoints);

    /// Single smooth tanh piece with sensing parameter R.
    static PerformanceFunction tanh_profile(double R);

    /// 1 on [0, R), 0 afterwards.
    static PerformanceFunction step(double R, double inside = 1.0, double outside = 0.0);

    static PerformanceFunction constant(double value);

    const std::vector<ProfilePiece>& pieces() const { return pieces_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    bool continuous() const { return continuous_; }

    /// Index of the piece active at x (half-open intervals).
    std::size_t piece_index(double x) const;

    /// f_{alpha+1}(R_alpha) - f_alpha(R_alpha); non-positive.
    double jump(std::size_t breakpoint) const;

    /// Index of a breakpoint with nonzero jump equal to x, or npos.
    std::size_t jump_at(double x) const;

    /// sup |f'| sampled over [0, limit].
    double max_slope(double limit) const;

    double operator()(double x) const;

    /// The sensing parameter R when this is a tanh profile, else 0.
    double tanh_radius() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<ProfilePiece> pieces_;
    std::vector<double> breakpoints_;
    bool continuous_ = true;
};

double eval_f(const PerformanceFunction& f, double x);

/// Throws UndefinedDerivative at a jump breakpoint.
double eval_f_derivative(const PerformanceFunction& f, double x);

} // namespace netdeploy

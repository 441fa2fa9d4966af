#include "netdeploy/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netdeploy/errors.hpp"

namespace netdeploy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_piece(const ProfilePiece& piece) {
    std::visit(overloaded{
                   [](const ConstantPiece& p) {
                       if (!std::isfinite(p.value)) throw InvalidArgument("constant piece must be finite");
                   },
                   [](const AffinePiece& p) {
                       if (!std::isfinite(p.offset) || !std::isfinite(p.slope))
                           throw InvalidArgument("affine piece must be finite");
                       if (p.slope > 0.0) throw InvalidArgument("affine piece must be non-increasing");
                   },
                   [](const TanhPiece& p) {
                       if (!(p.R > 0.0) || !std::isfinite(p.R)) throw InvalidArgument("tanh piece needs R > 0");
                   },
                   [](const GaussianPiece& p) {
                       if (!(p.amplitude >= 0.0) || !(p.width > 0.0))
                           throw InvalidArgument("gaussian piece needs amplitude >= 0 and width > 0");
                   },
               },
               piece);
}

} // namespace

double piece_value(const ProfilePiece& piece, double x) {
    return std::visit(overloaded{
                          [](const ConstantPiece& p) { return p.value; },
                          [x](const AffinePiece& p) { return p.offset + p.slope * x; },
                          [x](const TanhPiece& p) { return 0.5 * (1.0 - std::tanh((x - 0.5 * p.R) / (p.R / 6.0))); },
                          [x](const GaussianPiece& p) {
                              const double u = x / p.width;
                              return p.amplitude * std::exp(-u * u);
                          },
                      },
                      piece);
}

double piece_derivative(const ProfilePiece& piece, double x) {
    return std::visit(overloaded{
                          [](const ConstantPiece&) { return 0.0; },
                          [](const AffinePiece& p) { return p.slope; },
                          [x](const TanhPiece& p) {
                              const double c = std::cosh((x - 0.5 * p.R) / (p.R / 6.0));
                              return -0.5 * (6.0 / p.R) / (c * c);
                          },
                          [x](const GaussianPiece& p) {
                              const double u = x / p.width;
                              return -2.0 * p.amplitude * u / p.width * std::exp(-u * u);
                          },
                      },
                      piece);
}

PerformanceFunction::PerformanceFunction(std::vector<ProfilePiece> pieces, std::vector<double> breakpoints)
    : pieces_(std::move(pieces)), breakpoints_(std::move(breakpoints)) {
    if (pieces_.size() != breakpoints_.size() + 1)
        throw InvalidArgument("performance function needs exactly one more piece than breakpoints");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > 0.0) || !std::isfinite(breakpoints_[i]))
            throw InvalidArgument("breakpoints must be finite and positive");
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
            throw InvalidArgument("breakpoints must be strictly increasing");
    }
    for (const auto& p : pieces_) check_piece(p);

    // Sampled monotonicity check of every piece on its own domain.
    const double tail = breakpoints_.empty() ? 10.0 : 10.0 * breakpoints_.back();
    for (std::size_t a = 0; a < pieces_.size(); ++a) {
        const double lo = a == 0 ? 0.0 : breakpoints_[a - 1];
        const double hi = a < breakpoints_.size() ? breakpoints_[a] : lo + tail;
        constexpr int samples = 64;
        double prev = piece_value(pieces_[a], lo);
        for (int k = 1; k <= samples; ++k) {
            const double x = lo + (hi - lo) * k / samples;
            const double v = piece_value(pieces_[a], x);
            if (v > prev + 1e-12) throw InvalidArgument("performance piece is not non-increasing");
            prev = v;
        }
    }

    continuous_ = true;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double j = jump(i);
        if (j > 1e-12) throw InvalidArgument("performance function may only jump downward");
        if (j < -1e-12) continuous_ = false;
    }
}

PerformanceFunction PerformanceFunction::tanh_profile(double R) {
    return PerformanceFunction({TanhPiece{R}}, {});
}

PerformanceFunction PerformanceFunction::step(double R, double inside, double outside) {
    return PerformanceFunction({ConstantPiece{inside}, ConstantPiece{outside}}, {R});
}

PerformanceFunction PerformanceFunction::constant(double value) {
    return PerformanceFunction({ConstantPiece{value}}, {});
}

std::size_t PerformanceFunction::piece_index(double x) const {
    return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                    breakpoints_.begin());
}

double PerformanceFunction::jump(std::size_t i) const {
    const double R = breakpoints_.at(i);
    return piece_value(pieces_[i + 1], R) - piece_value(pieces_[i], R);
}

std::size_t PerformanceFunction::jump_at(double x) const {
    for (std::size_t i = 0; i < breakpoints_.size(); ++i)
        if (breakpoints_[i] == x && std::abs(jump(i)) > 1e-12) return i;
    return npos;
}

double PerformanceFunction::max_slope(double limit) const {
    double best = 0.0;
    constexpr int samples = 4096;
    for (int k = 0; k <= samples; ++k) {
        const double x = limit * k / samples;
        best = std::max(best, std::abs(piece_derivative(pieces_[piece_index(x)], x)));
    }
    return best;
}

double PerformanceFunction::operator()(double x) const { return piece_value(pieces_[piece_index(x)], x); }

double PerformanceFunction::tanh_radius() const {
    if (pieces_.size() == 1)
        if (const auto* t = std::get_if<TanhPiece>(&pieces_.front())) return t->R;
    return 0.0;
}

double eval_f(const PerformanceFunction& f, double x) {
    if (!(x >= 0.0)) throw InvalidArgument("eval_f: distance must be >= 0");
    return f(x);
}

double eval_f_derivative(const PerformanceFunction& f, double x) {
    if (!(x >= 0.0)) throw InvalidArgument("eval_f_derivative: distance must be >= 0");
    if (f.jump_at(x) != PerformanceFunction::npos)
        throw UndefinedDerivative("performance function jumps at this distance");
    return piece_derivative(f.pieces()[f.piece_index(x)], x);
}

} // namespace netdeploy

#pragma once

#include <stdexcept>
#include <string>

namespace netdeploy {

/// Bad argument to a pure operation (k = 0, t outside [0,1], r <= 0, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two sensors share a position, so the Voronoi partition is undefined.
class DegenerateConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A distance gradient was requested at zero distance.
class SingularConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Derivative of the performance function requested at a jump.
class UndefinedDerivative : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hypotheses of the segment-derivative kernel do not hold.
class AssumptionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sensor that must live on the network is too far from it.
class OffNetwork : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature hit its depth limit.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lo_(lo), hi_(hi) {}

    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Input (network, scenario) that parses but breaks an invariant.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Malformed input text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace netdeploy

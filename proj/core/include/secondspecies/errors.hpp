#pragma once

#include <stdexcept>
#include <string>

namespace secsp {

// Input outside a function's mathematical domain (e.g. Lambert pair outside X).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// A well-posed query with no solution; carries the attainable range when known.
struct NoSolutionError : std::runtime_error {
    double range_lo;
    double range_hi;
    NoSolutionError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), range_lo(lo), range_hi(hi) {}
};

// An iterative solver failed to converge.
struct ConvergenceError : std::runtime_error {
    double residual;
    explicit ConvergenceError(const std::string& msg, double res = 0.0)
        : std::runtime_error(msg), residual(res) {}
};

// Trajectory ran into a singular configuration (collision with the primary,
// or a rectilinear double collision).
struct SingularityError : std::runtime_error {
    explicit SingularityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace secsp

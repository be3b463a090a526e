#pragma once

#include <stdexcept>
#include <string>

namespace disclinate {

/// Evaluation point (or stencil point) lies within the core radius of a line.
class CoreSingularity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation point lies on the branch-cut ray of a multivalued angle field.
class BranchCutError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class QuadratureFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative solve stopped before reaching its tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double best_residual, int iterations)
        : std::runtime_error(what), best_residual_(best_residual), iterations_(iterations) {}

    double best_residual() const noexcept { return best_residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double best_residual_;
    int iterations_;
};

}  // namespace disclinate

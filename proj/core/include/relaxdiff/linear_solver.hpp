#ifndef RELAXDIFF_LINEAR_SOLVER_HPP
#define RELAXDIFF_LINEAR_SOLVER_HPP

#include <functional>
#include <span>

namespace relaxdiff {

struct CgOptions {
    double tolerance = 1e-10;  // on ||b - A x|| / ||b||
    int max_iterations = 1000;
};

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

/// Unpreconditioned conjugate gradients for a symmetric positive (semi)definite
/// operator. `x` holds the initial guess on entry. Every search direction is a
/// combination of residuals, so a consistent right-hand side on the range of a
/// singular operator stays on it.
CgResult conjugate_gradient(const LinearMap& op, std::span<const double> rhs, std::span<double> x,
                            const CgOptions& options);

}  // namespace relaxdiff

#endif  // RELAXDIFF_LINEAR_SOLVER_HPP

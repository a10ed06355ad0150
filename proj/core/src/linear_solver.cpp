#include "relaxdiff/linear_solver.hpp"

#include <cmath>
#include <vector>

namespace relaxdiff {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace

CgResult conjugate_gradient(const LinearMap& op, std::span<const double> rhs, std::span<double> x,
                            const CgOptions& options) {
    const std::size_t n = rhs.size();
    CgResult result;

    const double rhs_norm = std::sqrt(dot(rhs, rhs));
    if (rhs_norm == 0.0) {
        for (double& v : x) v = 0.0;
        result.converged = true;
        return result;
    }

    std::vector<double> r(n), p(n), q(n);
    op(x, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
    double rho = dot(r, r);
    result.relative_residual = std::sqrt(rho) / rhs_norm;
    if (result.relative_residual <= options.tolerance) {
        result.converged = true;
        return result;
    }
    p = r;

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        op(p, q);
        const double curvature = dot(p, q);
        if (!(curvature > 0.0)) {
            result.iterations = iter;
            return result;
        }
        const double alpha = rho / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        const double rho_next = dot(r, r);
        result.iterations = iter;
        result.relative_residual = std::sqrt(rho_next) / rhs_norm;
        if (result.relative_residual <= options.tolerance) {
            result.converged = true;
            return result;
        }
        const double beta = rho_next / rho;
        rho = rho_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    return result;
}

}  // namespace relaxdiff

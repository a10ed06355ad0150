#include "relaxdiff/response.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "relaxdiff/error.hpp"

namespace relaxdiff {

void ResponseParams::validate() const {
    if (!(s > 0.0)) throw ParameterError("response: contrast threshold s must be positive");
    if (!(omega >= 0.0)) throw ParameterError("response: omega must be nonnegative");
    if (kind == ResponseKind::PeronaMalikScalar && !(lambda > 0.0)) {
        throw ParameterError("response: Perona-Malik lambda must be positive");
    }
}

namespace kernels {

namespace {

double squared_norm(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return sum;
}

void add_shift(std::span<double> out, int n, double omega) {
    if (omega == 0.0) return;
    for (int a = 0; a < n; ++a) out[a * n + a] += omega;
}

}  // namespace

void response_fs(std::span<const double> grad, const ResponseParams& p, int n, std::span<double> out) {
    const double norm2 = squared_norm(grad);
    const double s2 = p.s * p.s;
    std::fill(out.begin(), out.end(), 0.0);
    if (norm2 >= s2) {
        // P_{D-perp} = Id - D (x) D / (D:D)
        const double inv = 1.0 / norm2;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) out[a * n + b] = -grad[a] * grad[b] * inv;
            out[a * n + a] += 1.0;
        }
    } else {
        // r = D:D / s^2; 3/2 (1 - r) Id + r (Id - D (x) D / (D:D))
        //             = (3/2 - r/2) Id - D (x) D / s^2, with no division by D:D.
        const double r = norm2 / s2;
        const double inv = 1.0 / s2;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) out[a * n + b] = -grad[a] * grad[b] * inv;
            out[a * n + a] += 1.5 - 0.5 * r;
        }
    }
    add_shift(out, n, p.omega);
}

void response_pm(std::span<const double> grad, const ResponseParams& p, int n, std::span<double> out) {
    const double g = 1.0 / (1.0 + std::sqrt(squared_norm(grad)) / p.lambda);
    std::fill(out.begin(), out.end(), 0.0);
    for (int a = 0; a < n; ++a) out[a * n + a] = g;
    add_shift(out, n, p.omega);
}

namespace {

void response_naive(std::span<const double> grad, const ResponseParams& p, int n, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const double norm2 = squared_norm(grad);
    for (int a = 0; a < n; ++a) out[a * n + a] = 1.0;
    if (norm2 > 0.0) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) out[a * n + b] -= grad[a] * grad[b] / norm2;
        }
    }
    add_shift(out, n, p.omega);
}

}  // namespace

}  // namespace kernels

Tensor4 response_fs(const ColorMatrix& d, const ResponseParams& p) {
    p.validate();
    Tensor4 out(d.shape());
    kernels::response_fs(d.flat(), p, out.order(), out.flat());
    return out;
}

Tensor4 response_pm(const ColorMatrix& d, const ResponseParams& p) {
    p.validate();
    Tensor4 out(d.shape());
    kernels::response_pm(d.flat(), p, out.order(), out.flat());
    return out;
}

Tensor4 evaluate_response(const ColorMatrix& d, const ResponseParams& p) {
    Tensor4 out(d.shape());
    make_response(p)(d.flat(), d.shape(), out.flat());
    return out;
}

ResponseFn make_response(const ResponseParams& p) {
    p.validate();
    switch (p.kind) {
        case ResponseKind::ThresholdedProjection:
            return [p](std::span<const double> g, MatrixShape shape, std::span<double> out) {
                kernels::response_fs(g, p, shape.size(), out);
            };
        case ResponseKind::PeronaMalikScalar:
            return [p](std::span<const double> g, MatrixShape shape, std::span<double> out) {
                kernels::response_pm(g, p, shape.size(), out);
            };
        case ResponseKind::NaiveProjection:
            return [p](std::span<const double> g, MatrixShape shape, std::span<double> out) {
                kernels::response_naive(g, p, shape.size(), out);
            };
    }
    throw ParameterError("response: unknown kind");
}

Tensor4 response_at_zero(const ResponseFn& f, MatrixShape shape) {
    const std::vector<double> zero(static_cast<std::size_t>(shape.size()), 0.0);
    Tensor4 out(shape);
    f(zero, shape, out.flat());
    return out;
}

double lipschitz_probe(const ResponseParams& p, MatrixShape shape, int trials, double radius, std::uint64_t seed) {
    if (trials < 1) throw ParameterError("lipschitz_probe: trials must be >= 1");
    if (!(radius > 0.0)) throw ParameterError("lipschitz_probe: radius must be positive");
    const ResponseFn f = make_response(p);
    const int n = shape.size();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    // Uniform sample from the Frobenius ball: Gaussian direction, radius U^{1/n}.
    auto sample = [&](std::vector<double>& v) {
        double norm2 = 0.0;
        for (double& x : v) {
            x = normal(rng);
            norm2 += x * x;
        }
        const double scale = radius * std::pow(uniform(rng), 1.0 / n) / std::sqrt(norm2);
        for (double& x : v) x *= scale;
    };

    std::vector<double> d1(static_cast<std::size_t>(n)), d2(static_cast<std::size_t>(n));
    std::vector<double> f1(static_cast<std::size_t>(n * n)), f2(static_cast<std::size_t>(n * n));
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        sample(d1);
        sample(d2);
        double dd = 0.0;
        for (int a = 0; a < n; ++a) dd += (d1[a] - d2[a]) * (d1[a] - d2[a]);
        if (dd == 0.0) continue;
        f(d1, shape, f1);
        f(d2, shape, f2);
        double df = 0.0;
        for (std::size_t e = 0; e < f1.size(); ++e) df += (f1[e] - f2[e]) * (f1[e] - f2[e]);
        best = std::max(best, std::sqrt(df / dd));
    }
    return best;
}

}  // namespace relaxdiff

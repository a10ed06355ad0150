#ifndef RELAXDIFF_TESTS_ORACLES_HPP
#define RELAXDIFF_TESTS_ORACLES_HPP

// Test-only reference routines. Nothing here calls into the code paths it is
// used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "relaxdiff/grid.hpp"

namespace relaxdiff::testing {

/// All eigenvalues of a symmetric row-major n x n matrix by cyclic Jacobi
/// rotations, sorted ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(at(p, q)) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = at(i, i);
    std::sort(values.begin(), values.end());
    return values;
}

/// Random symmetric n x n matrix with entries in [-1, 1].
inline std::vector<double> random_symmetric(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> m(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m[i * n + j] = m[j * n + i] = dist(rng);
    return m;
}

/// Random symmetric matrix with spectrum in [kappa, kappa + spread].
inline std::vector<double> random_spd(int n, double kappa, double spread, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    // Q from Gram-Schmidt on a Gaussian matrix, then Q diag Q^T.
    std::vector<double> q(static_cast<std::size_t>(n * n));
    for (double& v : q) v = normal(rng);
    for (int c = 0; c < n; ++c) {
        for (int p = 0; p < c; ++p) {
            double dot = 0.0;
            for (int r = 0; r < n; ++r) dot += q[r * n + c] * q[r * n + p];
            for (int r = 0; r < n; ++r) q[r * n + c] -= dot * q[r * n + p];
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += q[r * n + c] * q[r * n + c];
        norm = std::sqrt(norm);
        for (int r = 0; r < n; ++r) q[r * n + c] /= norm;
    }
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (double& l : lambda) l = kappa + spread * uni(rng);
    std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += q[i * n + k] * lambda[k] * q[j * n + k];
            m[i * n + j] = m[j * n + i] = sum;
        }
    return m;
}

inline ImageField random_field(const GridSpec& grid, std::uint64_t seed, double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    ImageField u(grid);
    for (double& v : u.values) v = dist(rng);
    return u;
}

inline GradientField random_gradient_field(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GradientField j(grid);
    for (double& v : j.values) v = dist(rng);
    return j;
}

inline Tensor4Field random_spd_field(const GridSpec& grid, double kappa, double spread, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tensor4Field h(grid);
    const int n = h.order();
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const auto m = random_spd(n, kappa, spread, rng);
        std::copy(m.begin(), m.end(), h.at(c).begin());
    }
    return h;
}

/// Smooth, mean-free-ish test image: products of low cosine modes per channel.
inline ImageField smooth_field(const GridSpec& grid, double amplitude = 0.5) {
    ImageField u(grid);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        for (int ch = 0; ch < grid.channels; ++ch) {
            double v = amplitude;
            for (int a = 0; a < grid.axes(); ++a) {
                const double x = (grid.coordinate(c, a) + 0.5) / grid.dims[static_cast<std::size_t>(a)];
                v *= std::cos(std::numbers::pi * x * (1 + ((ch + a) % 2)));
            }
            u(c, ch) = v;
        }
    }
    return u;
}

/// Sample covariance (divisor m - 1) of the given row vectors.
inline std::vector<double> brute_covariance(const std::vector<std::vector<double>>& samples) {
    const std::size_t n = samples.front().size();
    const double m = static_cast<double>(samples.size());
    std::vector<double> mean(n, 0.0);
    for (const auto& s : samples)
        for (std::size_t i = 0; i < n; ++i) mean[i] += s[i] / m;
    std::vector<double> cov(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (const auto& s : samples) sum += (s[i] - mean[i]) * (s[j] - mean[j]);
            cov[i * n + j] = sum / (m - 1.0);
        }
    return cov;
}

}  // namespace relaxdiff::testing

#endif  // RELAXDIFF_TESTS_ORACLES_HPP

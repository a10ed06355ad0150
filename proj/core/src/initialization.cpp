#include "relaxdiff/initialization.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "relaxdiff/error.hpp"

namespace relaxdiff {

ImageField rescale(const ImageField& raw, double lo, double hi) {
    if (!(hi > lo)) throw ParameterError("rescale: need hi > lo");
    ImageField out = raw;
    const double scale = 2.0 / (hi - lo);
    for (double& v : out.values) {
        if (!(v >= lo && v <= hi)) {
            throw RangeError("rescale: value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
        }
        v = (v - lo) * scale - 1.0;
    }
    return out;
}

ImageField unrescale(const ImageField& scaled, double lo, double hi) {
    if (!(hi > lo)) throw ParameterError("unrescale: need hi > lo");
    ImageField out = scaled;
    const double half_width = 0.5 * (hi - lo);
    for (double& v : out.values) v = (v + 1.0) * half_width + lo;
    return out;
}

ImageField add_noise(const ImageField& u, const NoiseSpec& spec) {
    if (!(spec.std >= 0.0)) throw ParameterError("add_noise: std must be nonnegative");
    if (spec.std == 0.0) return u;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ImageField out = u;
    for (double& v : out.values) v += spec.std * normal(rng);
    return out;
}

Tensor4Field init_H0(const ImageField& noisy, int window, double alpha) {
    const GridSpec& g = noisy.grid;
    if (window < 3 || window % 2 == 0) throw ParameterError("init_H0: window must be odd and >= 3");
    if (!(alpha > 0.0)) throw ParameterError("init_H0: alpha must be positive");
    for (int d : g.dims) {
        if (window > d) throw ParameterError("init_H0: window " + std::to_string(window) + " exceeds grid size");
    }

    const GradientField grad = gradient(noisy);
    const int n = g.channels * g.axes();
    const int d = g.axes();
    const int half = window / 2;
    Tensor4Field out(g);

    std::vector<std::size_t> members;
    std::vector<double> mean(static_cast<std::size_t>(n));
    std::vector<int> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d)), pos(static_cast<std::size_t>(d));
    for (std::size_t c = 0; c < g.cells(); ++c) {
        members.clear();
        for (int a = 0; a < d; ++a) {
            const int x = g.coordinate(c, a);
            lo[a] = std::max(0, x - half);
            hi[a] = std::min(g.dims[a] - 1, x + half);
            pos[a] = lo[a];
        }
        // Enumerate the clipped box.
        while (true) {
            std::size_t idx = 0;
            for (int a = 0; a < d; ++a) idx += static_cast<std::size_t>(pos[a]) * g.stride(a);
            members.push_back(idx);
            int a = 0;
            while (a < d && ++pos[a] > hi[a]) {
                pos[a] = lo[a];
                ++a;
            }
            if (a == d) break;
        }

        const double m = static_cast<double>(members.size());
        std::fill(mean.begin(), mean.end(), 0.0);
        for (std::size_t idx : members) {
            auto v = grad.at(idx);
            for (int e = 0; e < n; ++e) mean[e] += v[e];
        }
        for (double& v : mean) v /= m;

        auto cov = out.at(c);
        for (std::size_t idx : members) {
            auto v = grad.at(idx);
            for (int a = 0; a < n; ++a) {
                const double da = v[a] - mean[a];
                for (int b = a; b < n; ++b) cov[a * n + b] += da * (v[b] - mean[b]);
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                cov[a * n + b] /= (m - 1.0);
                cov[b * n + a] = cov[a * n + b];
            }
            cov[a * n + a] += alpha;
        }
    }
    return out;
}

}  // namespace relaxdiff

#include "relaxdiff/mollifier.hpp"

#include <algorithm>
#include <cmath>

#include "relaxdiff/error.hpp"

namespace relaxdiff {

namespace {

void require_positive_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("mollifier: sigma must be positive");
}

}  // namespace

Kernel Kernel::gaussian(double sigma) {
    require_positive_sigma(sigma);
    return {KernelKind::Gaussian, sigma, std::ceil(4.0 * sigma)};
}

Kernel Kernel::bump(double sigma) {
    require_positive_sigma(sigma);
    return {KernelKind::CompactBump, sigma, 2.0 * sigma};
}

Kernel Kernel::make(KernelKind kind, double sigma) {
    return kind == KernelKind::Gaussian ? gaussian(sigma) : bump(sigma);
}

std::vector<double> Kernel::weights_1d() const {
    require_positive_sigma(sigma);
    if (is_delta()) return {1.0};
    const int radius = static_cast<int>(std::ceil(support_radius));
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1), 0.0);
    for (int o = -radius; o <= radius; ++o) {
        double value = 0.0;
        if (kind == KernelKind::Gaussian) {
            value = std::exp(-0.5 * (o * o) / (sigma * sigma));
        } else {
            const double x = o / support_radius;
            value = std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        }
        w[static_cast<std::size_t>(o + radius)] = value;
    }
    return w;
}

ImageField convolve(const ImageField& u, const Kernel& kernel) {
    const std::vector<double> w = kernel.weights_1d();
    if (w.size() == 1) return u;
    const int radius = static_cast<int>(w.size() / 2);
    const GridSpec& g = u.grid;
    const int k = g.channels;

    // The box-clipped product kernel renormalized per pixel equals the
    // product of the per-axis renormalized 1-D kernels, so one pass per axis.
    ImageField current = u;
    ImageField next(g);
    for (int axis = 0; axis < g.axes(); ++axis) {
        const std::size_t s = g.stride(axis);
        const int n = g.dims[static_cast<std::size_t>(axis)];
        for (std::size_t c = 0; c < g.cells(); ++c) {
            const int x = g.coordinate(c, axis);
            const int lo = std::max(-radius, -x);
            const int hi = std::min(radius, n - 1 - x);
            double total = 0.0;
            for (int o = lo; o <= hi; ++o) total += w[static_cast<std::size_t>(o + radius)];
            for (int i = 0; i < k; ++i) {
                double acc = 0.0;
                for (int o = lo; o <= hi; ++o) {
                    const std::size_t src = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(c) + o * static_cast<std::ptrdiff_t>(s));
                    acc += w[static_cast<std::size_t>(o + radius)] * current(src, i);
                }
                next(c, i) = acc / total;
            }
        }
        std::swap(current, next);
    }
    return current;
}

GradientField grad_sigma(const ImageField& u, const Kernel& kernel) {
    if (kernel.is_delta()) {
        require_positive_sigma(kernel.sigma);
        return gradient(u);
    }
    return gradient(convolve(u, kernel));
}

}  // namespace relaxdiff

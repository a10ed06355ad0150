#ifndef RELAXDIFF_MOLLIFIER_HPP
#define RELAXDIFF_MOLLIFIER_HPP

#include <vector>

#include "relaxdiff/grid.hpp"

namespace relaxdiff {

enum class KernelKind { Gaussian, CompactBump };

/// Separable smoothing kernel, sigma and support in pixels.
///
/// Gaussian: exp(-x^2 / (2 sigma^2)) truncated at ceil(4 sigma).
/// CompactBump: exp(-1 / (1 - (x/R)^2)) for |x| < R with R = 2 sigma.
/// Below half a pixel both kernels collapse onto the centre pixel.
struct Kernel {
    KernelKind kind = KernelKind::Gaussian;
    double sigma = 1.0;
    double support_radius = 4.0;

    static Kernel gaussian(double sigma);
    static Kernel bump(double sigma);
    static Kernel make(KernelKind kind, double sigma);

    bool is_delta() const { return sigma < 0.5; }
    /// Unnormalized 1-D weights for offsets -R..R.
    std::vector<double> weights_1d() const;
};

/// Domain-restricted convolution with per-pixel renormalized weights, so
/// constants are reproduced up to the boundary. Throws ParameterError for
/// sigma <= 0.
ImageField convolve(const ImageField& u, const Kernel& kernel);

/// gradient(convolve(u, kernel)); plain gradient(u) for a delta kernel.
GradientField grad_sigma(const ImageField& u, const Kernel& kernel);

}  // namespace relaxdiff

#endif  // RELAXDIFF_MOLLIFIER_HPP

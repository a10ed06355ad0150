#ifndef RELAXDIFF_INITIALIZATION_HPP
#define RELAXDIFF_INITIALIZATION_HPP

#include <cstdint>

#include "relaxdiff/grid.hpp"

namespace relaxdiff {

enum class NoiseKind { GaussianIID };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::GaussianIID;
    double std = 0.0;
    std::uint64_t seed = 0;
};

/// Affine map of [lo, hi] onto [-1, 1], same map for every channel. Throws
/// RangeError for values outside [lo, hi].
ImageField rescale(const ImageField& raw, double lo, double hi);

/// Inverse of rescale; no range check.
ImageField unrescale(const ImageField& scaled, double lo, double hi);

/// Adds std * z with z i.i.d. standard normal per pixel and channel.
/// z comes from std::mt19937_64 seeded with spec.seed fed through
/// std::normal_distribution, so a given build and seed reproduce the field
/// and the noise is linear in spec.std. Output is not clamped.
ImageField add_noise(const ImageField& u, const NoiseSpec& spec);

/// Initial diffusivity: per cell, the sample covariance (divisor m - 1) of
/// the flattened forward-difference gradient over the window^d neighbourhood
/// clipped to the grid, plus alpha Id.
Tensor4Field init_H0(const ImageField& noisy, int window, double alpha);

}  // namespace relaxdiff

#endif  // RELAXDIFF_INITIALIZATION_HPP

#ifndef RELAXDIFF_RESPONSE_HPP
#define RELAXDIFF_RESPONSE_HPP

// Diffusivity response functions F: R^{k x d} -> symmetric PSD tensors.

#include <cstdint>
#include <functional>
#include <span>

#include "relaxdiff/tensor_algebra.hpp"

namespace relaxdiff {

enum class ResponseKind {
    /// Contrast-thresholded projection F_s.
    ThresholdedProjection,
    /// Isotropic g(|D|) Id with g(r) = 1 / (1 + r / lambda).
    PeronaMalikScalar,
    /// Bare projection onto the complement of D. Test-only: it has far too
    /// many stationary points to be useful as a filter.
    NaiveProjection,
};

struct ResponseParams {
    ResponseKind kind = ResponseKind::ThresholdedProjection;
    double s = 0.1;       // contrast threshold
    double omega = 0.0;   // uniform positivity shift, adds omega * Id
    double lambda = 1.0;  // Perona-Malik scale

    void validate() const;
};

/// F_s(D) + omega Id. For D:D >= s^2 this is the projection onto D's
/// orthogonal complement; below the threshold it blends (3/2) Id into it:
///   3/2 (1 - D:D/s^2) Id + (D:D/s^2) P_{D-perp}.
Tensor4 response_fs(const ColorMatrix& d, const ResponseParams& p);

/// g(|D|_F) Id + omega Id.
Tensor4 response_pm(const ColorMatrix& d, const ResponseParams& p);

/// Dispatch on p.kind.
Tensor4 evaluate_response(const ColorMatrix& d, const ResponseParams& p);

/// Per-cell response used by the integrator: writes F(grad) into `out`.
/// The function receives the flattened k x d gradient and the (k*d)^2 output.
using ResponseFn = std::function<void(std::span<const double> grad, MatrixShape shape, std::span<double> out)>;

ResponseFn make_response(const ResponseParams& p);

/// F(0) for a given response.
Tensor4 response_at_zero(const ResponseFn& f, MatrixShape shape);

/// Empirical Lipschitz bound of F in the Frobenius norms:
/// max over `trials` random pairs in the ball of `radius` of
/// |F(D1) - F(D2)| / |D1 - D2|. Deterministic for a given seed.
double lipschitz_probe(const ResponseParams& p, MatrixShape shape, int trials, double radius,
                       std::uint64_t seed = 0x1234abcdULL);

namespace kernels {

void response_fs(std::span<const double> grad, const ResponseParams& p, int n, std::span<double> out);
void response_pm(std::span<const double> grad, const ResponseParams& p, int n, std::span<double> out);

}  // namespace kernels

}  // namespace relaxdiff

#endif  // RELAXDIFF_RESPONSE_HPP

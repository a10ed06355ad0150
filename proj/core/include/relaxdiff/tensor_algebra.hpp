#ifndef RELAXDIFF_TENSOR_ALGEBRA_HPP
#define RELAXDIFF_TENSOR_ALGEBRA_HPP

// Linear algebra on k x d color-gradient matrices and on symmetric
// fourth-order tensors acting on them. A fourth-order tensor H_{ijIJ} is
// stored as a dense (k*d) x (k*d) row-major matrix with the pair (i,j)
// flattened to i*d + j.

#include <cstddef>
#include <span>
#include <vector>

namespace relaxdiff {

/// Shape (k channels, d spatial axes) of a color-gradient matrix.
struct MatrixShape {
    int channels = 1;
    int axes = 1;

    int size() const { return channels * axes; }
    friend bool operator==(const MatrixShape&, const MatrixShape&) = default;
};

class ColorMatrix {
public:
    ColorMatrix() = default;
    explicit ColorMatrix(MatrixShape shape);
    ColorMatrix(MatrixShape shape, std::vector<double> entries);

    static ColorMatrix zeros(MatrixShape shape) { return ColorMatrix(shape); }

    MatrixShape shape() const { return shape_; }
    double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * shape_.axes + j)]; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * shape_.axes + j)]; }

    std::span<double> flat() { return entries_; }
    std::span<const double> flat() const { return entries_; }

    ColorMatrix& operator+=(const ColorMatrix& other);
    ColorMatrix& operator-=(const ColorMatrix& other);
    ColorMatrix& operator*=(double scale);

private:
    MatrixShape shape_{};
    std::vector<double> entries_;
};

ColorMatrix operator+(ColorMatrix a, const ColorMatrix& b);
ColorMatrix operator-(ColorMatrix a, const ColorMatrix& b);
ColorMatrix operator*(double scale, ColorMatrix a);

class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(MatrixShape shape);
    Tensor4(MatrixShape shape, std::vector<double> entries);

    static Tensor4 zeros(MatrixShape shape) { return Tensor4(shape); }
    static Tensor4 identity(MatrixShape shape, double scale = 1.0);

    MatrixShape shape() const { return shape_; }
    int order() const { return shape_.size(); }

    /// Entry H_{ijIJ}.
    double& operator()(int i, int j, int I, int J);
    double operator()(int i, int j, int I, int J) const;

    /// Entry of the flattened matrix form.
    double& at(int row, int col) { return entries_[static_cast<std::size_t>(row * order() + col)]; }
    double at(int row, int col) const { return entries_[static_cast<std::size_t>(row * order() + col)]; }

    std::span<double> flat() { return entries_; }
    std::span<const double> flat() const { return entries_; }

    Tensor4& operator+=(const Tensor4& other);
    Tensor4& operator-=(const Tensor4& other);
    Tensor4& operator*=(double scale);

private:
    MatrixShape shape_{};
    std::vector<double> entries_;
};

Tensor4 operator+(Tensor4 a, const Tensor4& b);
Tensor4 operator-(Tensor4 a, const Tensor4& b);
Tensor4 operator*(double scale, Tensor4 a);

struct SpectralBound {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// Sum_{ij} A_ij B_ij.
double frobenius(const ColorMatrix& a, const ColorMatrix& b);

/// Tensor inner product Sum H_{ijIJ} G_{ijIJ}.
double frobenius(const Tensor4& a, const Tensor4& b);

double frobenius_norm(const ColorMatrix& a);
double frobenius_norm(const Tensor4& a);

/// (H D)_{ij} = Sum_{IJ} H_{ijIJ} D_{IJ}.
ColorMatrix apply(const Tensor4& h, const ColorMatrix& d);

/// Orthogonal projection onto the Frobenius complement of `direction`.
/// Throws DegenerateDirectionError when the direction is numerically zero.
Tensor4 project_orth(const ColorMatrix& direction);

/// True when the direction is below the degeneracy threshold of project_orth.
bool is_degenerate_direction(const ColorMatrix& direction);

/// Extreme eigenvalues of the matrix form. Throws SymmetryError when H is
/// not symmetric to 1e-12 relative.
SpectralBound spectral_bounds(const Tensor4& h);

/// lambda_min(H) >= kappa - 1e-10.
bool is_psd(const Tensor4& h, double kappa);

/// max |H_ab - H_ba| relative to max(1, max |H_ab|).
double symmetry_defect(const Tensor4& h);

namespace kernels {

// Span-level versions used in the per-cell hot loops. `n` is k*d and every
// tensor span holds n*n entries.

void apply(std::span<const double> h, std::span<const double> d, std::span<double> out, int n);
SpectralBound spectral_bounds(std::span<const double> h, int n);
double symmetry_defect(std::span<const double> h, int n);

}  // namespace kernels

}  // namespace relaxdiff

#endif  // RELAXDIFF_TENSOR_ALGEBRA_HPP

#ifndef RELAXDIFF_GRID_HPP
#define RELAXDIFF_GRID_HPP

// Pixel grids and the fields that live on them.
//
// Cells are stored with axis 0 varying fastest. A GradientField stores, for
// every cell x, the k x d matrix of forward differences
//     D_ij(x) = (u_i(x + e_j) - u_i(x)) / h_j,
// i.e. the values on the faces x + e_j / 2. The last cell along an axis has
// no face in that direction and carries a zero slope there, which is the
// discrete no-flux boundary.

#include <cstddef>
#include <span>
#include <vector>

#include "relaxdiff/tensor_algebra.hpp"

namespace relaxdiff {

struct GridSpec {
    std::vector<int> dims;        // cells per axis, d = dims.size()
    std::vector<double> spacing;  // h per axis; empty means unit spacing
    int channels = 1;

    GridSpec() = default;
    GridSpec(std::vector<int> dims_, int channels_, std::vector<double> spacing_ = {});

    int axes() const { return static_cast<int>(dims.size()); }
    std::size_t cells() const;
    double h(int axis) const { return spacing.empty() ? 1.0 : spacing[static_cast<std::size_t>(axis)]; }
    double cell_volume() const;
    MatrixShape matrix_shape() const { return {channels, axes()}; }

    /// Linear stride of `axis` in the cell index.
    std::size_t stride(int axis) const;
    /// Coordinate of `cell` along `axis`.
    int coordinate(std::size_t cell, int axis) const;

    /// Throws ParameterError unless dims >= 2, spacing > 0, k >= 1.
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// k-channel field, values[cell * k + channel].
struct ImageField {
    GridSpec grid;
    std::vector<double> values;

    ImageField() = default;
    explicit ImageField(GridSpec g);
    ImageField(GridSpec g, std::vector<double> v);

    double& operator()(std::size_t cell, int channel) { return values[cell * grid.channels + channel]; }
    double operator()(std::size_t cell, int channel) const { return values[cell * grid.channels + channel]; }
};

/// Per-cell k x d matrices, values[cell * k*d + i*d + j].
struct GradientField {
    GridSpec grid;
    std::vector<double> values;

    GradientField() = default;
    explicit GradientField(GridSpec g);

    std::size_t block() const { return static_cast<std::size_t>(grid.channels * grid.axes()); }
    std::span<double> at(std::size_t cell) { return {values.data() + cell * block(), block()}; }
    std::span<const double> at(std::size_t cell) const { return {values.data() + cell * block(), block()}; }
    ColorMatrix matrix(std::size_t cell) const;
};

/// Per-cell symmetric (k*d) x (k*d) tensors.
struct Tensor4Field {
    GridSpec grid;
    std::vector<double> values;

    Tensor4Field() = default;
    explicit Tensor4Field(GridSpec g);
    /// Every cell set to `value`.
    Tensor4Field(GridSpec g, const Tensor4& value);

    int order() const { return grid.channels * grid.axes(); }
    std::size_t block() const { return static_cast<std::size_t>(order() * order()); }
    std::span<double> at(std::size_t cell) { return {values.data() + cell * block(), block()}; }
    std::span<const double> at(std::size_t cell) const { return {values.data() + cell * block(), block()}; }
    Tensor4 tensor(std::size_t cell) const;
    void set(std::size_t cell, const Tensor4& value);
};

/// Smallest and largest cell-wise eigenvalue over the whole field.
SpectralBound field_spectral_bounds(const Tensor4Field& h);

/// Inner products weighted by the cell volume.
double inner(const ImageField& a, const ImageField& b);
double inner(const GradientField& a, const GradientField& b);
double l2_norm(const ImageField& u);
double l2_norm_mean_free(const ImageField& u);
/// Sum_x u_c(x) * |cell| per channel.
std::vector<double> channel_mass(const ImageField& u);
std::vector<double> channel_mean(const ImageField& u);
ImageField subtract_channel_mean(const ImageField& u);

GradientField gradient(const ImageField& u);

/// Negative adjoint of gradient: <gradient(u), J> = -<u, divergence(J)>.
ImageField divergence(const GradientField& flux);

/// The linear map u -> div(H grad u) for a frozen diffusivity field.
///
/// The tensor acting on the forward differences of cell x is the arithmetic
/// mean of H over x and its forward neighbours x + e_j, the cells adjacent
/// to the faces those differences live on. The induced bilinear form is
/// symmetric and inherits lambda_min >= kappa from the cells.
class DiffusionOperator {
public:
    /// Throws SymmetryError when a cell tensor is not symmetric to 1e-12.
    explicit DiffusionOperator(const Tensor4Field& h);

    const GridSpec& grid() const { return grid_; }
    std::size_t unknowns() const { return grid_.cells() * static_cast<std::size_t>(grid_.channels); }

    /// out = div(H grad u), span layout as ImageField::values.
    void apply(std::span<const double> u, std::span<double> out) const;
    ImageField apply(const ImageField& u) const;

private:
    GridSpec grid_;
    std::vector<double> face_tensors_;
    std::vector<std::size_t> strides_;
    std::vector<double> inv_h_;
};

ImageField diffusion_apply(const Tensor4Field& h, const ImageField& u);

/// Smallest nonzero eigenvalue of the scalar Neumann Laplacian -div grad on
/// `grid` (channels ignored), by inverse iteration on mean-free vectors.
/// Throws NumericalError when the iteration does not settle to 1e-8.
double poincare_estimate(const GridSpec& grid);

}  // namespace relaxdiff

#endif  // RELAXDIFF_GRID_HPP

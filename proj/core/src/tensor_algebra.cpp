#include "relaxdiff/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "relaxdiff/error.hpp"

namespace relaxdiff {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kDegeneracyThreshold = 1e-14;

void require_same(MatrixShape a, MatrixShape b, const char* what) {
    if (!(a == b)) {
        throw DimensionError(std::string(what) + ": shape mismatch (" + std::to_string(a.channels) + "x" +
                             std::to_string(a.axes) + " vs " + std::to_string(b.channels) + "x" +
                             std::to_string(b.axes) + ")");
    }
}

void require_valid(MatrixShape s) {
    if (s.channels < 1 || s.axes < 1) {
        throw DimensionError("matrix shape must have k >= 1 and d >= 1");
    }
}

}  // namespace

ColorMatrix::ColorMatrix(MatrixShape shape)
    : shape_(shape), entries_(static_cast<std::size_t>(shape.size()), 0.0) {
    require_valid(shape);
}

ColorMatrix::ColorMatrix(MatrixShape shape, std::vector<double> entries)
    : shape_(shape), entries_(std::move(entries)) {
    require_valid(shape);
    if (entries_.size() != static_cast<std::size_t>(shape.size())) {
        throw DimensionError("ColorMatrix: entry count does not match k*d");
    }
}

ColorMatrix& ColorMatrix::operator+=(const ColorMatrix& other) {
    require_same(shape_, other.shape_, "ColorMatrix +=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ColorMatrix& ColorMatrix::operator-=(const ColorMatrix& other) {
    require_same(shape_, other.shape_, "ColorMatrix -=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ColorMatrix& ColorMatrix::operator*=(double scale) {
    for (double& v : entries_) v *= scale;
    return *this;
}

ColorMatrix operator+(ColorMatrix a, const ColorMatrix& b) { return a += b; }
ColorMatrix operator-(ColorMatrix a, const ColorMatrix& b) { return a -= b; }
ColorMatrix operator*(double scale, ColorMatrix a) { return a *= scale; }

Tensor4::Tensor4(MatrixShape shape)
    : shape_(shape), entries_(static_cast<std::size_t>(shape.size() * shape.size()), 0.0) {
    require_valid(shape);
}

Tensor4::Tensor4(MatrixShape shape, std::vector<double> entries) : shape_(shape), entries_(std::move(entries)) {
    require_valid(shape);
    if (entries_.size() != static_cast<std::size_t>(shape.size() * shape.size())) {
        throw DimensionError("Tensor4: entry count does not match (k*d)^2");
    }
}

Tensor4 Tensor4::identity(MatrixShape shape, double scale) {
    Tensor4 t(shape);
    for (int a = 0; a < t.order(); ++a) t.at(a, a) = scale;
    return t;
}

double& Tensor4::operator()(int i, int j, int I, int J) {
    return at(i * shape_.axes + j, I * shape_.axes + J);
}

double Tensor4::operator()(int i, int j, int I, int J) const {
    return at(i * shape_.axes + j, I * shape_.axes + J);
}

Tensor4& Tensor4::operator+=(const Tensor4& other) {
    require_same(shape_, other.shape_, "Tensor4 +=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& other) {
    require_same(shape_, other.shape_, "Tensor4 -=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Tensor4& Tensor4::operator*=(double scale) {
    for (double& v : entries_) v *= scale;
    return *this;
}

Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
Tensor4 operator*(double scale, Tensor4 a) { return a *= scale; }

double frobenius(const ColorMatrix& a, const ColorMatrix& b) {
    require_same(a.shape(), b.shape(), "frobenius");
    double sum = 0.0;
    auto x = a.flat();
    auto y = b.flat();
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

double frobenius(const Tensor4& a, const Tensor4& b) {
    require_same(a.shape(), b.shape(), "frobenius");
    double sum = 0.0;
    auto x = a.flat();
    auto y = b.flat();
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

double frobenius_norm(const ColorMatrix& a) { return std::sqrt(frobenius(a, a)); }
double frobenius_norm(const Tensor4& a) { return std::sqrt(frobenius(a, a)); }

ColorMatrix apply(const Tensor4& h, const ColorMatrix& d) {
    require_same(h.shape(), d.shape(), "apply");
    ColorMatrix out(d.shape());
    kernels::apply(h.flat(), d.flat(), out.flat(), h.order());
    return out;
}

bool is_degenerate_direction(const ColorMatrix& direction) {
    double max_abs = 0.0;
    for (double v : direction.flat()) max_abs = std::max(max_abs, std::abs(v));
    return frobenius_norm(direction) < kDegeneracyThreshold * std::max(1.0, max_abs);
}

Tensor4 project_orth(const ColorMatrix& direction) {
    if (is_degenerate_direction(direction)) {
        throw DegenerateDirectionError("project_orth: direction has (numerically) zero Frobenius norm");
    }
    const MatrixShape shape = direction.shape();
    const int n = shape.size();
    const double inv_norm2 = 1.0 / frobenius(direction, direction);
    auto v = direction.flat();
    Tensor4 p = Tensor4::identity(shape);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) p.at(a, b) -= v[a] * v[b] * inv_norm2;
    }
    return p;
}

SpectralBound spectral_bounds(const Tensor4& h) { return kernels::spectral_bounds(h.flat(), h.order()); }

bool is_psd(const Tensor4& h, double kappa) { return spectral_bounds(h).lambda_min >= kappa - 1e-10; }

double symmetry_defect(const Tensor4& h) { return kernels::symmetry_defect(h.flat(), h.order()); }

namespace kernels {

void apply(std::span<const double> h, std::span<const double> d, std::span<double> out, int n) {
    for (int a = 0; a < n; ++a) {
        const double* row = h.data() + static_cast<std::ptrdiff_t>(a) * n;
        double sum = 0.0;
        for (int b = 0; b < n; ++b) sum += row[b] * d[b];
        out[a] = sum;
    }
}

double symmetry_defect(std::span<const double> h, int n) {
    double scale = 1.0;
    double defect = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            scale = std::max(scale, std::abs(h[a * n + b]));
            if (b > a) defect = std::max(defect, std::abs(h[a * n + b] - h[b * n + a]));
        }
    }
    return defect / scale;
}

SpectralBound spectral_bounds(std::span<const double> h, int n) {
    if (symmetry_defect(h, n) > kSymmetryTolerance) {
        throw SymmetryError("spectral_bounds: tensor is not symmetric (H_ijIJ != H_IJij)");
    }
    if (n == 1) return {h[0], h[0]};
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(h.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("spectral_bounds: symmetric eigensolver did not converge");
    }
    const auto& values = solver.eigenvalues();
    return {values.minCoeff(), values.maxCoeff()};
}

}  // namespace kernels

}  // namespace relaxdiff

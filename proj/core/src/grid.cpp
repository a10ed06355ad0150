#include "relaxdiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "relaxdiff/error.hpp"
#include "relaxdiff/linear_solver.hpp"

namespace relaxdiff {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw DimensionError(std::string(what) + ": grid mismatch");
}

bool has_forward_face(const GridSpec& g, std::size_t cell, int axis) {
    return g.coordinate(cell, axis) < g.dims[static_cast<std::size_t>(axis)] - 1;
}

}  // namespace

GridSpec::GridSpec(std::vector<int> dims_, int channels_, std::vector<double> spacing_)
    : dims(std::move(dims_)), spacing(std::move(spacing_)), channels(channels_) {
    validate();
}

std::size_t GridSpec::cells() const {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < axes(); ++a) v *= h(a);
    return v;
}

std::size_t GridSpec::stride(int axis) const {
    std::size_t s = 1;
    for (int a = 0; a < axis; ++a) s *= static_cast<std::size_t>(dims[static_cast<std::size_t>(a)]);
    return s;
}

int GridSpec::coordinate(std::size_t cell, int axis) const {
    return static_cast<int>((cell / stride(axis)) % static_cast<std::size_t>(dims[static_cast<std::size_t>(axis)]));
}

void GridSpec::validate() const {
    if (dims.empty()) throw ParameterError("grid needs at least one axis");
    for (int d : dims) {
        if (d < 2) throw ParameterError("grid dimensions must be >= 2, got " + std::to_string(d));
    }
    if (!spacing.empty()) {
        if (spacing.size() != dims.size()) throw ParameterError("grid spacing must have one entry per axis");
        for (double h : spacing) {
            if (!(h > 0.0)) throw ParameterError("grid spacing must be positive");
        }
    }
    if (channels < 1) throw ParameterError("grid needs at least one channel");
}

ImageField::ImageField(GridSpec g) : grid(std::move(g)), values(grid.cells() * grid.channels, 0.0) {}

ImageField::ImageField(GridSpec g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.cells() * grid.channels) {
        throw DimensionError("ImageField: value count does not match grid");
    }
}

GradientField::GradientField(GridSpec g) : grid(std::move(g)), values(grid.cells() * block(), 0.0) {}

ColorMatrix GradientField::matrix(std::size_t cell) const {
    auto v = at(cell);
    return ColorMatrix(grid.matrix_shape(), std::vector<double>(v.begin(), v.end()));
}

Tensor4Field::Tensor4Field(GridSpec g) : grid(std::move(g)), values(grid.cells() * block(), 0.0) {}

Tensor4Field::Tensor4Field(GridSpec g, const Tensor4& value) : Tensor4Field(std::move(g)) {
    if (!(value.shape() == grid.matrix_shape())) throw DimensionError("Tensor4Field: tensor shape does not match grid");
    for (std::size_t c = 0; c < grid.cells(); ++c) set(c, value);
}

Tensor4 Tensor4Field::tensor(std::size_t cell) const {
    auto v = at(cell);
    return Tensor4(grid.matrix_shape(), std::vector<double>(v.begin(), v.end()));
}

void Tensor4Field::set(std::size_t cell, const Tensor4& value) {
    auto src = value.flat();
    std::copy(src.begin(), src.end(), at(cell).begin());
}

SpectralBound field_spectral_bounds(const Tensor4Field& h) {
    SpectralBound out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t c = 0; c < h.grid.cells(); ++c) {
        const SpectralBound b = kernels::spectral_bounds(h.at(c), h.order());
        out.lambda_min = std::min(out.lambda_min, b.lambda_min);
        out.lambda_max = std::max(out.lambda_max, b.lambda_max);
    }
    return out;
}

double inner(const ImageField& a, const ImageField& b) {
    require_same_grid(a.grid, b.grid, "inner");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
    return sum * a.grid.cell_volume();
}

double inner(const GradientField& a, const GradientField& b) {
    require_same_grid(a.grid, b.grid, "inner");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
    return sum * a.grid.cell_volume();
}

double l2_norm(const ImageField& u) { return std::sqrt(inner(u, u)); }

double l2_norm_mean_free(const ImageField& u) { return l2_norm(subtract_channel_mean(u)); }

std::vector<double> channel_mass(const ImageField& u) {
    const int k = u.grid.channels;
    std::vector<double> mass(static_cast<std::size_t>(k), 0.0);
    for (std::size_t c = 0; c < u.grid.cells(); ++c) {
        for (int i = 0; i < k; ++i) mass[static_cast<std::size_t>(i)] += u(c, i);
    }
    for (double& m : mass) m *= u.grid.cell_volume();
    return mass;
}

std::vector<double> channel_mean(const ImageField& u) {
    std::vector<double> mean = channel_mass(u);
    const double volume = u.grid.cell_volume() * static_cast<double>(u.grid.cells());
    for (double& m : mean) m /= volume;
    return mean;
}

ImageField subtract_channel_mean(const ImageField& u) {
    const std::vector<double> mean = channel_mean(u);
    ImageField out = u;
    for (std::size_t c = 0; c < u.grid.cells(); ++c) {
        for (int i = 0; i < u.grid.channels; ++i) out(c, i) -= mean[static_cast<std::size_t>(i)];
    }
    return out;
}

GradientField gradient(const ImageField& u) {
    const GridSpec& g = u.grid;
    GradientField out(g);
    const int k = g.channels;
    const int d = g.axes();
    for (int j = 0; j < d; ++j) {
        const std::size_t s = g.stride(j);
        const double inv_h = 1.0 / g.h(j);
        for (std::size_t c = 0; c < g.cells(); ++c) {
            if (!has_forward_face(g, c, j)) continue;
            auto block = out.at(c);
            for (int i = 0; i < k; ++i) block[static_cast<std::size_t>(i * d + j)] = (u(c + s, i) - u(c, i)) * inv_h;
        }
    }
    return out;
}

ImageField divergence(const GradientField& flux) {
    const GridSpec& g = flux.grid;
    ImageField out(g);
    const int k = g.channels;
    const int d = g.axes();
    for (int j = 0; j < d; ++j) {
        const std::size_t s = g.stride(j);
        const double inv_h = 1.0 / g.h(j);
        for (std::size_t c = 0; c < g.cells(); ++c) {
            if (!has_forward_face(g, c, j)) continue;
            auto block = flux.at(c);
            for (int i = 0; i < k; ++i) {
                const double f = block[static_cast<std::size_t>(i * d + j)] * inv_h;
                out(c, i) += f;
                out(c + s, i) -= f;
            }
        }
    }
    return out;
}

DiffusionOperator::DiffusionOperator(const Tensor4Field& h) : grid_(h.grid) {
    const int n = h.order();
    const std::size_t block = h.block();
    const int d = grid_.axes();
    for (std::size_t c = 0; c < grid_.cells(); ++c) {
        if (kernels::symmetry_defect(h.at(c), n) > 1e-12) {
            throw SymmetryError("diffusion operator: tensor at cell " + std::to_string(c) + " is not symmetric");
        }
    }
    for (int j = 0; j < d; ++j) {
        strides_.push_back(grid_.stride(j));
        inv_h_.push_back(1.0 / grid_.h(j));
    }
    face_tensors_.assign(grid_.cells() * block, 0.0);
    for (std::size_t c = 0; c < grid_.cells(); ++c) {
        double* dst = face_tensors_.data() + c * block;
        auto self = h.at(c);
        std::copy(self.begin(), self.end(), dst);
        int count = 1;
        for (int j = 0; j < d; ++j) {
            if (!has_forward_face(grid_, c, j)) continue;
            auto nb = h.at(c + strides_[static_cast<std::size_t>(j)]);
            for (std::size_t e = 0; e < block; ++e) dst[e] += nb[e];
            ++count;
        }
        const double w = 1.0 / count;
        for (std::size_t e = 0; e < block; ++e) dst[e] *= w;
    }
}

void DiffusionOperator::apply(std::span<const double> u, std::span<double> out) const {
    const int k = grid_.channels;
    const int d = grid_.axes();
    const int n = k * d;
    const std::size_t block = static_cast<std::size_t>(n) * n;
    const std::size_t cells = grid_.cells();
    std::fill(out.begin(), out.end(), 0.0);

    std::vector<double> grad(static_cast<std::size_t>(n));
    std::vector<double> flux(static_cast<std::size_t>(n));
    std::vector<int> coord(static_cast<std::size_t>(d), 0);
    for (std::size_t c = 0; c < cells; ++c) {
        bool any_face = false;
        for (int j = 0; j < d; ++j) {
            const bool face = coord[static_cast<std::size_t>(j)] < grid_.dims[static_cast<std::size_t>(j)] - 1;
            const std::size_t s = strides_[static_cast<std::size_t>(j)];
            for (int i = 0; i < k; ++i) {
                grad[static_cast<std::size_t>(i * d + j)] =
                    face ? (u[(c + s) * k + i] - u[c * k + i]) * inv_h_[static_cast<std::size_t>(j)] : 0.0;
            }
            any_face = any_face || face;
        }
        if (any_face) {
            kernels::apply({face_tensors_.data() + c * block, block}, grad, flux, n);
            for (int j = 0; j < d; ++j) {
                if (coord[static_cast<std::size_t>(j)] >= grid_.dims[static_cast<std::size_t>(j)] - 1) continue;
                const std::size_t s = strides_[static_cast<std::size_t>(j)];
                for (int i = 0; i < k; ++i) {
                    const double f = flux[static_cast<std::size_t>(i * d + j)] * inv_h_[static_cast<std::size_t>(j)];
                    out[c * k + i] += f;
                    out[(c + s) * k + i] -= f;
                }
            }
        }
        for (int j = 0; j < d; ++j) {
            if (++coord[static_cast<std::size_t>(j)] < grid_.dims[static_cast<std::size_t>(j)]) break;
            coord[static_cast<std::size_t>(j)] = 0;
        }
    }
}

ImageField DiffusionOperator::apply(const ImageField& u) const {
    require_same_grid(u.grid, grid_, "diffusion_apply");
    ImageField out(grid_);
    apply(u.values, out.values);
    return out;
}

ImageField diffusion_apply(const Tensor4Field& h, const ImageField& u) {
    require_same_grid(h.grid, u.grid, "diffusion_apply");
    return DiffusionOperator(h).apply(u);
}

double poincare_estimate(const GridSpec& grid) {
    GridSpec scalar = grid;
    scalar.channels = 1;
    scalar.validate();
    const DiffusionOperator laplace(Tensor4Field(scalar, Tensor4::identity(scalar.matrix_shape())));
    const std::size_t n = scalar.cells();

    auto negative_laplacian = [&](std::span<const double> in, std::span<double> out) {
        laplace.apply(in, out);
        for (double& v : out) v = -v;
    };
    auto remove_mean = [](std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        for (double& x : v) x -= mean;
    };
    auto normalize = [](std::vector<double>& v) {
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    };

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(n), y(n), ly(n);
    for (double& v : x) v = dist(rng);
    remove_mean(x);
    normalize(x);

    CgOptions options;
    options.tolerance = 1e-13;
    options.max_iterations = static_cast<int>(20 * n + 100);

    double lambda = 0.0;
    constexpr int kMaxOuter = 500;
    for (int iter = 0; iter < kMaxOuter; ++iter) {
        std::fill(y.begin(), y.end(), 0.0);
        conjugate_gradient(negative_laplacian, x, y, options);
        remove_mean(y);
        normalize(y);
        negative_laplacian(y, ly);
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += y[i] * ly[i];
        x.swap(y);
        if (iter > 0 && std::abs(rayleigh - lambda) <= 1e-13 * rayleigh) return rayleigh;
        lambda = rayleigh;
    }
    throw NumericalError("poincare_estimate: inverse iteration did not converge");
}

}  // namespace relaxdiff

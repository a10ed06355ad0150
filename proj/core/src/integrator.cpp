#include "relaxdiff/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "relaxdiff/error.hpp"
#include "relaxdiff/linear_solver.hpp"

namespace relaxdiff {

namespace {

constexpr double kKappaSlack = 1e-8;

// Smallest cell eigenvalue and the cell it occurs in.
std::pair<double, std::size_t> min_eigenvalue(const Tensor4Field& h) {
    double lowest = std::numeric_limits<double>::infinity();
    std::size_t where = 0;
    for (std::size_t c = 0; c < h.grid.cells(); ++c) {
        const double l = kernels::spectral_bounds(h.at(c), h.order()).lambda_min;
        if (l < lowest) {
            lowest = l;
            where = c;
        }
    }
    return {lowest, where};
}

std::string describe_cell(const GridSpec& g, std::size_t cell) {
    std::string s = "(";
    for (int a = 0; a < g.axes(); ++a) {
        if (a) s += ",";
        s += std::to_string(g.coordinate(cell, a));
    }
    return s + ")";
}

// H <- decay H + (1 - decay) F, in place.
void relax_towards(Tensor4Field& h, const Tensor4Field& target, double decay) {
    const double w = 1.0 - decay;
    for (std::size_t e = 0; e < h.values.size(); ++e) h.values[e] = decay * h.values[e] + w * target.values[e];
}

}  // namespace

void FilterParams::validate(bool need_tau) const {
    if (need_tau && !(tau > 0.0)) throw ParameterError("tau must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be nonnegative");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be nonnegative");
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    if (!(cg_tol > 0.0 && cg_tol <= 1e-2)) throw ParameterError("cg_tol must lie in (0, 1e-2]");
    if (cg_max_iter < 0) throw ParameterError("cg_max_iter must be nonnegative");
    response.validate();
}

int FilterParams::resolved_cg_max_iter(const GridSpec& grid) const {
    if (cg_max_iter > 0) return cg_max_iter;
    return static_cast<int>(10.0 * std::sqrt(static_cast<double>(grid.cells()))) + 200;
}

std::size_t FilterParams::step_count() const {
    if (t_end <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

double kappa_bound(const FilterParams& p, double t) {
    const double decay = std::exp(-t / p.tau);
    return p.alpha * decay + p.response.omega * (1.0 - decay);
}

GradientField response_gradient(const ImageField& u, const FilterParams& p) {
    if (p.sigma == 0.0) return gradient(u);
    return grad_sigma(u, Kernel::make(p.kernel, p.sigma));
}

Tensor4Field response_field(const ImageField& u, const FilterParams& p, const ResponseFn& f) {
    const GradientField d = response_gradient(u, p);
    Tensor4Field out(u.grid);
    const MatrixShape shape = u.grid.matrix_shape();
    for (std::size_t c = 0; c < u.grid.cells(); ++c) f(d.at(c), shape, out.at(c));
    return out;
}

Tensor4Field step_H(const FilterState& state, const FilterParams& p, const ResponseFn& f, double duration) {
    Tensor4Field h = state.H;
    relax_towards(h, response_field(state.u, p, f), std::exp(-duration / p.tau));
    return h;
}

Tensor4Field step_H(const FilterState& state, const FilterParams& p) {
    return step_H(state, p, make_response(p.response), p.dt);
}

ImplicitStep implicit_diffusion_step(const ImageField& u, const Tensor4Field& h, double dt, double cg_tol,
                                     int cg_max_iter) {
    if (!(u.grid == h.grid)) throw DimensionError("implicit step: grid mismatch between u and H");
    const DiffusionOperator diffusion(h);
    auto system = [&](std::span<const double> x, std::span<double> y) {
        diffusion.apply(x, y);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - dt * y[i];
    };
    ImplicitStep step{u, 0, 0.0};
    const CgResult cg = conjugate_gradient(system, u.values, step.u.values, {cg_tol, cg_max_iter});
    step.cg_iters = cg.iterations;
    step.residual = cg.relative_residual;
    if (!cg.converged) {
        throw SolverError("CG did not converge in " + std::to_string(cg.iterations) +
                              " iterations (relative residual " + std::to_string(cg.relative_residual) + ")",
                          cg.relative_residual, cg.iterations);
    }
    return step;
}

ImageField step_u(const FilterState& state, const Tensor4Field& h_next, const FilterParams& p) {
    return implicit_diffusion_step(state.u, h_next, p.dt, p.cg_tol, p.resolved_cg_max_iter(state.u.grid)).u;
}

double energy(const FilterState& state, const FilterParams& p, const ResponseFn& f) {
    const ImageField centred = subtract_channel_mean(state.u);
    const double volume = state.u.grid.cell_volume();
    const Tensor4 rest = response_at_zero(f, state.H.grid.matrix_shape());
    const auto target = rest.flat();
    const std::size_t block = state.H.block();
    double deviation = 0.0;
    for (std::size_t c = 0; c < state.H.grid.cells(); ++c) {
        auto cell = state.H.at(c);
        for (std::size_t e = 0; e < block; ++e) {
            const double diff = cell[e] - target[e];
            deviation += diff * diff;
        }
    }
    return 0.5 * inner(centred, centred) + 0.5 * p.tau * deviation * volume;
}

double energy(const FilterState& state, const FilterParams& p) {
    return energy(state, p, make_response(p.response));
}

TraceRecord make_record(const FilterState& state, const FilterParams& p, const ResponseFn& f, int cg_iters,
                        double min_eig_H) {
    TraceRecord r;
    r.t = state.t;
    r.l2_norm_u = l2_norm(state.u);
    r.mass_per_channel = channel_mass(state.u);
    r.energy = energy(state, p, f);
    r.min_eig_H = min_eig_H;
    r.cg_iters = cg_iters;
    return r;
}

RunResult run(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p, const ResponseFn& f,
              const StepObserver& observer) {
    p.validate();
    u0.grid.validate();
    if (!(u0.grid == h0.grid)) throw DimensionError("run: u0 and H0 live on different grids");
    for (double v : u0.values) {
        if (!std::isfinite(v)) throw ParameterError("run: u0 has non-finite values");
    }
    const auto [lowest0, cell0] = min_eigenvalue(h0);
    if (lowest0 < p.alpha - 1e-10) {
        throw ParameterError("run: H0 has lambda_min " + std::to_string(lowest0) + " < alpha at cell " +
                             describe_cell(h0.grid, cell0));
    }

    RunResult result;
    FilterState& state = result.state;
    state = {0.0, u0, h0, p.alpha};
    result.trace.push_back(make_record(state, p, f, 0, lowest0));
    if (observer) observer(state);

    const std::size_t steps = p.step_count();
    const int max_iter = p.resolved_cg_max_iter(u0.grid);
    const double half_decay = std::exp(-0.5 * p.dt / p.tau);
    for (std::size_t n = 1; n <= steps; ++n) {
        relax_towards(state.H, response_field(state.u, p, f), half_decay);
        ImplicitStep step = implicit_diffusion_step(state.u, state.H, p.dt, p.cg_tol, max_iter);
        state.u = std::move(step.u);
        relax_towards(state.H, response_field(state.u, p, f), half_decay);
        state.t = static_cast<double>(n) * p.dt;
        state.kappa_predicted = kappa_bound(p, state.t);

        const auto [lowest, cell] = min_eigenvalue(state.H);
        if (lowest < state.kappa_predicted - kKappaSlack) {
            throw InvariantError("run: lambda_min(H) = " + std::to_string(lowest) + " below predicted bound " +
                                     std::to_string(state.kappa_predicted) + " at cell " +
                                     describe_cell(state.H.grid, cell) + ", t = " + std::to_string(state.t),
                                 cell, lowest, state.kappa_predicted);
        }
        for (double v : state.u.values) {
            if (!std::isfinite(v)) {
                throw InvariantError("run: u became non-finite at t = " + std::to_string(state.t), 0, lowest,
                                     state.kappa_predicted);
            }
        }
        result.trace.push_back(make_record(state, p, f, step.cg_iters, lowest));
        if (observer) observer(state);
    }
    return result;
}

RunResult run(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p) {
    return run(u0, h0, p, make_response(p.response));
}

double decay_rate_fit(std::span<const TraceRecord> trace) {
    if (trace.size() < 10) throw FitError("decay_rate_fit: need at least 10 records");
    const std::size_t first = trace.size() / 2;
    const std::size_t count = trace.size() - first;
    double mean_t = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = first; i < trace.size(); ++i) {
        if (!(trace[i].energy > 0.0)) throw FitError("decay_rate_fit: nonpositive energy in fit window");
        mean_t += trace[i].t;
        mean_y += std::log(trace[i].energy);
    }
    mean_t /= static_cast<double>(count);
    mean_y /= static_cast<double>(count);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = first; i < trace.size(); ++i) {
        const double dt = trace[i].t - mean_t;
        sxy += dt * (std::log(trace[i].energy) - mean_y);
        sxx += dt * dt;
    }
    if (sxx == 0.0) throw FitError("decay_rate_fit: degenerate time axis");
    return sxy / sxx;
}

double memory_form_check(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p, int steps,
                         const ResponseFn& f) {
    if (steps < 0) throw ParameterError("memory_form_check: steps must be nonnegative");
    if (steps == 0) return 0.0;
    FilterParams q = p;
    q.t_end = steps * p.dt;

    std::vector<Tensor4Field> responses;
    std::vector<Tensor4Field> stepped;
    run(u0, h0, q, f, [&](const FilterState& s) {
        responses.push_back(response_field(s.u, q, f));
        stepped.push_back(s.H);
    });

    // Exponential kernel integrated exactly against linear interpolation on
    // [t_m, t_m+1]: weight w_left on F_m and w_right on F_{m+1}.
    const double a = p.dt / p.tau;
    const double decay = std::exp(-a);
    const double w_left = (1.0 - decay * (1.0 + a)) / a;
    const double w_right = (1.0 - decay) - w_left;

    const std::size_t block = h0.block();
    double worst = 0.0;
    std::vector<double> quad(block);
    for (std::size_t n = 1; n < stepped.size(); ++n) {
        const double t_n = static_cast<double>(n) * p.dt;
        const double initial_weight = std::exp(-t_n / p.tau);
        for (std::size_t c = 0; c < h0.grid.cells(); ++c) {
            auto start = h0.at(c);
            for (std::size_t e = 0; e < block; ++e) quad[e] = initial_weight * start[e];
            for (std::size_t m = 0; m < n; ++m) {
                const double tail = std::exp(-static_cast<double>(n - m - 1) * a);
                auto left = responses[m].at(c);
                auto right = responses[m + 1].at(c);
                for (std::size_t e = 0; e < block; ++e) quad[e] += tail * (w_left * left[e] + w_right * right[e]);
            }
            auto h = stepped[n].at(c);
            double dist = 0.0;
            for (std::size_t e = 0; e < block; ++e) dist += (quad[e] - h[e]) * (quad[e] - h[e]);
            worst = std::max(worst, std::sqrt(dist));
        }
    }
    return worst;
}

double memory_form_check(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p, int steps) {
    return memory_form_check(u0, h0, p, steps, make_response(p.response));
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace) {
    const std::size_t channels = trace.empty() ? 0 : trace.front().mass_per_channel.size();
    out << "t,l2_norm_u";
    for (std::size_t c = 0; c < channels; ++c) out << ",mass_c" << c;
    out << ",energy,min_eig_H,cg_iters\n";
    char buf[64];
    auto real = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (const TraceRecord& r : trace) {
        real(r.t);
        out << ',';
        real(r.l2_norm_u);
        for (double m : r.mass_per_channel) {
            out << ',';
            real(m);
        }
        out << ',';
        real(r.energy);
        out << ',';
        real(r.min_eig_H);
        out << ',' << r.cg_iters << '\n';
    }
}

}  // namespace relaxdiff

#ifndef RELAXDIFF_INTEGRATOR_HPP
#define RELAXDIFF_INTEGRATOR_HPP

// Time integration of the coupled system
//     du/dt = div(H grad u),   tau dH/dt + H = F(grad_sigma u),
// with no-flux boundaries.
//
// One step of size dt is split symmetrically:
//     H <- exact relaxation over dt/2 towards F(D(u_n))
//     u_{n+1} = (I - dt div(H grad .))^{-1} u_n
//     H <- exact relaxation over dt/2 towards F(D(u_{n+1}))
// Each relaxation is a convex combination e^{-h/tau} H + (1 - e^{-h/tau}) F,
// so lambda_min(H_n) >= alpha e^{-t_n/tau} + omega (1 - e^{-t_n/tau}) for any dt.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "relaxdiff/grid.hpp"
#include "relaxdiff/mollifier.hpp"
#include "relaxdiff/response.hpp"

namespace relaxdiff {

struct FilterParams {
    double tau = 1.0;
    double sigma = 1.0;  // 0 selects the unmollified gradient
    KernelKind kernel = KernelKind::Gaussian;
    double dt = 0.25;
    double t_end = 5.0;
    ResponseParams response{};
    double alpha = 0.1;  // lower spectral bound required of H0
    double cg_tol = 1e-10;
    int cg_max_iter = 0;  // 0: 10 sqrt(cells) + 200

    /// Throws ParameterError. `need_tau` is false for the baselines.
    void validate(bool need_tau = true) const;
    int resolved_cg_max_iter(const GridSpec& grid) const;
    std::size_t step_count() const;
};

struct FilterState {
    double t = 0.0;
    ImageField u;
    Tensor4Field H;
    double kappa_predicted = 0.0;
};

struct TraceRecord {
    double t = 0.0;
    double l2_norm_u = 0.0;
    std::vector<double> mass_per_channel;
    double energy = 0.0;
    double min_eig_H = 0.0;
    int cg_iters = 0;
};

struct RunResult {
    FilterState state;
    std::vector<TraceRecord> trace;  // trace[0] is the initial state
};

using StepObserver = std::function<void(const FilterState&)>;

/// alpha e^{-t/tau} + omega (1 - e^{-t/tau}).
double kappa_bound(const FilterParams& p, double t);

/// The gradient fed to the response: grad_sigma u for sigma > 0, else grad u.
GradientField response_gradient(const ImageField& u, const FilterParams& p);

/// F evaluated cell-wise on response_gradient(u).
Tensor4Field response_field(const ImageField& u, const FilterParams& p, const ResponseFn& f);

/// Exact relaxation of H over `duration` with u frozen.
Tensor4Field step_H(const FilterState& state, const FilterParams& p, const ResponseFn& f, double duration);
Tensor4Field step_H(const FilterState& state, const FilterParams& p);

struct ImplicitStep {
    ImageField u;
    int cg_iters = 0;
    double residual = 0.0;
};

/// Solves u+ - dt div(H grad u+) = u by CG. Throws SolverError on
/// non-convergence.
ImplicitStep implicit_diffusion_step(const ImageField& u, const Tensor4Field& h, double dt, double cg_tol,
                                     int cg_max_iter);

ImageField step_u(const FilterState& state, const Tensor4Field& h_next, const FilterParams& p);

/// Integrates until t >= t_end. Throws ParameterError when lambda_min(H0) <
/// alpha and InvariantError when a step leaves the predicted kappa bound.
RunResult run(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p, const ResponseFn& f,
              const StepObserver& observer = {});
RunResult run(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p);

/// 1/2 |u - mean(u)|^2 + tau/2 |H - F(0)|^2, both integrated over the grid.
double energy(const FilterState& state, const FilterParams& p, const ResponseFn& f);
double energy(const FilterState& state, const FilterParams& p);

TraceRecord make_record(const FilterState& state, const FilterParams& p, const ResponseFn& f, int cg_iters,
                        double min_eig_H);

/// Least-squares slope of log E(t) over the second half of the trace.
double decay_rate_fit(std::span<const TraceRecord> trace);

/// Re-integrates H from the stored u trajectory through the memory form
///   H(t) = e^{-t/tau} H0 + (1/tau) int_0^t e^{-(t-s)/tau} F(D(u(s))) ds
/// (exponential weights integrated exactly against the piecewise-linear
/// interpolant of F) and returns the largest cell-wise Frobenius distance
/// to the stepped H over `steps` steps of size p.dt.
double memory_form_check(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p, int steps,
                         const ResponseFn& f);
double memory_form_check(const ImageField& u0, const Tensor4Field& h0, const FilterParams& p, int steps);

/// Header t,l2_norm_u,mass_c0..,energy,min_eig_H,cg_iters and one row per
/// record, reals with 17 significant digits.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace);

}  // namespace relaxdiff

#endif  // RELAXDIFF_INTEGRATOR_HPP

#include "relaxdiff/baselines.hpp"

#include <cmath>
#include <limits>

#include "relaxdiff/error.hpp"

namespace relaxdiff {

BaselineResult run_baseline(const ImageField& u0, const FilterParams& p, BaselineKind kind,
                            const StepObserver& observer) {
    p.validate(false);
    u0.grid.validate();

    FilterParams q = p;
    if (q.tau <= 0.0) q.tau = 0.0;
    if (kind == BaselineKind::CatteRegularized) {
        if (!(p.sigma > 0.0)) throw ParameterError("Catte baseline needs sigma > 0");
    } else {
        q.sigma = 0.0;
        q.response.kind = ResponseKind::PeronaMalikScalar;
    }
    const ResponseFn f = make_response(q.response);
    const int max_iter = q.resolved_cg_max_iter(u0.grid);

    BaselineResult result{u0, {}};
    FilterState state{0.0, u0, response_field(u0, q, f), 0.0};
    auto lowest = [](const Tensor4Field& h) { return field_spectral_bounds(h).lambda_min; };
    result.trace.push_back(make_record(state, q, f, 0, lowest(state.H)));
    if (observer) observer(state);

    const std::size_t steps = q.step_count();
    for (std::size_t n = 1; n <= steps; ++n) {
        state.H = response_field(state.u, q, f);
        ImplicitStep step = implicit_diffusion_step(state.u, state.H, q.dt, q.cg_tol, max_iter);
        state.u = std::move(step.u);
        state.t = static_cast<double>(n) * q.dt;
        for (double v : state.u.values) {
            if (!std::isfinite(v)) throw InvariantError("baseline: u became non-finite", 0, 0.0, 0.0);
        }
        result.trace.push_back(make_record(state, q, f, step.cg_iters, lowest(state.H)));
        if (observer) observer(state);
    }
    result.u = std::move(state.u);
    return result;
}

namespace {

void require_same_times(std::span<const double> ta, std::span<const double> tb) {
    if (ta.size() != tb.size()) throw DimensionError("compare_trajectories: traces have different lengths");
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (std::abs(ta[i] - tb[i]) > 1e-12 * std::max(1.0, std::abs(ta[i]))) {
            throw DimensionError("compare_trajectories: traces use different time grids");
        }
    }
}

}  // namespace

double compare_trajectories(std::span<const TraceRecord> a, std::span<const TraceRecord> b) {
    std::vector<double> ta, tb;
    for (const auto& r : a) ta.push_back(r.t);
    for (const auto& r : b) tb.push_back(r.t);
    require_same_times(ta, tb);
    double sum = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        const double diff = a[i].l2_norm_u - b[i].l2_norm_u;
        sum += (ta[i] - ta[i - 1]) * diff * diff;
    }
    return std::sqrt(sum);
}

double compare_field_trajectories(std::span<const ImageField> a, std::span<const ImageField> b,
                                  std::span<const double> times) {
    if (a.size() != b.size() || a.size() != times.size()) {
        throw DimensionError("compare_field_trajectories: mismatched lengths");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        ImageField diff = a[i];
        if (!(diff.grid == b[i].grid)) throw DimensionError("compare_field_trajectories: grid mismatch");
        for (std::size_t e = 0; e < diff.values.size(); ++e) diff.values[e] -= b[i].values[e];
        sum += (times[i] - times[i - 1]) * inner(diff, diff);
    }
    return std::sqrt(sum);
}

}  // namespace relaxdiff

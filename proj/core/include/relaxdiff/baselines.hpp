#ifndef RELAXDIFF_BASELINES_HPP
#define RELAXDIFF_BASELINES_HPP

#include <span>
#include <vector>

#include "relaxdiff/integrator.hpp"

namespace relaxdiff {

enum class BaselineKind {
    /// H = F(grad_sigma u) at every step: the tau -> 0 limit. Needs sigma > 0.
    CatteRegularized,
    /// H = g(|grad u|) Id with the Perona-Malik g. Ill-posed as a PDE; kept
    /// for demonstration with small dt and no stability guarantee.
    PeronaMalik,
};

struct BaselineResult {
    ImageField u;
    std::vector<TraceRecord> trace;  // trace[0] is the initial state
};

/// Same implicit u update as the relaxation filter, with H recomputed from u
/// at the start of every step. tau only enters the energy column.
BaselineResult run_baseline(const ImageField& u0, const FilterParams& p, BaselineKind kind,
                            const StepObserver& observer = {});

/// Discrete L2-in-time distance of the l2_norm_u columns,
///   sqrt(sum_{n>=1} (t_n - t_{n-1}) (a_n - b_n)^2).
/// Throws DimensionError unless both traces share the same time grid.
double compare_trajectories(std::span<const TraceRecord> a, std::span<const TraceRecord> b);

/// Same weighting applied to full-field distances |u_a(t_n) - u_b(t_n)|.
double compare_field_trajectories(std::span<const ImageField> a, std::span<const ImageField> b,
                                  std::span<const double> times);

}  // namespace relaxdiff

#endif  // RELAXDIFF_BASELINES_HPP

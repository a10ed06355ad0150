#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "relaxdiff/baselines.hpp"
#include "relaxdiff/error.hpp"

namespace relaxdiff {
namespace {

FilterParams baseline_params() {
    FilterParams p;
    p.sigma = 1.0;
    p.dt = 0.1;
    p.t_end = 1.0;
    p.response.s = 0.1;
    p.response.lambda = 0.2;
    return p;
}

std::vector<TraceRecord> ramp_trace(int n, double dt, double offset) {
    std::vector<TraceRecord> trace(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        trace[i].t = i * dt;
        trace[i].l2_norm_u = 1.0 + 0.1 * i + (i > 0 ? offset : 0.0);
    }
    return trace;
}

TEST(Baseline, ConstantImageIsStationary) {
    const GridSpec g({8, 8}, 3);
    ImageField u0(g);
    for (double& v : u0.values) v = -0.2;
    for (BaselineKind kind : {BaselineKind::CatteRegularized, BaselineKind::PeronaMalik}) {
        const BaselineResult r = run_baseline(u0, baseline_params(), kind);
        EXPECT_EQ(r.u.values, u0.values);
        EXPECT_EQ(r.trace.size(), 11u);
    }
}

TEST(Baseline, ConservesMassAndShrinksMeanFreeNorm) {
    const GridSpec g({16, 12}, 3);
    const ImageField u0 = testing::random_field(g, 3, 0.5);
    const auto mass0 = channel_mass(u0);
    for (BaselineKind kind : {BaselineKind::CatteRegularized, BaselineKind::PeronaMalik}) {
        double previous = l2_norm_mean_free(u0);
        run_baseline(u0, baseline_params(), kind, [&](const FilterState& s) {
            const auto mass = channel_mass(s.u);
            for (int ch = 0; ch < 3; ++ch) EXPECT_NEAR(mass[ch], mass0[ch], 1e-10);
            const double norm = l2_norm_mean_free(s.u);
            EXPECT_LE(norm, previous * (1.0 + 1e-12));
            previous = norm;
        });
    }
}

TEST(Baseline, CatteNeedsPositiveSigma) {
    const GridSpec g({4, 4}, 1);
    FilterParams p = baseline_params();
    p.sigma = 0.0;
    EXPECT_THROW(run_baseline(ImageField(g), p, BaselineKind::CatteRegularized), ParameterError);
    EXPECT_NO_THROW(run_baseline(ImageField(g), p, BaselineKind::PeronaMalik));
}

TEST(Baseline, IgnoresTauForTheUpdate) {
    const GridSpec g({10, 10}, 3);
    const ImageField u0 = testing::random_field(g, 4);
    FilterParams a = baseline_params();
    FilterParams b = a;
    b.tau = 0.0;
    EXPECT_EQ(run_baseline(u0, a, BaselineKind::CatteRegularized).u.values,
              run_baseline(u0, b, BaselineKind::CatteRegularized).u.values);
}

TEST(CompareTrajectories, Examples) {
    const auto a = ramp_trace(20, 0.05, 0.0);
    EXPECT_EQ(compare_trajectories(a, a), 0.0);
    const auto b = ramp_trace(20, 0.05, 0.3);
    EXPECT_NEAR(compare_trajectories(a, b), 0.3 * std::sqrt(20 * 0.05), 1e-14);
    EXPECT_EQ(compare_trajectories(a, b), compare_trajectories(b, a));
}

TEST(CompareTrajectories, RejectsMismatchedGrids) {
    const auto a = ramp_trace(20, 0.05, 0.0);
    EXPECT_THROW(compare_trajectories(a, ramp_trace(21, 0.05, 0.0)), DimensionError);
    EXPECT_THROW(compare_trajectories(a, ramp_trace(20, 0.06, 0.0)), DimensionError);
}

TEST(CompareFieldTrajectories, ConstantOffset) {
    const GridSpec g({4, 4}, 1);
    ImageField zero(g);
    ImageField one(g);
    for (double& v : one.values) v = 1.0;
    const std::vector<ImageField> a{zero, zero, zero};
    const std::vector<ImageField> b{zero, one, one};
    const std::vector<double> t{0.0, 0.5, 1.0};
    EXPECT_NEAR(compare_field_trajectories(a, b, t), std::sqrt(16.0), 1e-14);
    EXPECT_THROW(compare_field_trajectories(a, b, std::vector<double>{0.0, 1.0}), DimensionError);
}

}  // namespace
}  // namespace relaxdiff

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "relaxdiff/error.hpp"
#include "relaxdiff/initialization.hpp"

namespace relaxdiff {
namespace {

TEST(Rescale, MapsRangeOntoUnitInterval) {
    const GridSpec g({3}, 1);
    const ImageField raw(g, {0.0, 0.5, 1.0});
    const ImageField scaled = rescale(raw, 0.0, 1.0);
    EXPECT_EQ(scaled.values, (std::vector<double>{-1.0, 0.0, 1.0}));
    const ImageField back = unrescale(scaled, 0.0, 1.0);
    EXPECT_EQ(back.values, raw.values);
    EXPECT_EQ(rescale(ImageField(g, {0.0, 127.5, 255.0}), 0.0, 255.0).values, scaled.values);
}

TEST(Rescale, RejectsOutOfRangeAndDegenerateRange) {
    const GridSpec g({2}, 1);
    EXPECT_THROW(rescale(ImageField(g, {0.0, 1.2}), 0.0, 1.0), RangeError);
    EXPECT_THROW(rescale(ImageField(g, {-0.1, 0.5}), 0.0, 1.0), RangeError);
    EXPECT_THROW(rescale(ImageField(g, {0.5, 0.5}), 1.0, 1.0), ParameterError);
}

TEST(AddNoise, ZeroStdIsIdentity) {
    const GridSpec g({8, 8}, 3);
    const ImageField u = testing::random_field(g, 1);
    EXPECT_EQ(add_noise(u, {NoiseKind::GaussianIID, 0.0, 42}).values, u.values);
}

TEST(AddNoise, DeterministicForSeedAndLinearInStd) {
    const GridSpec g({16, 16}, 3);
    const ImageField zero(g);
    const ImageField a = add_noise(zero, {NoiseKind::GaussianIID, 0.1, 7});
    const ImageField b = add_noise(zero, {NoiseKind::GaussianIID, 0.1, 7});
    const ImageField c = add_noise(zero, {NoiseKind::GaussianIID, 0.3, 7});
    const ImageField other = add_noise(zero, {NoiseKind::GaussianIID, 0.1, 8});
    EXPECT_EQ(a.values, b.values);
    EXPECT_NE(a.values, other.values);
    for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(c.values[i], 3.0 * a.values[i], 1e-15);
}

TEST(AddNoise, SampleStatistics) {
    const GridSpec g({128, 128}, 3);
    const ImageField n = add_noise(ImageField(g), {NoiseKind::GaussianIID, 0.1, 2024});
    double mean = 0.0;
    for (double v : n.values) mean += v;
    mean /= static_cast<double>(n.values.size());
    double var = 0.0;
    for (double v : n.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n.values.size() - 1);
    EXPECT_LE(std::abs(mean), 0.002);
    EXPECT_GE(std::sqrt(var), 0.097);
    EXPECT_LE(std::sqrt(var), 0.103);
}

TEST(AddNoise, RejectsNegativeStd) {
    const GridSpec g({4, 4}, 1);
    EXPECT_THROW(add_noise(ImageField(g), {NoiseKind::GaussianIID, -0.1, 1}), ParameterError);
}

TEST(InitH0, AffineImageGivesAlphaIdentityAwayFromFarEdges) {
    const GridSpec g({12, 10}, 3);
    ImageField u(g);
    for (std::size_t c = 0; c < g.cells(); ++c)
        for (int ch = 0; ch < 3; ++ch) u(c, ch) = 0.1 * ch + 0.05 * g.coordinate(c, 0) - 0.02 * g.coordinate(c, 1);
    const Tensor4Field h = init_H0(u, 5, 0.1);
    const Tensor4 expected = Tensor4::identity(g.matrix_shape(), 0.1);
    for (std::size_t c = 0; c < g.cells(); ++c) {
        if (g.coordinate(c, 0) + 2 >= 11 || g.coordinate(c, 1) + 2 >= 9) continue;
        const Tensor4 got = h.tensor(c);
        for (std::size_t e = 0; e < got.flat().size(); ++e) EXPECT_NEAR(got.flat()[e], expected.flat()[e], 1e-15);
    }
}

TEST(InitH0, SpectralFloorAndSymmetry) {
    const GridSpec g({10, 9}, 3);
    const Tensor4Field h = init_H0(testing::random_field(g, 3), 3, 0.25);
    const SpectralBound b = field_spectral_bounds(h);
    EXPECT_GE(b.lambda_min, 0.25 - 1e-12);
    for (std::size_t c = 0; c < g.cells(); ++c) EXPECT_LE(symmetry_defect(h.tensor(c)), 1e-15);
}

TEST(InitH0, MatchesBruteCovarianceOnAlternatingSignal) {
    const GridSpec g({9}, 1);
    ImageField u(g);
    for (std::size_t c = 0; c < g.cells(); ++c) u(c, 0) = c % 2 == 0 ? 1.0 : -1.0;
    const Tensor4Field h = init_H0(u, 3, 0.1);
    std::vector<double> slope(9);
    for (int x = 0; x < 9; ++x) slope[x] = x == 8 ? 0.0 : u(x + 1, 0) - u(x, 0);
    for (int x = 0; x < 9; ++x) {
        std::vector<std::vector<double>> samples;
        for (int y = std::max(0, x - 1); y <= std::min(8, x + 1); ++y) samples.push_back({slope[y]});
        const double expected = testing::brute_covariance(samples)[0] + 0.1;
        EXPECT_NEAR(h.tensor(x).at(0, 0), expected, 1e-14) << x;
    }
    // Slopes +2, -2, +2 around x = 4: sample variance 16/3.
    EXPECT_NEAR(h.tensor(4).at(0, 0), 16.0 / 3.0 + 0.1, 1e-14);
}

TEST(InitH0, MatchesBruteCovarianceOnRandomColourImage) {
    const GridSpec g({7, 6}, 2);
    const ImageField u = testing::random_field(g, 4);
    const Tensor4Field h = init_H0(u, 3, 0.05);
    const GradientField d = gradient(u);
    for (std::size_t c : {std::size_t{0}, std::size_t{15}, std::size_t{41}}) {
        std::vector<std::vector<double>> samples;
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 7; ++x) {
                if (std::abs(x - g.coordinate(c, 0)) > 1 || std::abs(y - g.coordinate(c, 1)) > 1) continue;
                auto v = d.at(static_cast<std::size_t>(x + 7 * y));
                samples.emplace_back(v.begin(), v.end());
            }
        auto cov = testing::brute_covariance(samples);
        for (int a = 0; a < 4; ++a) cov[a * 4 + a] += 0.05;
        const Tensor4 got = h.tensor(c);
        for (std::size_t e = 0; e < cov.size(); ++e) EXPECT_NEAR(got.flat()[e], cov[e], 1e-13);
    }
}

TEST(InitH0, InvariantUnderIntensityShift) {
    const GridSpec g({8, 8}, 3);
    const ImageField u = testing::random_field(g, 5);
    ImageField shifted = u;
    for (double& v : shifted.values) v += 0.375;
    const Tensor4Field a = init_H0(u, 5, 0.1);
    const Tensor4Field b = init_H0(shifted, 5, 0.1);
    for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-13);
}

TEST(InitH0, TranslationCovariantInTheInterior) {
    const GridSpec g({20, 20}, 1);
    const ImageField u = testing::random_field(g, 6);
    ImageField moved(g);
    for (std::size_t c = 0; c < g.cells(); ++c) {
        const int x = g.coordinate(c, 0);
        if (x + 2 < 20) moved(c + 2, 0) = u(c, 0);
    }
    const Tensor4Field a = init_H0(u, 3, 0.1);
    const Tensor4Field b = init_H0(moved, 3, 0.1);
    for (std::size_t c = 0; c < g.cells(); ++c) {
        const int x = g.coordinate(c, 0);
        const int y = g.coordinate(c, 1);
        if (x < 2 || x + 4 >= 20 || y == 0 || y + 2 >= 20) continue;
        const Tensor4 ta = a.tensor(c);
        const Tensor4 tb = b.tensor(c + 2);
        for (std::size_t e = 0; e < ta.flat().size(); ++e) EXPECT_NEAR(ta.flat()[e], tb.flat()[e], 1e-13);
    }
}

TEST(InitH0, WindowValidation) {
    const GridSpec g({6, 6}, 1);
    const ImageField u = testing::random_field(g, 7);
    EXPECT_THROW(init_H0(u, 4, 0.1), ParameterError);
    EXPECT_THROW(init_H0(u, 1, 0.1), ParameterError);
    EXPECT_THROW(init_H0(u, 7, 0.1), ParameterError);
    EXPECT_THROW(init_H0(u, 3, 0.0), ParameterError);
    EXPECT_NO_THROW(init_H0(u, 5, 0.1));
}

}  // namespace
}  // namespace relaxdiff

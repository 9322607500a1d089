#include "qchd/curves.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "qchd/errors.h"
#include "qchd/random.h"

namespace qchd {
namespace {

DivergenceProfile random_profile(std::uint64_t seed) {
    Rng rng = derived_rng(seed, 0);
    std::vector<SpectralPair> letters;
    for (int k = 0; k < 2; ++k) {
        letters.emplace_back(random_density_matrix(2, rng), random_density_matrix(2, rng));
    }
    return DivergenceProfile(letters);
}

TEST(uniform_grid, shapes) {
    auto one = uniform_grid(2.0, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], 0.0);
    auto g = uniform_grid(2.0, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 2.0);
    EXPECT_NEAR(g[1], 0.5, 1e-15);
    EXPECT_THROW(uniform_grid(INFINITY, 5), ParameterOutOfRange);
}

TEST(emit_hoeffding_curve, endpoints_and_pointwise_values) {
    DivergenceProfile profile = random_profile(1);
    const double d = profile.stein().value;
    auto rs = uniform_grid(d, 50);
    auto curve = emit_hoeffding_curve(profile, rs);
    ASSERT_EQ(curve.samples.size(), 50u);
    EXPECT_NEAR(curve.samples.front().B, profile.reverse_stein().value, 1e-9);
    EXPECT_NEAR(curve.samples.back().B, 0.0, 1e-9);
    for (std::size_t i = 0; i < rs.size(); i += 7) {
        EXPECT_EQ(curve.samples[i].B, hoeffding_B(profile, rs[i]).value);
    }
    auto check = check_hoeffding_curve(curve);
    EXPECT_TRUE(check.ok());
    EXPECT_TRUE(check.problems.empty());
}

TEST(emit_hoeffding_curve, single_point) {
    DivergenceProfile profile = random_profile(2);
    auto rs = uniform_grid(profile.stein().value, 1);
    auto curve = emit_hoeffding_curve(profile, rs);
    ASSERT_EQ(curve.samples.size(), 1u);
    EXPECT_EQ(curve.samples[0].B, hoeffding_B(profile, 0.0).value);
}

TEST(emit_hoeffding_curve, deterministic) {
    DivergenceProfile profile = random_profile(3);
    auto rs = uniform_grid(profile.stein().value, 20);
    std::ostringstream a, b;
    write_csv(a, emit_hoeffding_curve(profile, rs));
    write_csv(b, emit_hoeffding_curve(profile, rs));
    EXPECT_EQ(a.str(), b.str());
}

TEST(check_hoeffding_curve, flags_bad_shapes) {
    ExponentCurve rising{{{0.0, 1.0, 0.1}, {0.5, 1.2, 0.2}, {1.0, 0.0, 0.3}}};
    auto c1 = check_hoeffding_curve(rising);
    EXPECT_FALSE(c1.nonincreasing);
    EXPECT_FALSE(c1.ok());

    ExponentCurve concave{{{0.0, 1.0, 0.1}, {0.5, 0.9, 0.2}, {1.0, 0.0, 0.3}}};
    auto c2 = check_hoeffding_curve(concave);
    EXPECT_TRUE(c2.nonincreasing);
    EXPECT_FALSE(c2.convex);

    ExponentCurve alpha_back{{{0.0, 1.0, 0.5}, {0.5, 0.4, 0.2}, {1.0, 0.0, 0.9}}};
    EXPECT_FALSE(check_hoeffding_curve(alpha_back).alpha_nondecreasing);
}

TEST(chernoff_band_grid, spans_the_band) {
    DivergenceProfile profile = random_profile(4);
    auto ab = chernoff_band_grid(profile, 11);
    ASSERT_EQ(ab.size(), 11u);
    EXPECT_NEAR(ab.front().first, -profile.stein().value, 1e-12);
    EXPECT_NEAR(ab.back().first, profile.reverse_stein().value, 1e-12);
    auto curve = emit_chernoff_curve(profile, ab);
    // C(-D, 0) = D and C(D_rev, 0) = 0 at the two edges.
    EXPECT_NEAR(curve.samples.front().C, profile.stein().value, 1e-9);
    EXPECT_NEAR(curve.samples.back().C, 0.0, 1e-9);

    SpectralPair orthogonal(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1));
    EXPECT_THROW(chernoff_band_grid(DivergenceProfile({orthogonal}), 5), ParameterOutOfRange);
}

TEST(write_csv, headers_and_rows) {
    ExponentCurve curve{{{0.0, INFINITY, 0.0}, {0.25, 0.5, 0.75}}};
    std::ostringstream out;
    write_csv(out, curve);
    EXPECT_EQ(out.str(), "r,B,alpha_star\n0,inf,0\n0.25,0.5,0.75\n");

    ChernoffCurve c{{{-0.5, 0.0, 0.5, 1.0}}};
    std::ostringstream out2;
    write_csv(out2, c);
    EXPECT_EQ(out2.str(), "a,b,C,alpha_star\n-0.5,0,0.5,1\n");
}

}  // namespace
}  // namespace qchd

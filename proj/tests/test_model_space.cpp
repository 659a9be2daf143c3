#include <gtest/gtest.h>

#include "polyclark/model_space.hpp"
#include "polyclark/clark.hpp"
#include "polyclark/panels.hpp"

using namespace polyclark;

namespace {
const QuadratureSpec q = quadrature(256);
}

TEST(TAlpha, Examples) {
  // product, w = (1/2, 1/2), alpha = -1: (1 + 1/4) * C(xi, w); at xi = (1, 1) that is 5/4 * 4 = 5.
  const auto t = t_alpha_apply(catalog("product"), -1.0, DiscPoint{0.5, 0.5});
  EXPECT_NEAR(std::abs(t(std::vector<Complex>{1.0, 1.0}) - 5.0), 0.0, 1e-14);
  // coordinate, w = (1/2, 0), alpha = 1: (1 - 1/2) * 1/(1 - 1/2) * 1 = 1 at xi = (1, 1).
  const auto t1 = t_alpha_apply(catalog("coordinate"), 1.0, DiscPoint{0.5, 0.0});
  EXPECT_NEAR(std::abs(t1(std::vector<Complex>{1.0, 1.0}) - 1.0), 0.0, 1e-14);
  // rational_example at w = 0: phi(0) = 0, so the image is C(xi, 0) = 1.
  const auto t0 = t_alpha_apply(catalog("rational_example"), from_turns(0.2), DiscPoint::origin(2));
  EXPECT_NEAR(std::abs(t0(std::vector<Complex>{Complex(0, 1), -1.0}) - 1.0), 0.0, 1e-14);
}

TEST(CauchyDouble, ClosedFormExamples) {
  // coordinate, alpha = 1, z = w = (1/2, 0): (1 - 1/4) / (1/4) * 1 / (3/4) = 4; times C(z, w) gives 4.
  EXPECT_NEAR(std::abs(cauchy_double_closed_form(catalog("coordinate"), 1.0, DiscPoint{0.5, 0.0}, DiscPoint{0.5, 0.0}) -
                       4.0),
              0.0, 1e-14);
  const DiscPoint z{0.3, Complex(0, 0.2)};
  const DiscPoint w{Complex(0.1, -0.2), 0.4};
  const Complex oracle(0.980385896355685415945557108786, 0.141885495764101637893889171363);
  const Complex alpha(0.0, 1.0);
  EXPECT_NEAR(std::abs(cauchy_double_closed_form(catalog("rational_example"), alpha, z, w) - oracle), 0.0, 1e-14);
  EXPECT_LT(verify_cauchy_double(catalog("rational_example"), alpha, z, w, q), 1e-10);
}

TEST(CauchyDouble, SeededPanels) {
  const auto pairs = random_disc_pairs(2, 25, 0.9, 7);
  for (const char* name : {"coordinate", "product", "rational_example"}) {
    const auto s = construct_clark(catalog(name), from_turns(0.6), q);
    EXPECT_LT(verify_cauchy_double(s.measure, catalog(name), s.alpha, pairs, q), 1e-6) << name;
  }
}

TEST(CauchyTransformIdentity, Examples) {
  // coordinate, alpha = 1, z = (1/2, 0): 1 / (1 - 1/2) + 0 = 2. At alpha = -1: 1 / (3/2) = 2/3.
  EXPECT_NEAR(std::abs(cauchy_transform_closed_form(catalog("coordinate"), 1.0, DiscPoint{0.5, 0.0}) - 2.0), 0.0, 1e-15);
  EXPECT_LT(verify_cauchy_transform(catalog("coordinate"), -1.0, DiscPoint{0.5, 0.0}, q), 1e-12);
  // product, alpha = -1, z = (1/2, 1/2): 1 / (1 + 1/4) = 4/5. The 4/3 below is alpha = 1.
  EXPECT_NEAR(std::abs(cauchy_transform_closed_form(catalog("product"), 1.0, DiscPoint{0.5, 0.5}) - 4.0 / 3.0), 0.0,
              1e-15);
  EXPECT_LT(verify_cauchy_transform(catalog("product"), -1.0, DiscPoint{0.5, 0.5}, q), 1e-12);
}

TEST(CauchyTransformIdentity, NonInnerMap) {
  EXPECT_LT(verify_cauchy_transform(catalog("halfsum"), 1.0, DiscPoint{0.3, Complex(0, 0.2)}, q), 1e-6);
}

TEST(CauchyTransformIdentity, DoubleAtOriginIsTransform) {
  // With w = 0 the double identity reduces to the single one when phi(0) = 0.
  const auto phi = catalog("rational_example");
  const DiscPoint z{Complex(0.2, 0.1), -0.35};
  const Complex alpha = from_turns(0.45);
  EXPECT_NEAR(std::abs(cauchy_double_closed_form(phi, alpha, z, DiscPoint::origin(2)) -
                       cauchy_transform_closed_form(phi, alpha, z)),
              0.0, 1e-14);
}

TEST(Isometry, GramMatchesKernel) {
  const auto panel = random_disc_points(2, 5, 0.9, 3);
  for (const char* name : {"product", "rational_example"}) {
    const auto r = isometry_gram_residual(catalog(name), from_turns(0.0625), panel, q);
    EXPECT_LT(r.max_residual, 1e-6) << name;
    EXPECT_GT(r.min_eigenvalue, -1e-10) << name;
  }
}

TEST(Annihilation, InnerPowersAreOrthogonal) {
  const auto panel = random_disc_points(2, 4, 0.8, 11);
  for (int k : {1, 2, -1}) {
    EXPECT_LT(annihilation_check(catalog("rational_example"), k, panel[0], panel[1], q), 1e-6) << k;
    EXPECT_LT(annihilation_check(catalog("product"), k, panel[2], panel[3], q), 1e-10) << k;
  }
  EXPECT_THROW(annihilation_check(catalog("product"), 0, panel[0], panel[1], q), InvalidArgument);
  EXPECT_THROW(annihilation_check(catalog("rational_example"), 40, panel[0], panel[1], quadrature(64)),
               ResolutionError);
}

TEST(Unitarity, CoordinateSpanMissesSecondVariable) {
  // sigma = delta_alpha x m: conj(zeta2) is orthogonal to every analytic polynomial.
  const Target t{"conj(z2)", [](std::span<const Complex> z) { return std::conj(z[1]); }};
  const auto r = unitarity_residual_scan(catalog("coordinate"), from_turns(0.3), t, 6, q);
  for (const auto& row : r.rows) EXPECT_NEAR(row.residual, 1.0, 1e-10);
  EXPECT_EQ(r.verdict, "obstruction found");
}

TEST(Unitarity, ProductTargetIsInSpan) {
  // On the graph eta = alpha conj(xi), conj(zeta1) = conj(alpha) zeta2.
  const Target t{"conj(z1)", [](std::span<const Complex> z) { return std::conj(z[0]); }};
  const auto r = unitarity_residual_scan(catalog("product"), from_turns(0.3), t, 3, q);
  EXPECT_GT(r.rows[0].residual, 0.5);
  EXPECT_LT(r.rows[1].residual, 1e-10);
  EXPECT_TRUE(r.monotone);
  EXPECT_EQ(r.verdict, "density-consistent");
}

TEST(Unitarity, Verdicts) {
  EXPECT_EQ(unitarity_verdict({}), "inconclusive");
  EXPECT_EQ(unitarity_verdict({{0, 0.5, 1.0}, {1, 1e-5, 1.0}}), "density-consistent");
  EXPECT_EQ(unitarity_verdict({{0, 0.5, 1}, {1, 0.4, 1}, {2, 0.3, 1}, {3, 0.2, 1}}), "obstruction found");
  EXPECT_EQ(unitarity_verdict({{0, 0.5, 1}, {1, 1e-3, 1}}), "inconclusive");
}

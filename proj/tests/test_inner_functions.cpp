#include <gtest/gtest.h>

#include "polyclark/inner_functions.hpp"
#include "polyclark/panels.hpp"

using namespace polyclark;

TEST(Catalog, Representations) {
  const auto c = catalog("coordinate");
  EXPECT_EQ(c.numerator().coefficient(std::vector<int>{1, 0}), Complex(1.0));
  EXPECT_EQ(c.denominator().coefficient(std::vector<int>{0, 0}), Complex(1.0));
  EXPECT_TRUE(c.depends_on(0));
  EXPECT_FALSE(c.depends_on(1));
  EXPECT_THROW(catalog("blaschke"), InvalidArgument);
}

TEST(Catalog, Evaluation) {
  const auto rat = catalog("rational_example");
  EXPECT_EQ(rat.eval(DiscPoint::origin(2)), Complex(0.0));
  EXPECT_NEAR(std::abs(rat.eval(DiscPoint{0.5, 0.5}) - 0.5), 0.0, 1e-15);
  for (double r : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(std::abs(catalog("product").eval(DiscPoint{r, r}) - r * r), 0.0, 1e-15);
  }
  const auto half = catalog("halfsum");
  EXPECT_NEAR(std::abs(half.boundary_value(std::vector<Complex>{1.0, 1.0}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(half.boundary_value(std::vector<Complex>{1.0, -1.0})), 0.0, 1e-15);
  // sympy value at (0.3 + 0.1i, -0.2 + 0.4i)
  const DiscPoint pt{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  EXPECT_NEAR(std::abs(rat.eval(pt) - Complex(0.030042918454935622318, 0.32618025751072961373)), 0.0, 1e-15);
}

TEST(Catalog, SelfMapsStayInsideTheDisc) {
  for (const auto& name : catalog_names()) {
    const auto phi = catalog(name);
    for (const auto& z : random_disc_points(2, 200, 1.0 - 1e-3, 17)) EXPECT_LE(std::abs(phi.eval(z)), 1.0 - 1e-15);
  }
}

TEST(Eval, PoleIsReported) {
  const RationalMap m(Polynomial::constant(1, 1.0), Polynomial::univariate({-0.5, 1.0}));
  EXPECT_THROW(m.eval(DiscPoint{0.5}), PoleError);
}

TEST(DiagSlice, Examples) {
  const TorusPoint zeta{from_turns(0.1), from_turns(0.35)};
  const auto s = diag_slice(catalog("product"), zeta);
  for (double t : {0.2, 0.7}) {
    const Complex lam = 0.6 * from_turns(t);
    EXPECT_NEAR(std::abs(s(lam) - lam * lam * zeta[0] * zeta[1]), 0.0, 1e-15);
  }
  const auto r = diag_slice(catalog("rational_example"), TorusPoint{1.0, 1.0});
  for (Complex lam : {Complex(0.3, 0.1), Complex(-0.5, 0.2)}) EXPECT_NEAR(std::abs(r(lam) - lam), 0.0, 1e-15);
}

TEST(DiagSlice, CompositionConsistency) {
  const auto rat = catalog("rational_example");
  PanelRng rng(21);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint zeta{from_turns(rng.uniform()), from_turns(rng.uniform())};
    const Complex lam = 0.95 * std::sqrt(rng.uniform()) * from_turns(rng.uniform());
    const auto s = diag_slice(rat, zeta);
    EXPECT_NEAR(std::abs(s(lam) - rat(std::vector<Complex>{lam * zeta[0], lam * zeta[1]})), 0.0, 1e-12);
  }
}

TEST(VerticalSlice, Examples) {
  const Complex xi = from_turns(0.3);
  const auto p = vertical_slice(catalog("product"), 0, xi);
  EXPECT_NEAR(std::abs(p(Complex(0.4, 0.1)) - xi * Complex(0.4, 0.1)), 0.0, 1e-15);
  const auto r = vertical_slice(catalog("rational_example"), 0, -1.0);
  for (Complex l : {Complex(0.0), Complex(0.3, -0.4), Complex(0.9)}) EXPECT_NEAR(std::abs(r(l) + 1.0), 0.0, 1e-15);
  const auto c = vertical_slice(catalog("coordinate"), 0, xi);
  EXPECT_FALSE(c.depends_on(0));
  EXPECT_NEAR(std::abs(c(Complex(0.2)) - xi), 0.0, 1e-15);
}

TEST(VerticalSlice, IdenticallyVanishingDenominator) {
  // (z1 z2) / (z1 + 1): freezing z1 = -1 leaves a zero denominator.
  const RationalMap m(Polynomial({1, 1}, {0.0, 0.0, 0.0, 1.0}), Polynomial({1, 0}, {1.0, 1.0}));
  EXPECT_THROW(vertical_slice(m, 0, -1.0), PoleError);
}

TEST(PartialDerivative, Examples) {
  const Complex xi = from_turns(0.2);
  const Complex eta = from_turns(0.7);
  EXPECT_NEAR(std::abs(partial_derivative(catalog("product"), 1, std::vector<Complex>{xi, eta}) - xi), 0.0, 1e-15);
  EXPECT_EQ(partial_derivative(catalog("coordinate"), 1, std::vector<Complex>{xi, eta}), Complex(0.0));
  const std::vector<Complex> pt{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  // sympy: 2 (z1 + 1)^2 / (z1 + z2 + 2)^2 at pt
  EXPECT_NEAR(std::abs(partial_derivative(catalog("rational_example"), 1, pt) -
                       Complex(0.69395273443975759362, -0.22531267844314686216)),
              0.0, 1e-15);
}

TEST(PartialDerivative, MatchesFiniteDifferences) {
  const auto rat = catalog("rational_example");
  const double h = 1e-6;
  for (const auto& z : random_disc_points(2, 100, 0.95, 8)) {
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<Complex> a(z.coords().begin(), z.coords().end());
      std::vector<Complex> b = a;
      a[j] += h;
      b[j] -= h;
      const Complex fd = (rat(a) - rat(b)) / (2.0 * h);
      const Complex d = partial_derivative(rat, j, z.coords());
      EXPECT_LE(std::abs(fd - d), 1e-6 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST(InnerCertificate, Examples) {
  const auto prod = inner_certificate(catalog("product"), 64, 1e-10);
  EXPECT_LT(prod.max_boundary_deviation, 1e-12);
  EXPECT_TRUE(prod.passed);
  const auto rat = inner_certificate(catalog("rational_example"), 64, 1e-10);
  EXPECT_LT(rat.max_boundary_deviation, 1e-10);
  EXPECT_TRUE(rat.passed);
  EXPECT_GT(rat.pole_samples, 0);  // (-1, -1) lies on the grid
  const auto half = inner_certificate(catalog("halfsum"), 64, 1e-10);
  EXPECT_GE(half.max_boundary_deviation, 0.49);
  EXPECT_FALSE(half.passed);
  EXPECT_THROW(inner_certificate(catalog("product"), 8, 1e-10), InvalidArgument);
}

TEST(InnerFunctions, RationalExampleHasUnimodularBoundaryValues) {
  const auto rat = catalog("rational_example");
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      const std::vector<Complex> zeta{from_turns((a + 0.5) / 256.0), from_turns((b + 0.5) / 256.0)};
      EXPECT_NEAR(std::abs(rat(zeta) * std::conj(zeta[0] * zeta[1])), 1.0, 1e-10);
    }
  }
}

TEST(RationalMap, RejectsExcessiveDegree) {
  EXPECT_THROW(RationalMap(Polynomial::univariate(std::vector<Complex>(10, 1.0)), Polynomial::constant(1, 1.0)),
               InvalidArgument);
}

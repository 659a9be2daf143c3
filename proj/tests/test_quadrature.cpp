#include <gtest/gtest.h>

#include "polyclark/quadrature.hpp"
#include "polyclark/roots.hpp"

using namespace polyclark;

TEST(Quadrature, ExactForLowDegreeCharacters) {
  QuadratureSpec q;
  q.nodes_per_dim = 64;
  for (int a = -31; a <= 31; a += 5) {
    for (int b = -31; b <= 31; b += 7) {
      const auto v = lebesgue_integrate(
          2, 1,
          [&](std::span<const Complex> z, std::span<Complex> out) {
            out[0] = std::pow(z[0], a) * std::pow(std::conj(z[1]), b);
          },
          q);
      EXPECT_NEAR(std::abs(v[0] - (a == 0 && b == 0 ? 1.0 : 0.0)), 0.0, 1e-13) << a << ' ' << b;
    }
  }
}

TEST(Quadrature, ResolvesANarrowPeak) {
  // Poisson kernel at r = 0.9999 has width 1e-4; its mean is 1.
  QuadratureSpec q;
  const double r = 0.9999;
  const auto v = lebesgue_integrate(
      1, 1, [&](std::span<const Complex> z, std::span<Complex> out) { out[0] = (1 - r * r) / std::norm(1.0 - r * z[0]); },
      q);
  EXPECT_NEAR(v[0].real(), 1.0, 1e-11);
}

TEST(Quadrature, PairwiseSumIsOrderStable) {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 / static_cast<double>(i + 1);
  EXPECT_EQ(pairwise_sum<double>(x), pairwise_sum<double>(std::span<const double>(x)));
}

TEST(Quadrature, SpecValidation) {
  QuadratureSpec q;
  q.nodes_per_dim = 4;
  EXPECT_THROW(q.validate(), InvalidArgument);
  q = QuadratureSpec{};
  q.radii = {0.9, 0.5};
  EXPECT_THROW(q.validate(), InvalidArgument);
  q.radii = {0.5, 1.0};
  EXPECT_THROW(q.validate(), InvalidArgument);
}

TEST(Richardson, ExactOnPolynomialsOfMatchingDegree) {
  const std::vector<double> h{1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  std::vector<double> v;
  for (double x : h) v.push_back(2.0 - 3.0 * x + 5.0 * x * x - x * x * x);
  EXPECT_NEAR(richardson_extrapolate<double>(h, v, -1), 2.0, 1e-12);
  std::vector<double> lin;
  for (double x : h) lin.push_back(1.0 + 4.0 * x);
  EXPECT_NEAR(richardson_extrapolate<double>(h, lin, 1), 1.0, 1e-14);
}

TEST(Roots, CompanionEigenvalues) {
  // (x - 1)(x + 1)(x - i) = x^3 - i x^2 - x + i
  const std::vector<Complex> c{Complex(0, 1), -1.0, Complex(0, -1), 1.0};
  const auto r = polynomial_roots(c);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(std::abs(r[0] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r[1] - Complex(0, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r[2] + 1.0), 0.0, 1e-14);
  EXPECT_TRUE(polynomial_roots(std::vector<Complex>{2.0}).empty());
  EXPECT_TRUE(polynomial_roots(std::vector<Complex>{2.0, 1e-20}).empty());
}

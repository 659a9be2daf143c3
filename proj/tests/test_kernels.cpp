#include <gtest/gtest.h>

#include "polyclark/kernels.hpp"
#include "polyclark/panels.hpp"
#include "polyclark/quadrature.hpp"

using namespace polyclark;

TEST(CauchyKernel, Examples) {
  EXPECT_NEAR(std::abs(cauchy_kernel(DiscPoint{0.0, 0.0}, TorusPoint{Complex(0.6, 0.8), 1.0}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cauchy_kernel(DiscPoint{0.5, 0.0}, TorusPoint{1.0, 1.0}) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cauchy_kernel(DiscPoint{0.5, 0.5}, TorusPoint{1.0, -1.0}) - 4.0 / 3.0), 0.0, 1e-15);
}

TEST(CauchyKernel, RejectsPointsOutsideTheDisc) {
  EXPECT_THROW(DiscPoint({1.0, 0.0}), DomainError);
  EXPECT_THROW(DiscPoint({0.0, Complex(0.8, 0.7)}), DomainError);
  EXPECT_THROW(cauchy_kernel(DiscPoint{0.1}, TorusPoint{1.0, 1.0}), DomainError);
}

TEST(TorusPoint, RenormalizesSmallDeviationsAndRejectsLargeOnes) {
  const TorusPoint p{Complex(1.0 + 1e-10, 0.0)};
  EXPECT_EQ(std::abs(p[0]), 1.0);
  EXPECT_THROW(TorusPoint{Complex(1.0 + 1e-6, 0.0)}, DomainError);
}

TEST(PoissonKernel, Examples) {
  EXPECT_DOUBLE_EQ(poisson_kernel(DiscPoint{0.0, 0.0}, TorusPoint{Complex(0.0, 1.0), -1.0}), 1.0);
  for (double t : {0.0, 0.1, 0.37, 0.5}) {
    EXPECT_NEAR(poisson_kernel(DiscPoint{0.5, 0.0}, TorusPoint{1.0, from_turns(t)}), 3.0, 1e-14);
  }
}

TEST(PoissonKernel, EqualsAlgebraicFormAndIsPositive) {
  const auto pts = random_disc_points(2, 50, 0.95, 3);
  PanelRng rng(4);
  for (const auto& z : pts) {
    const TorusPoint zeta{from_turns(rng.uniform()), from_turns(rng.uniform())};
    const Complex c = cauchy_kernel(z, zeta);
    const double czz = cauchy_product(z.coords(), z.coords()).real();
    const double p = poisson_kernel(z, zeta);
    EXPECT_GT(p, 0.0);
    EXPECT_NEAR(p, std::norm(c) / czz, 1e-12 * std::max(1.0, p));
    EXPECT_LE(std::abs(c), 1.0 / ((1.0 - std::abs(z[0])) * (1.0 - std::abs(z[1]))) * (1 + 1e-14));
  }
}

TEST(PoissonKernel, IntegratesToOne) {
  QuadratureSpec q;
  q.nodes_per_dim = 256;
  for (const auto& z : random_disc_points(2, 5, 0.9, 11)) {
    const auto v = lebesgue_integrate(
        2, 1, [&](std::span<const Complex> zeta, std::span<Complex> out) { out[0] = poisson_product(z.coords(), zeta); },
        q);
    EXPECT_NEAR(v[0].real(), 1.0, 1e-10);
  }
  q.nodes_per_dim = 64;
  const DiscPoint z{0.3, Complex(0.0, -0.2)};
  const auto v = lebesgue_integrate(
      2, 1, [&](std::span<const Complex> zeta, std::span<Complex> out) { out[0] = poisson_product(z.coords(), zeta); }, q);
  EXPECT_NEAR(v[0].real(), 1.0, 1e-12);
}

TEST(ReproducingKernel, Examples) {
  const auto prod = catalog("product");
  const DiscPoint h{0.5, 0.5};
  EXPECT_NEAR(std::abs(reproducing_kernel(prod, h, h) - (15.0 / 16.0) * (16.0 / 9.0)), 0.0, 1e-14);
  const auto rat = catalog("rational_example");
  for (const auto& z : random_disc_points(2, 10, 0.9, 5)) {
    EXPECT_NEAR(std::abs(reproducing_kernel(rat, z, DiscPoint::origin(2)) - 1.0), 0.0, 1e-14);
  }
}

TEST(ReproducingKernel, HermitianAndNonnegativeOnDiagonal) {
  const auto rat = catalog("rational_example");
  const auto pts = random_disc_points(2, 12, 0.9, 9);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Complex a = reproducing_kernel(rat, pts[i], pts[i + 1]);
    const Complex b = reproducing_kernel(rat, pts[i + 1], pts[i]);
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-13);
    EXPECT_GE(reproducing_kernel(rat, pts[i], pts[i]).real(), 0.0);
  }
}

#pragma once

// Roots of univariate complex polynomials as eigenvalues of the companion matrix.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "polyclark/core.hpp"

namespace polyclark {

/// Drops leading coefficients that are negligible relative to the largest one.
inline std::vector<Complex> trim_leading(std::span<const Complex> low_to_high, double rel = 1e-14) {
  double scale = 0.0;
  for (const auto& c : low_to_high) scale = std::max(scale, std::abs(c));
  std::vector<Complex> c(low_to_high.begin(), low_to_high.end());
  while (!c.empty() && std::abs(c.back()) <= rel * scale) c.pop_back();
  return c;
}

/// All complex roots, sorted by argument in [0, 2 pi) and then by modulus.
/// The zero polynomial and nonzero constants have no roots.
inline std::vector<Complex> polynomial_roots(std::span<const Complex> low_to_high) {
  const auto c = trim_leading(low_to_high);
  if (c.size() <= 1) return {};
  const std::size_t deg = c.size() - 1;
  std::vector<Complex> roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < deg; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -c[i] / c[deg];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw RootFindingError("companion eigenvalue solve failed");
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) roots.push_back(ev[i]);
    // Newton polish; keep a step only when it reduces the residual.
    auto eval = [&](Complex x, Complex& d) {
      Complex p = 0.0;
      d = 0.0;
      for (std::size_t i = c.size(); i-- > 0;) {
        d = d * x + p;
        p = p * x + c[i];
      }
      return p;
    };
    for (auto& r : roots) {
      for (int it = 0; it < 2; ++it) {
        Complex d;
        const Complex p = eval(r, d);
        if (d == 0.0) break;
        const Complex next = r - p / d;
        Complex dn;
        if (std::abs(eval(next, dn)) < std::abs(p)) {
          r = next;
        } else {
          break;
        }
      }
    }
  }
  auto angle = [](Complex z) {
    double a = std::arg(z);
    return a < 0.0 ? a + two_pi : a;
  };
  std::sort(roots.begin(), roots.end(), [&](Complex a, Complex b) {
    const double ta = angle(a);
    const double tb = angle(b);
    if (ta != tb) return ta < tb;
    return std::abs(a) < std::abs(b);
  });
  return roots;
}

}  // namespace polyclark

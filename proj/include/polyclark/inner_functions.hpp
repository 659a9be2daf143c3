#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyclark/core.hpp"
#include "polyclark/polynomial.hpp"

namespace polyclark {

inline constexpr int max_degree_per_variable = 8;
inline constexpr double pole_threshold = 1e-14;

/// A rational map numerator / denominator on the polydisc, immutable once built.
/// `label` carries the catalog name when the map came from the catalog.
class RationalMap {
 public:
  RationalMap(Polynomial numerator, Polynomial denominator, std::string label = {})
      : num_(std::move(numerator)), den_(std::move(denominator)), label_(std::move(label)) {
    if (num_.variables() != den_.variables()) throw InvalidArgument("numerator and denominator dimensions differ");
    for (const auto* p : {&num_, &den_}) {
      for (int d : p->degrees()) {
        if (d > max_degree_per_variable) throw InvalidArgument("degree per variable exceeds 8");
      }
    }
    if (den_.max_abs_coefficient() == 0.0) throw PoleError("denominator is identically zero");
  }

  std::size_t dimension() const { return num_.variables(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const std::string& label() const { return label_; }

  /// Evaluates at any point where the denominator is not below the pole threshold.
  Complex operator()(std::span<const Complex> z) const {
    const Complex q = den_(z);
    if (std::abs(q) < pole_threshold) throw PoleError("rational map evaluated at a pole");
    return num_(z) / q;
  }

  /// Same as operator() but returns NaN at poles instead of throwing.
  Complex boundary_value(std::span<const Complex> z) const {
    const Complex q = den_(z);
    if (std::abs(q) < pole_threshold) {
      return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    return num_(z) / q;
  }

  Complex eval(const DiscPoint& z) const {
    if (z.size() != dimension()) throw DomainError("point dimension does not match the map");
    return (*this)(z.coords());
  }

  Complex operator()(Complex x) const { return (*this)(std::span<const Complex>(&x, 1)); }

  /// True when the map genuinely varies with coordinate j.
  bool depends_on(std::size_t j) const {
    const double tol = 1e-14 * std::max(num_.max_abs_coefficient(), den_.max_abs_coefficient());
    return num_.depends_on(j, tol) || den_.depends_on(j, tol);
  }

 private:
  Polynomial num_;
  Polynomial den_;
  std::string label_;
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"coordinate", "product", "rational_example", "halfsum"};
  return names;
}

/// The coordinate function z_1 on the n-dimensional polydisc.
inline RationalMap coordinate_function(std::size_t n) {
  std::vector<int> e(n, 0);
  e[0] = 1;
  return RationalMap(Polynomial::monomial(e), Polynomial::constant(n, 1.0), "coordinate");
}

/// Catalog maps on the bidisc:
///   coordinate        z1
///   product           z1 z2
///   rational_example  (z1 + z2 + 2 z1 z2) / (z1 + z2 + 2)
///   halfsum           (z1 + z2) / 2   (a self-map that is not inner)
inline RationalMap catalog(std::string_view name) {
  if (name == "coordinate") return coordinate_function(2);
  if (name == "product") {
    return RationalMap(Polynomial({1, 1}, {0.0, 0.0, 0.0, 1.0}), Polynomial::constant(2, 1.0), "product");
  }
  if (name == "rational_example") {
    // Row-major over (a, b): index 2a + b.
    return RationalMap(Polynomial({1, 1}, {0.0, 1.0, 1.0, 2.0}), Polynomial({1, 1}, {2.0, 1.0, 1.0, 0.0}),
                       "rational_example");
  }
  if (name == "halfsum") {
    return RationalMap(Polynomial({1, 1}, {0.0, 0.5, 0.5, 0.0}), Polynomial::constant(2, 1.0), "halfsum");
  }
  throw InvalidArgument("unknown catalog map: " + std::string(name));
}

/// lambda -> phi(lambda zeta).
inline RationalMap diag_slice(const RationalMap& phi, const TorusPoint& zeta) {
  if (zeta.size() != phi.dimension()) throw DomainError("slice direction has the wrong dimension");
  return RationalMap(phi.numerator().diagonal(zeta.coords()), phi.denominator().diagonal(zeta.coords()));
}

/// The map of the remaining variable with coordinate `j` (0-based) frozen at xi. Bidisc only.
inline RationalMap vertical_slice(const RationalMap& phi, std::size_t j, Complex xi) {
  if (phi.dimension() != 2) throw InvalidArgument("vertical slices need a map of two variables");
  if (j > 1) throw InvalidArgument("coordinate index out of range");
  auto num = phi.numerator().freeze(j, xi);
  auto den = phi.denominator().freeze(j, xi);
  if (den.max_abs_coefficient() < pole_threshold) throw PoleError("frozen denominator vanishes identically");
  return RationalMap(std::move(num), std::move(den));
}

/// d phi / d z_j (0-based) by the quotient rule.
inline Complex partial_derivative(const RationalMap& phi, std::size_t j, std::span<const Complex> z) {
  if (z.size() != phi.dimension()) throw DomainError("point dimension does not match the map");
  if (j >= phi.dimension()) throw InvalidArgument("coordinate index out of range");
  const Complex q = phi.denominator()(z);
  if (std::abs(q) < pole_threshold) throw PoleError("derivative evaluated at a pole");
  const Complex p = phi.numerator()(z);
  const Complex dp = phi.numerator().derivative(j)(z);
  const Complex dq = phi.denominator().derivative(j)(z);
  return (dp * q - p * dq) / (q * q);
}

struct InnerCertificate {
  double max_boundary_deviation = 0.0;
  double max_interior_modulus = 0.0;
  int grid_size = 0;
  /// Boundary samples that landed on a pole and were left out of the maximum.
  int pole_samples = 0;
  bool passed = false;
};

/// Samples |phi| on a grid_size^n boundary grid and on the radii 0.5, 0.9, 0.99.
/// Poles on the grid are counted, not thrown.
inline InnerCertificate inner_certificate(const RationalMap& phi, int grid_size, double tol) {
  if (grid_size < 16) throw InvalidArgument("inner certificate needs grid_size >= 16");
  const std::size_t n = phi.dimension();
  InnerCertificate cert;
  cert.grid_size = grid_size;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Complex> z(n);
  std::vector<Complex> zr(n);
  const double radii[] = {0.5, 0.9, 0.99};
  while (true) {
    for (std::size_t j = 0; j < n; ++j) {
      z[j] = std::polar(1.0, two_pi * static_cast<double>(idx[j]) / grid_size);
    }
    const Complex v = phi.boundary_value(z);
    if (std::isfinite(v.real())) {
      cert.max_boundary_deviation = std::max(cert.max_boundary_deviation, std::abs(std::abs(v) - 1.0));
    } else {
      ++cert.pole_samples;
    }
    for (double r : radii) {
      for (std::size_t j = 0; j < n; ++j) zr[j] = r * z[j];
      const Complex w = phi.boundary_value(zr);
      // A pole inside the polydisc means this is not a self-map at all.
      cert.max_interior_modulus =
          std::max(cert.max_interior_modulus, std::isfinite(w.real()) ? std::abs(w) : std::numeric_limits<double>::infinity());
    }
    std::size_t j = n;
    while (j-- > 0) {
      if (++idx[j] < static_cast<std::size_t>(grid_size)) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  cert.passed = cert.max_boundary_deviation <= tol && cert.max_interior_modulus < 1.0;
  return cert;
}

}  // namespace polyclark

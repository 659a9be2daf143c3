#pragma once

// Cauchy, Poisson and model-space reproducing kernels of the polydisc.

#include <cmath>
#include <span>

#include "polyclark/core.hpp"
#include "polyclark/inner_functions.hpp"

namespace polyclark {

/// prod_j 1 / (1 - a_j conj(b_j)), unchecked. Covers C(z, zeta), C(zeta, w) and C(z, w).
inline Complex cauchy_product(std::span<const Complex> a, std::span<const Complex> b) {
  Complex v = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) v /= (1.0 - a[j] * std::conj(b[j]));
  return v;
}

/// prod_j (1 - |z_j|^2) / |1 - z_j conj(zeta_j)|^2, unchecked.
inline double poisson_product(std::span<const Complex> z, std::span<const Complex> zeta) {
  double v = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) v *= (1.0 - std::norm(z[j])) / std::norm(1.0 - z[j] * std::conj(zeta[j]));
  return v;
}

inline Complex cauchy_kernel(const DiscPoint& z, const TorusPoint& zeta) {
  if (z.size() != zeta.size()) throw DomainError("dimension mismatch");
  return cauchy_product(z.coords(), zeta.coords());
}

inline double poisson_kernel(const DiscPoint& z, const TorusPoint& zeta) {
  if (z.size() != zeta.size()) throw DomainError("dimension mismatch");
  return poisson_product(z.coords(), zeta.coords());
}

/// (1 - I(z) conj(I(w))) C(z, w), the reproducing kernel of H^2 minus I H^2.
inline Complex reproducing_kernel(const RationalMap& inner, const DiscPoint& z, const DiscPoint& w) {
  if (z.size() != inner.dimension() || w.size() != inner.dimension()) throw DomainError("dimension mismatch");
  return (1.0 - inner(z.coords()) * std::conj(inner(w.coords()))) * cauchy_product(z.coords(), w.coords());
}

}  // namespace polyclark

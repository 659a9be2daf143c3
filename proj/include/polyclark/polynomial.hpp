#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "polyclark/core.hpp"

namespace polyclark {

/// Dense polynomial in n variables with complex coefficients.
///
/// Coefficients are stored row-major by multi-degree: the exponent of the last
/// variable varies fastest. `degrees()[j]` is the storage bound in variable j,
/// not necessarily the true degree.
class Polynomial {
 public:
  Polynomial() : Polynomial(std::vector<int>{0}, {0.0}) {}

  Polynomial(std::vector<int> degrees, std::vector<Complex> coeffs)
      : degrees_(std::move(degrees)), coeffs_(std::move(coeffs)) {
    if (degrees_.empty()) throw InvalidArgument("polynomial needs at least one variable");
    std::size_t size = 1;
    for (int d : degrees_) {
      if (d < 0) throw InvalidArgument("negative polynomial degree");
      size *= static_cast<std::size_t>(d) + 1;
    }
    if (coeffs_.size() != size) throw InvalidArgument("coefficient count does not match degrees");
  }

  static Polynomial constant(std::size_t variables, Complex c) {
    return Polynomial(std::vector<int>(variables, 0), {c});
  }

  static Polynomial monomial(std::span<const int> exponents, Complex c = 1.0) {
    std::vector<int> deg(exponents.begin(), exponents.end());
    Polynomial p(deg, std::vector<Complex>(storage_size(deg), 0.0));
    p.coeffs_.back() = c;
    return p;
  }

  /// Univariate polynomial from coefficients ordered by increasing power.
  static Polynomial univariate(std::vector<Complex> low_to_high) {
    if (low_to_high.empty()) low_to_high.push_back(0.0);
    const int d = static_cast<int>(low_to_high.size()) - 1;
    return Polynomial({d}, std::move(low_to_high));
  }

  std::size_t variables() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  std::span<const Complex> coefficients() const { return coeffs_; }

  Complex coefficient(std::span<const int> exponents) const {
    for (std::size_t j = 0; j < degrees_.size(); ++j) {
      if (exponents[j] < 0 || exponents[j] > degrees_[j]) return 0.0;
    }
    return coeffs_[flat_index(exponents)];
  }

  Complex operator()(std::span<const Complex> z) const {
    const std::size_t n = degrees_.size();
    if (z.size() != n) throw InvalidArgument("polynomial evaluated with wrong dimension");
    if (n == 1) return horner(coeffs_, z[0]);
    if (n == 2) {
      // Horner in the first variable over rows that are polynomials in the second.
      const std::size_t row = static_cast<std::size_t>(degrees_[1]) + 1;
      Complex acc = 0.0;
      for (int a = degrees_[0]; a >= 0; --a) {
        const auto r = std::span<const Complex>(coeffs_).subspan(static_cast<std::size_t>(a) * row, row);
        acc = acc * z[0] + horner(r, z[1]);
      }
      return acc;
    }
    Complex sum = 0.0;
    std::vector<int> e(n, 0);
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      if (coeffs_[idx] != 0.0) {
        Complex m = coeffs_[idx];
        for (std::size_t j = 0; j < n; ++j) m *= ipow(z[j], e[j]);
        sum += m;
      }
      increment(e);
    }
    return sum;
  }

  Complex operator()(Complex x) const { return (*this)(std::span<const Complex>(&x, 1)); }

  Polynomial derivative(std::size_t j) const {
    std::vector<int> deg = degrees_;
    if (deg[j] == 0) return Polynomial(std::vector<int>(degrees_.size(), 0), {0.0});
    deg[j] -= 1;
    Polynomial d(deg, std::vector<Complex>(storage_size(deg), 0.0));
    std::vector<int> e(degrees_.size(), 0);
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      if (e[j] > 0) {
        std::vector<int> t = e;
        t[j] -= 1;
        d.coeffs_[d.flat_index(t)] += coeffs_[idx] * static_cast<double>(e[j]);
      }
      increment(e);
    }
    return d;
  }

  /// lambda -> p(lambda * zeta_1, ..., lambda * zeta_n) as a univariate polynomial.
  Polynomial diagonal(std::span<const Complex> zeta) const {
    if (zeta.size() != degrees_.size()) throw InvalidArgument("diagonal substitution with wrong dimension");
    const int total = std::accumulate(degrees_.begin(), degrees_.end(), 0);
    std::vector<Complex> out(static_cast<std::size_t>(total) + 1, 0.0);
    std::vector<int> e(degrees_.size(), 0);
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      if (coeffs_[idx] != 0.0) {
        Complex m = coeffs_[idx];
        int power = 0;
        for (std::size_t j = 0; j < e.size(); ++j) {
          m *= ipow(zeta[j], e[j]);
          power += e[j];
        }
        out[static_cast<std::size_t>(power)] += m;
      }
      increment(e);
    }
    return univariate(std::move(out));
  }

  /// Substitutes z_j = value, leaving a polynomial in the remaining variables.
  Polynomial freeze(std::size_t j, Complex value) const {
    if (degrees_.size() < 2) throw InvalidArgument("cannot freeze the only variable");
    std::vector<int> deg;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      if (i != j) deg.push_back(degrees_[i]);
    }
    Polynomial out(deg, std::vector<Complex>(storage_size(deg), 0.0));
    std::vector<int> e(degrees_.size(), 0);
    std::vector<int> rest(deg.size());
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      if (coeffs_[idx] != 0.0) {
        for (std::size_t i = 0, k = 0; i < e.size(); ++i) {
          if (i != j) rest[k++] = e[i];
        }
        out.coeffs_[out.flat_index(rest)] += coeffs_[idx] * ipow(value, e[j]);
      }
      increment(e);
    }
    return out;
  }

  /// True when some coefficient with a positive power of z_j exceeds `tol` in modulus.
  bool depends_on(std::size_t j, double tol = 0.0) const {
    std::vector<int> e(degrees_.size(), 0);
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      if (e[j] > 0 && std::abs(coeffs_[idx]) > tol) return true;
      increment(e);
    }
    return false;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  Polynomial operator-(const Polynomial& o) const { return combine(o, -1.0); }
  Polynomial operator+(const Polynomial& o) const { return combine(o, 1.0); }
  Polynomial operator*(Complex s) const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

 private:
  static Complex horner(std::span<const Complex> c, Complex x) {
    Complex acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  static Complex ipow(Complex x, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }

  static std::size_t storage_size(const std::vector<int>& deg) {
    std::size_t s = 1;
    for (int d : deg) s *= static_cast<std::size_t>(d) + 1;
    return s;
  }

  std::size_t flat_index(std::span<const int> e) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < degrees_.size(); ++j) {
      idx = idx * (static_cast<std::size_t>(degrees_[j]) + 1) + static_cast<std::size_t>(e[j]);
    }
    return idx;
  }

  void increment(std::vector<int>& e) const {
    for (std::size_t j = e.size(); j-- > 0;) {
      if (++e[j] <= degrees_[j]) return;
      e[j] = 0;
    }
  }

  Polynomial combine(const Polynomial& o, double sign) const {
    if (o.variables() != variables()) throw InvalidArgument("polynomial dimension mismatch");
    std::vector<int> deg(degrees_.size());
    for (std::size_t j = 0; j < deg.size(); ++j) deg[j] = std::max(degrees_[j], o.degrees_[j]);
    Polynomial r(deg, std::vector<Complex>(storage_size(deg), 0.0));
    std::vector<int> e(degrees_.size(), 0);
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      r.coeffs_[r.flat_index(e)] += coeffs_[idx];
      increment(e);
    }
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t idx = 0; idx < o.coeffs_.size(); ++idx) {
      r.coeffs_[r.flat_index(e)] += sign * o.coeffs_[idx];
      o.increment(e);
    }
    return r;
  }

  std::vector<int> degrees_;
  std::vector<Complex> coeffs_;
};

}  // namespace polyclark

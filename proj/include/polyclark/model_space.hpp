#pragma once

// The embedding T_alpha of the model space K_I into L^2(sigma_alpha), checked on kernel functions,
// and least-squares scans for density of analytic polynomials in L^2(sigma_alpha).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polyclark/clark.hpp"
#include "polyclark/core.hpp"
#include "polyclark/inner_functions.hpp"
#include "polyclark/kernels.hpp"
#include "polyclark/measures.hpp"

namespace polyclark {

/// (T_alpha K_w)(xi) = (1 - alpha conj(I(w))) C(xi, w).
inline ScalarFunction t_alpha_apply(const RationalMap& inner, Complex alpha, const DiscPoint& w) {
  alpha = unimodular(alpha);
  const Complex c = 1.0 - alpha * std::conj(inner.eval(w));
  std::vector<Complex> wc(w.coords().begin(), w.coords().end());
  return [c, wc](std::span<const Complex> xi) { return c * cauchy_product(xi, wc); };
}

/// Right-hand side of the double Cauchy identity:
/// (1 - phi(z) conj(phi(w))) / ((1 - conj(alpha) phi(z)) (1 - alpha conj(phi(w)))) C(z, w).
inline Complex cauchy_double_closed_form(const RationalMap& phi, Complex alpha, const DiscPoint& z,
                                         const DiscPoint& w) {
  const Complex a = phi.eval(z);
  const Complex b = std::conj(phi.eval(w));
  return (1.0 - a * b) / ((1.0 - std::conj(alpha) * a) * (1.0 - alpha * b)) * cauchy_product(z.coords(), w.coords());
}

/// 1 / (1 - conj(alpha) phi(z)) + alpha conj(phi(0)) / (1 - alpha conj(phi(0))).
inline Complex cauchy_transform_closed_form(const RationalMap& phi, Complex alpha, const DiscPoint& z) {
  const Complex c0 = std::conj(phi.eval(DiscPoint::origin(phi.dimension())));
  return 1.0 / (1.0 - std::conj(alpha) * phi.eval(z)) + alpha * c0 / (1.0 - alpha * c0);
}

/// Largest residual of the double Cauchy identity over the pairs (z_i, w_i).
inline double verify_cauchy_double(const TorusMeasure& sigma, const RationalMap& phi, Complex alpha,
                                   const std::vector<std::pair<DiscPoint, DiscPoint>>& pairs,
                                   const QuadratureSpec& q) {
  alpha = unimodular(alpha);
  const auto lhs = integrate_many(
      sigma, pairs.size(),
      [&](std::span<const Complex> zeta, std::span<Complex> out) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          out[i] = cauchy_product(pairs[i].first.coords(), zeta) * cauchy_product(zeta, pairs[i].second.coords());
        }
      },
      q);
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    worst = std::max(worst, std::abs(lhs[i] - cauchy_double_closed_form(phi, alpha, pairs[i].first, pairs[i].second)));
  }
  return worst;
}

inline double verify_cauchy_double(const RationalMap& phi, Complex alpha, const DiscPoint& z, const DiscPoint& w,
                                   const QuadratureSpec& q) {
  const auto sigma = construct_clark(phi, alpha, q);
  return verify_cauchy_double(sigma.measure, phi, sigma.alpha, {{z, w}}, q);
}

/// Largest |sigma_+(z) - closed form| over the points.
inline double verify_cauchy_transform(const TorusMeasure& sigma, const RationalMap& phi, Complex alpha,
                                      const std::vector<DiscPoint>& points, const QuadratureSpec& q) {
  alpha = unimodular(alpha);
  const auto lhs = integrate_many(
      sigma, points.size(),
      [&](std::span<const Complex> zeta, std::span<Complex> out) {
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = cauchy_product(points[i].coords(), zeta);
      },
      q);
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, std::abs(lhs[i] - cauchy_transform_closed_form(phi, alpha, points[i])));
  }
  return worst;
}

inline double verify_cauchy_transform(const RationalMap& phi, Complex alpha, const DiscPoint& z,
                                      const QuadratureSpec& q) {
  const auto sigma = construct_clark(phi, alpha, q);
  return verify_cauchy_transform(sigma.measure, phi, sigma.alpha, {z}, q);
}

struct IsometryReport {
  double max_residual = 0.0;
  /// gram(i, j) = integral of T K_{p_j} conj(T K_{p_i}) d sigma.
  Eigen::MatrixXcd gram;
  double min_eigenvalue = 0.0;
};

/// Compares the L^2(sigma_alpha) Gram matrix of {T_alpha K_p} with K(p_i, p_j).
inline IsometryReport isometry_gram_residual(const TorusMeasure& sigma, const RationalMap& inner, Complex alpha,
                                             const std::vector<DiscPoint>& points, const QuadratureSpec& q) {
  alpha = unimodular(alpha);
  const std::size_t m = points.size();
  std::vector<ScalarFunction> t;
  for (const auto& p : points) t.push_back(t_alpha_apply(inner, alpha, p));
  std::vector<Complex> vals(m);
  const auto entries = integrate_many(
      sigma, m * m,
      [&](std::span<const Complex> zeta, std::span<Complex> out) {
        for (std::size_t i = 0; i < m; ++i) vals[i] = t[i](zeta);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) out[i * m + j] = vals[j] * std::conj(vals[i]);
        }
      },
      q);
  IsometryReport r;
  const auto mi = static_cast<Eigen::Index>(m);
  r.gram.resize(mi, mi);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Complex g = entries[i * m + j];
      r.gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g;
      r.max_residual = std::max(r.max_residual, std::abs(g - reproducing_kernel(inner, points[i], points[j])));
    }
  }
  const Eigen::MatrixXcd h = 0.5 * (r.gram + r.gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

inline IsometryReport isometry_gram_residual(const RationalMap& inner, Complex alpha,
                                             const std::vector<DiscPoint>& points, const QuadratureSpec& q) {
  const auto sigma = construct_clark(inner, alpha, q);
  return isometry_gram_residual(sigma.measure, inner, sigma.alpha, points, q);
}

/// |integral over T^n of K_w conj(K_w') conj(I)^k dm|, k != 0; negative k uses I^|k|.
inline double annihilation_check(const RationalMap& inner, int k, const DiscPoint& w, const DiscPoint& w_prime,
                                 const QuadratureSpec& q) {
  if (k == 0) throw InvalidArgument("annihilation needs k != 0");
  int total = 0;
  for (const auto* p : {&inner.numerator(), &inner.denominator()}) {
    int t = 0;
    for (int d : p->degrees()) t += d;
    total = std::max(total, t);
  }
  if (q.nodes_per_dim <= 2 * (std::abs(k) + 1) * total + 2) {
    throw ResolutionError("nodes_per_dim too small for the degree of the integrand");
  }
  const Complex iw = std::conj(inner.eval(w));
  const Complex iwp = std::conj(inner.eval(w_prime));
  const auto value = lebesgue_integrate(
      inner.dimension(), 1,
      [&](std::span<const Complex> zeta, std::span<Complex> out) {
        const Complex v = inner.boundary_value(zeta);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          out[0] = 0.0;
          return;
        }
        const Complex kw = (1.0 - v * iw) * cauchy_product(zeta, w.coords());
        const Complex kwp = (1.0 - v * iwp) * cauchy_product(zeta, w_prime.coords());
        const Complex base = k > 0 ? std::conj(v) : v;
        Complex power = 1.0;
        for (int e = 0; e < std::abs(k); ++e) power *= base;
        out[0] = kw * std::conj(kwp) * power;
      },
      q);
  return std::abs(value[0]);
}

struct GramRow {
  int degree;
  double residual;
  double condition;
};

struct GramReport {
  Complex alpha;
  std::string target;
  std::vector<GramRow> rows;
  bool monotone = true;
  /// "density-consistent", "obstruction found" or "inconclusive".
  std::string verdict;
};

struct Target {
  std::string label;
  ScalarFunction f;
};

/// conj(zeta_1), conj(zeta_2), conj(zeta_1 zeta_2).
inline std::vector<Target> default_targets() {
  return {{"conj(z1)", [](std::span<const Complex> z) { return std::conj(z[0]); }},
          {"conj(z2)", [](std::span<const Complex> z) { return std::conj(z[1]); }},
          {"conj(z1 z2)", [](std::span<const Complex> z) { return std::conj(z[0] * z[1]); }}};
}

inline std::string unitarity_verdict(const std::vector<GramRow>& rows) {
  if (rows.empty()) return "inconclusive";
  if (rows.back().residual < 1e-4) return "density-consistent";
  if (rows.size() >= 4 &&
      std::all_of(rows.end() - 4, rows.end(), [](const GramRow& r) { return r.residual >= 1e-2; })) {
    return "obstruction found";
  }
  return "inconclusive";
}

/// rho_D = distance in L^2(sigma) from the target to span{zeta_1^a zeta_2^b : a, b <= D}, D = 0..maxdeg.
/// The Gram matrix comes from Fourier coefficients of sigma; rho_D is integrated directly.
inline GramReport unitarity_residual_scan(const TorusMeasure& sigma, Complex alpha, const Target& target, int maxdeg,
                                          const QuadratureSpec& q) {
  if (sigma.dimension() != 2) throw InvalidArgument("unitarity scan is implemented on T^2");
  if (maxdeg < 0 || maxdeg > 16) throw InvalidArgument("maxdeg must lie in [0, 16]");
  const int span = 2 * maxdeg + 1;
  std::vector<std::vector<int>> ks;
  for (int a = -maxdeg; a <= maxdeg; ++a) {
    for (int b = -maxdeg; b <= maxdeg; ++b) ks.push_back({a, b});
  }
  const auto coeffs = fourier_coeffs(sigma, ks, q);
  auto sigma_hat = [&](int a, int b) { return coeffs[static_cast<std::size_t>((a + maxdeg) * span + (b + maxdeg))]; };

  // <target, zeta^m> for every m with entries <= maxdeg.
  const int side = maxdeg + 1;
  const auto proj = integrate_many(
      sigma, static_cast<std::size_t>(side * side),
      [&](std::span<const Complex> z, std::span<Complex> out) {
        const Complex t = target.f(z);
        Complex pa = 1.0;
        for (int a = 0; a < side; ++a) {
          Complex pb = 1.0;
          for (int b = 0; b < side; ++b) {
            out[static_cast<std::size_t>(a * side + b)] = t * std::conj(pa * pb);
            pb *= z[1];
          }
          pa *= z[0];
        }
      },
      q);

  GramReport report{alpha, target.label, {}, true, {}};
  for (int d = 0; d <= maxdeg; ++d) {
    const int m = (d + 1) * (d + 1);
    Eigen::MatrixXcd g(m, m);
    Eigen::VectorXcd h(m);
    for (int i = 0; i < m; ++i) {
      const int ai = i / (d + 1);
      const int bi = i % (d + 1);
      h(i) = proj[static_cast<std::size_t>(ai * side + bi)];
      for (int j = 0; j < m; ++j) {
        const int aj = j / (d + 1);
        const int bj = j % (d + 1);
        // <zeta^{m_j}, zeta^{m_i}> = integral of zeta^{m_j - m_i} d sigma = sigma_hat(m_i - m_j).
        g(i, j) = sigma_hat(ai - aj, bi - bj);
      }
    }
    g = 0.5 * (g + g.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    const double lo = std::max(std::abs(es.eigenvalues().minCoeff()), 1e-300);
    const double condition = es.eigenvalues().maxCoeff() / lo;
    g.diagonal().array() += 1e-12;
    const Eigen::VectorXcd c = g.ldlt().solve(h);
    const auto rho2 = integrate(
        sigma,
        [&](std::span<const Complex> z) {
          Complex p = 0.0;
          Complex pa = 1.0;
          for (int a = 0; a <= d; ++a) {
            Complex pb = 1.0;
            for (int b = 0; b <= d; ++b) {
              p += c(a * (d + 1) + b) * pa * pb;
              pb *= z[1];
            }
            pa *= z[0];
          }
          return Complex(std::norm(target.f(z) - p));
        },
        q);
    const double rho = std::sqrt(std::max(rho2.real(), 0.0));
    if (!report.rows.empty() && rho > report.rows.back().residual + 1e-10) report.monotone = false;
    report.rows.push_back({d, rho, condition});
  }
  report.verdict = unitarity_verdict(report.rows);
  return report;
}

inline GramReport unitarity_residual_scan(const RationalMap& inner, Complex alpha, const Target& target, int maxdeg,
                                          const QuadratureSpec& q) {
  const auto sigma = construct_clark(inner, alpha, q);
  return unitarity_residual_scan(sigma.measure, sigma.alpha, target, maxdeg, q);
}

}  // namespace polyclark

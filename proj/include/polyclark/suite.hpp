#pragma once

// The full invariant suite for one (phi, alpha): each check reports a residual and a threshold.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polyclark/clark.hpp"
#include "polyclark/model_space.hpp"
#include "polyclark/panels.hpp"

namespace polyclark {

struct Check {
  std::string name;
  double residual;
  double threshold;
  bool pass;
  bool skipped = false;
  std::string note;
};

inline Check make_check(std::string name, double residual, double threshold) {
  const bool pass = std::isfinite(residual) && residual < threshold;
  return {std::move(name), residual, threshold, pass, false, {}};
}

inline Check skipped_check(std::string name, double threshold, std::string note) {
  return {std::move(name), 0.0, threshold, true, true, std::move(note)};
}

/// 1, z1, z1 conj(z2), z1^2 z2.
inline std::vector<ScalarFunction> standard_test_functions() {
  return {[](std::span<const Complex>) { return Complex(1.0); }, [](std::span<const Complex> z) { return z[0]; },
          [](std::span<const Complex> z) { return z[0] * std::conj(z[1]); },
          [](std::span<const Complex> z) { return z[0] * z[0] * z[1]; }};
}

/// Trigonometric monomials zeta^a conj(zeta)^b on T^2 of total degree at most 4.
inline std::vector<std::pair<std::string, ScalarFunction>> low_degree_monomials() {
  auto mono = [](int a1, int a2) {
    return [a1, a2](std::span<const Complex> z) {
      Complex v = 1.0;
      const Complex b1 = a1 >= 0 ? z[0] : std::conj(z[0]);
      const Complex b2 = a2 >= 0 ? z[1] : std::conj(z[1]);
      for (int e = 0; e < std::abs(a1); ++e) v *= b1;
      for (int e = 0; e < std::abs(a2); ++e) v *= b2;
      return v;
    };
  };
  std::vector<std::pair<std::string, ScalarFunction>> out;
  const int exps[][2] = {{0, 0}, {1, 0}, {0, -1}, {1, 1}, {1, -1}, {2, 2}, {4, 0}, {-3, -1}, {2, -2}, {-1, 3}};
  for (const auto& e : exps) {
    out.emplace_back("z^(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")", mono(e[0], e[1]));
  }
  return out;
}

struct SuiteOptions {
  QuadratureSpec quadrature = polyclark::quadrature(256);
  int maxdeg = 8;
  std::uint64_t seed = 0;
  std::size_t alpha_grid = 128;
  std::size_t graph_samples = 512;
};

/// Largest |weak-* extrapolated integral - integral against the constructed measure|.
inline double weakstar_agreement(const TorusMeasure& sigma, const RationalMap& phi, Complex alpha,
                                 const QuadratureSpec& q) {
  const auto fs = low_degree_monomials();
  const TorusIntegrand all = [&](std::span<const Complex> z, std::span<Complex> out) {
    for (std::size_t c = 0; c < fs.size(); ++c) out[c] = fs[c].second(z);
  };
  const auto exact = integrate_many(sigma, fs.size(), all, q);
  const auto weak = weakstar_integrate_many(phi, alpha, fs.size(), all, q);
  double worst = 0.0;
  for (std::size_t c = 0; c < fs.size(); ++c) worst = std::max(worst, std::abs(exact[c] - weak[c]));
  return worst;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

/// Runs every applicable check. Checks that need an inner function are skipped otherwise.
inline std::vector<Check> run_suite(const RationalMap& phi, Complex alpha, const SuiteOptions& opt,
                                    ClarkConstruction* construction_out = nullptr) {
  const auto& q = opt.quadrature;
  std::vector<Check> checks;
  auto sigma = construct_clark(phi, alpha, q, opt.graph_samples);
  alpha = sigma.alpha;
  const auto& mu = sigma.measure;
  const std::size_t n = phi.dimension();
  const bool two_dim = n == 2;
  bool inner = false;
  if (n == 1) {
    inner = looks_inner_1d(phi);
  } else {
    inner = inner_certificate(phi, 64, 1e-10).passed;
  }

  checks.push_back(make_check("defining-property", sigma.certificate.poisson_match_residual, 1e-6));
  try {
    const double expected = clark_symbol(phi, alpha, DiscPoint::origin(n));
    checks.push_back(make_check("mass-identity", std::abs(total_mass(mu, q) - expected), 1e-8));
  } catch (const NegativeMassError& e) {
    checks.push_back({"mass-identity", std::numeric_limits<double>::infinity(), 1e-8, false, false, e.what()});
  }
  checks.push_back(make_check("positivity", positivity_violation(mu, 256), 1e-12));
  checks.push_back(make_check("pluriharmonic-support", pluriharmonic_support_check(mu, opt.maxdeg, 1e-6, q).max_abs, 1e-6));
  if (inner) {
    const double r = has_abs_cont_part(mu) ? std::numeric_limits<double>::infinity()
                                           : singular_support_residual(mu, phi, alpha, opt.graph_samples);
    checks.push_back(make_check("singular-support", r, 1e-8));
  } else {
    checks.push_back(skipped_check("singular-support", 1e-8, "phi is not inner"));
  }

  const auto fs = standard_test_functions();
  if (two_dim) {
    checks.push_back(make_check("slice-decomposition", max_of(verify_slice_decomposition(mu, phi, alpha, fs, q)), 1e-6));
    checks.push_back(make_check("disintegration", max_of(verify_disintegration(phi, fs, q, opt.alpha_grid)), 1e-5));
  } else {
    checks.push_back(skipped_check("slice-decomposition", 1e-6, "implemented on T^2"));
    checks.push_back(skipped_check("disintegration", 1e-5, "implemented on T^2"));
  }

  const auto pairs = random_disc_pairs(n, 25, 0.9, opt.seed);
  checks.push_back(make_check("cauchy-double", verify_cauchy_double(mu, phi, alpha, pairs, q), 1e-6));
  std::vector<DiscPoint> points;
  for (const auto& p : pairs) points.push_back(p.first);
  checks.push_back(make_check("cauchy-transform", verify_cauchy_transform(mu, phi, alpha, points, q), 1e-6));

  const auto panel = random_disc_points(n, 5, 0.9, opt.seed + 1);
  if (inner) {
    checks.push_back(make_check("isometry", isometry_gram_residual(mu, phi, alpha, panel, q).max_residual, 1e-6));
    double worst = 0.0;
    for (int k : {1, 2, -1}) {
      for (std::size_t i = 0; i + 1 < panel.size(); i += 2) {
        worst = std::max(worst, annihilation_check(phi, k, panel[i], panel[i + 1], q));
      }
    }
    checks.push_back(make_check("annihilation", worst, 1e-6));
  } else {
    checks.push_back(skipped_check("isometry", 1e-6, "phi is not inner"));
    checks.push_back(skipped_check("annihilation", 1e-6, "phi is not inner"));
  }
  if (two_dim) {
    checks.push_back(make_check("weakstar-agreement", weakstar_agreement(mu, phi, alpha, q), 1e-4));
  } else {
    checks.push_back(skipped_check("weakstar-agreement", 1e-4, "implemented on T^2"));
  }
  if (construction_out) *construction_out = std::move(sigma);
  return checks;
}

}  // namespace polyclark

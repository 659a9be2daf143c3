// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "polyclark/suite.hpp"

using namespace polyclark;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

const std::vector<std::string> inner_maps = {"coordinate", "product", "rational_example"};

std::vector<Complex> sixteen_alphas() { return alpha_grid(16); }

TorusMeasure point_mass(std::vector<Complex> point, Complex weight) {
  return TorusMeasure::atomic(std::vector<TorusMeasure::PointMass>{TorusMeasure::PointMass{std::move(point), weight}});
}

bool closed_form_path(const std::string& name, const ClarkConstruction& c) {
  return name == "coordinate" || name == "product" || c.certificate.fallback == "closed_form";
}

Outcome c1_defining_property() {
  const auto q = quadrature(256);
  double worst_closed = 0.0, worst_other = 0.0;
  bool ok = true;
  for (const auto& name : catalog_names()) {
    for (Complex alpha : sixteen_alphas()) {
      const auto c = construct_clark(catalog(name), alpha, q);
      const double r = c.certificate.poisson_match_residual;
      if (closed_form_path(name, c)) {
        worst_closed = std::max(worst_closed, r);
        ok = ok && r < 1e-8;
      } else {
        worst_other = std::max(worst_other, r);
        ok = ok && r < 1e-6;
      }
      ok = ok && c.certificate.accepted;
    }
  }
  return {ok, "closed-form paths " + fmt(worst_closed) + ", others " + fmt(worst_other)};
}

Outcome c2_mass() {
  const auto q = quadrature(256);
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const auto phi = catalog(name);
    for (Complex alpha : sixteen_alphas()) {
      const auto c = construct_clark(phi, alpha, q);
      worst = std::max(worst, std::abs(total_mass(c.measure, q) - clark_symbol(phi, alpha, DiscPoint::origin(2))));
    }
  }
  return {worst < 1e-8, "max mass deviation " + fmt(worst)};
}

Outcome c3_disintegration() {
  const auto q = quadrature(256);
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    worst = std::max(worst, max_of(verify_disintegration(catalog(name), standard_test_functions(), q, 128)));
  }
  return {worst < 1e-5, "max residual " + fmt(worst)};
}

Outcome c4_slices() {
  const auto q = quadrature(256);
  const std::vector<Complex> alphas = {1.0, Complex(0, 1), -1.0, from_turns(0.3)};
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    for (Complex alpha : alphas) {
      worst = std::max(worst, max_of(verify_slice_decomposition(catalog(name), alpha, standard_test_functions(), q)));
    }
  }
  return {worst < 1e-6, "max residual " + fmt(worst)};
}

Outcome c5_cauchy() {
  const auto q = quadrature(256);
  const auto pairs = random_disc_pairs(2, 25, 0.9, 0);
  std::vector<DiscPoint> points;
  for (const auto& p : pairs) points.push_back(p.first);
  double dbl = 0.0, single = 0.0;
  for (const auto& name : catalog_names()) {
    const auto phi = catalog(name);
    for (double t : {0.0, 0.3, 0.5}) {
      const auto c = construct_clark(phi, from_turns(t), q);
      dbl = std::max(dbl, verify_cauchy_double(c.measure, phi, c.alpha, pairs, q));
      single = std::max(single, verify_cauchy_transform(c.measure, phi, c.alpha, points, q));
    }
  }
  return {dbl < 1e-6 && single < 1e-6, "double " + fmt(dbl) + ", transform " + fmt(single)};
}

Outcome c6_isometry() {
  const auto q = quadrature(256);
  const auto panel = random_disc_points(2, 5, 0.9, 1);
  double prod = 0.0, rat = 0.0;
  for (int k = 0; k < 8; ++k) {
    const Complex alpha = from_turns((k + 0.5) / 8.0);
    prod = std::max(prod, isometry_gram_residual(catalog("product"), alpha, panel, q).max_residual);
    rat = std::max(rat, isometry_gram_residual(catalog("rational_example"), alpha, panel, q).max_residual);
  }
  return {prod < 1e-8 && rat < 1e-6, "product " + fmt(prod) + ", rational_example " + fmt(rat)};
}

Outcome c7_unitarity() {
  const auto q = quadrature(256);
  const auto targets = default_targets();
  const Target& t1 = targets[0];
  const Target& t2 = targets[1];
  double coord_dev = 0.0;
  for (Complex alpha : alpha_grid(8)) {
    for (const auto& row : unitarity_residual_scan(catalog("coordinate"), alpha, t2, 8, q).rows) {
      coord_dev = std::max(coord_dev, std::abs(row.residual - 1.0));
    }
  }
  const double prod = unitarity_residual_scan(catalog("product"), from_turns(0.3), t1, 1, q).rows[1].residual;
  const double rat_one = unitarity_residual_scan(catalog("rational_example"), 1.0, t2, 8, q).rows.back().residual;
  double rat_minus = 1.0;
  for (const auto& row : unitarity_residual_scan(catalog("rational_example"), -1.0, t2, 16, q).rows) {
    rat_minus = std::min(rat_minus, row.residual);
  }
  const bool ok = coord_dev < 1e-10 && prod < 1e-10 && rat_one < 1e-3 && rat_minus > 0.1;
  return {ok, "coordinate |rho-1| " + fmt(coord_dev) + ", product rho_1 " + fmt(prod) + ", rational alpha=1 rho_8 " +
                  fmt(rat_one) + ", alpha=-1 min rho " + fmt(rat_minus)};
}

Outcome c8_fiber_weights() {
  const auto phi = catalog("rational_example");
  double worst = 0.0;
  double at_minus_one = 0.0;
  for (int k = 0; k < 512; ++k) {
    const Complex xi = from_turns(k / 512.0);
    const auto f = vertical_fiber(phi, 1.0, xi);
    double w = 0.0;
    for (const auto& p : f) w += p.weight;
    if (k == 256) at_minus_one = w;
    worst = std::max(worst, std::abs(w - std::norm(1.0 + xi) / 2.0));
  }
  return {worst < 1e-8 && at_minus_one < 1e-8, "max weight error " + fmt(worst) + ", w(-1) " + fmt(at_minus_one)};
}

Outcome c9_weakstar() {
  const auto q = quadrature(256);
  double worst = 0.0;
  for (const char* name : {"product", "rational_example"}) {
    const auto c = construct_clark(catalog(name), 1.0, q);
    worst = std::max(worst, weakstar_agreement(c.measure, catalog(name), 1.0, q));
  }
  return {worst < 1e-4, "max deviation " + fmt(worst)};
}

Outcome c10_pluriharmonic() {
  const auto q = quadrature(256);
  double worst = 0.0;
  bool ok = true;
  for (const auto& name : catalog_names()) {
    for (Complex alpha : sixteen_alphas()) {
      const auto rep = pluriharmonic_support_check(construct_clark(catalog(name), alpha, q).measure, 8, 1e-6, q);
      worst = std::max(worst, rep.max_abs);
      ok = ok && rep.passed;
    }
  }
  const auto counter = pluriharmonic_support_check(point_mass({1.0, 1.0}, 1.0), 8, 1e-6, q);
  ok = ok && !counter.passed;
  return {ok, "max mixed coefficient " + fmt(worst) + ", point mass rejected " + (counter.passed ? "no" : "yes")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"defining property on 16 alphas", c1_defining_property},
      {"mass identity", c2_mass},
      {"disintegration over 128 alphas", c3_disintegration},
      {"slice decomposition", c4_slices},
      {"Cauchy identities on seeded pairs", c5_cauchy},
      {"isometry Gram matrix", c6_isometry},
      {"unitarity residual scans", c7_unitarity},
      {"graph fiber weights", c8_fiber_weights},
      {"weak-* agreement", c9_weakstar},
      {"pluriharmonic support", c10_pluriharmonic},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

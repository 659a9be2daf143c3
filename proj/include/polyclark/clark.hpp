#pragma once

// Clark measures sigma_alpha[phi]: the positive measure on T^n whose Poisson integral is
// (1 - |phi(z)|^2) / |alpha - phi(z)|^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polyclark/core.hpp"
#include "polyclark/inner_functions.hpp"
#include "polyclark/kernels.hpp"
#include "polyclark/measures.hpp"
#include "polyclark/polynomial.hpp"
#include "polyclark/quadrature.hpp"
#include "polyclark/roots.hpp"

namespace polyclark {

inline constexpr double acceptance_threshold = 1e-6;
inline constexpr double unimodular_root_tolerance = 1e-6;
inline constexpr double collision_distance = 1e-6;

/// (1 - |phi(z)|^2) / |alpha - phi(z)|^2, cross-checked against Re((alpha + phi) / (alpha - phi)).
inline double clark_symbol(const RationalMap& phi, Complex alpha, const DiscPoint& z) {
  alpha = unimodular(alpha);
  const Complex v = phi.eval(z);
  const Complex d = alpha - v;
  if (std::abs(d) < 1e-14) throw SingularityError("phi(z) coincides with alpha");
  const double a = (1.0 - std::norm(v)) / std::norm(d);
  const double b = ((alpha + v) / d).real();
  if (std::abs(a - b) > 1e-12 * std::max(1.0, a)) throw Error("Clark symbol forms disagree");
  return a;
}

/// The symbol at a boundary point; 0 where phi has a pole or equals alpha.
inline double boundary_symbol(const RationalMap& phi, Complex alpha, std::span<const Complex> zeta) {
  const Complex v = phi.boundary_value(zeta);
  const double d = std::norm(alpha - v);
  const double u = (1.0 - std::norm(v)) / d;
  return std::isfinite(u) ? u : 0.0;
}

namespace detail {

inline Complex horner(std::span<const Complex> c, Complex x) {
  Complex acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline double abs_horner(std::span<const Complex> c, double r) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + std::abs(c[i]);
  return acc;
}

inline std::vector<Complex> derivative(std::span<const Complex> c) {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

/// c / (x - mu), dropping the remainder.
inline std::vector<Complex> deflate(std::span<const Complex> c, Complex mu) {
  if (c.size() <= 1) return {0.0};
  std::vector<Complex> b(c.size() - 1);
  b.back() = c.back();
  for (std::size_t i = b.size() - 1; i-- > 0;) b[i] = c[i + 1] + mu * b[i + 1];
  return b;
}

/// Removes linear factors shared by p and q, so cancelled singularities of p / q disappear.
inline void cancel_common_factors(std::vector<Complex>& p, std::vector<Complex>& q) {
  bool changed = true;
  while (changed) {
    changed = false;
    p = trim_leading(p);
    q = trim_leading(q);
    if (p.empty() || q.size() <= 1) return;
    for (Complex mu : polynomial_roots(q)) {
      if (std::abs(horner(p, mu)) <= 1e-10 * abs_horner(p, std::abs(mu))) {
        p = deflate(p, mu);
        q = deflate(q, mu);
        changed = true;
        break;
      }
    }
  }
}

inline std::vector<Complex> univariate_coefficients(const Polynomial& p) {
  if (p.variables() != 1) throw InvalidArgument("expected a polynomial of one variable");
  return {p.coefficients().begin(), p.coefficients().end()};
}

}  // namespace detail

/// Atoms of the one-dimensional Clark measure of p / q at alpha: the unimodular roots of
/// p - alpha q, weighted by 1 / |B'|. No mass check.
inline std::vector<CircleMeasure::Atom> clark_1d_atoms(std::vector<Complex> p, std::vector<Complex> q, Complex alpha) {
  detail::cancel_common_factors(p, q);
  if (p.size() <= 1 && q.size() <= 1) throw DegenerateError("slice is constant");
  std::vector<Complex> r(std::max(p.size(), q.size()), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] -= alpha * q[i];
  double scale = 0.0;
  for (const auto& c : r) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw DegenerateError("slice is identically equal to alpha");
  const auto dp = detail::derivative(p);
  const auto dq = detail::derivative(q);
  std::vector<CircleMeasure::Atom> atoms;
  for (Complex lambda : polynomial_roots(r)) {
    if (std::abs(std::abs(lambda) - 1.0) > unimodular_root_tolerance) {
      throw RootFindingError("root of phi = alpha off the unit circle");
    }
    lambda /= std::abs(lambda);
    const Complex qv = detail::horner(q, lambda);
    const Complex deriv =
        (detail::horner(dp, lambda) * qv - detail::horner(p, lambda) * detail::horner(dq, lambda)) / (qv * qv);
    atoms.push_back({lambda, 1.0 / std::abs(deriv)});
  }
  return atoms;
}

/// Clark measure of a finite Blaschke product B at alpha.
inline CircleMeasure clark_1d(const RationalMap& b, Complex alpha) {
  if (b.dimension() != 1) throw InvalidArgument("clark_1d needs a map of one variable");
  alpha = unimodular(alpha);
  auto atoms = clark_1d_atoms(detail::univariate_coefficients(b.numerator()),
                              detail::univariate_coefficients(b.denominator()), alpha);
  const Complex b0 = b(Complex(0.0));
  if (std::abs(alpha - b0) < 1e-14) throw SingularityError("B(0) coincides with alpha");
  const double expected = (1.0 - std::norm(b0)) / std::norm(alpha - b0);
  double mass = 0.0;
  for (const auto& a : atoms) mass += a.weight;
  if (std::abs(mass - expected) > 1e-8 * std::max(1.0, expected)) {
    throw RootFindingError("atoms do not carry the Clark mass; the map is not a finite Blaschke product");
  }
  return CircleMeasure::atomic_set(std::move(atoms));
}

/// Fiber of the graph construction over xi: roots eta of phi(xi, .) = alpha with weights
/// 1 / |d phi / d z2 (xi, eta)|. Degenerate slices have an empty fiber.
inline std::vector<TorusMeasure::FiberPoint> vertical_fiber(const RationalMap& phi, Complex alpha, Complex xi) {
  std::vector<TorusMeasure::FiberPoint> out;
  try {
    const RationalMap s = vertical_slice(phi, 0, xi);
    for (const auto& a : clark_1d_atoms(detail::univariate_coefficients(s.numerator()),
                                        detail::univariate_coefficients(s.denominator()), alpha)) {
      out.push_back({a.position, a.weight});
    }
  } catch (const DegenerateError&) {
    out.clear();
  } catch (const PoleError&) {
    out.clear();
  }
  return out;
}

struct GraphSample {
  double angle;
  std::size_t branch;
  double eta_angle;
  double weight;
};

struct GraphConstruction {
  TorusMeasure measure;
  std::vector<GraphSample> table;
  bool discontinuity = false;
  std::vector<double> collision_angles;
  std::vector<double> degenerate_angles;
};

inline double circular_distance(Complex a, Complex b) { return std::abs(std::arg(a * std::conj(b))); }

inline double angle_of(Complex z) {
  const double a = std::arg(z);
  // Adding 0.0 turns -0 into +0.
  return a < 0.0 ? a + two_pi : a + 0.0;
}

/// Graph-type Clark measure of an inner map of two variables, parameterized by zeta_1.
/// The branch table samples xi_k = exp(2 pi i k / samples).
inline GraphConstruction clark_graph_2d(const RationalMap& phi, Complex alpha, std::size_t samples = 512) {
  if (phi.dimension() != 2) throw InvalidArgument("graph construction needs a map of two variables");
  if (samples < 2) throw InvalidArgument("graph table needs at least two samples");
  alpha = unimodular(alpha);
  GraphConstruction g{TorusMeasure::graph(
      0, [phi, alpha](Complex xi) { return vertical_fiber(phi, alpha, xi); }, "clark_graph")};
  const double spacing = two_pi / static_cast<double>(samples);
  std::vector<Complex> previous;
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = spacing * static_cast<double>(k);
    const Complex xi = from_turns(static_cast<double>(k) / static_cast<double>(samples));
    const auto fiber = vertical_fiber(phi, alpha, xi);
    if (fiber.empty()) g.degenerate_angles.push_back(theta);
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      for (std::size_t j = i + 1; j < fiber.size(); ++j) {
        if (std::abs(fiber[i].eta - fiber[j].eta) < collision_distance) g.collision_angles.push_back(theta);
      }
    }
    // Assign branch labels by nearest circular distance to the previous sample.
    std::vector<std::size_t> label(fiber.size());
    if (!previous.empty() && previous.size() == fiber.size()) {
      std::vector<bool> used(fiber.size(), false);
      for (std::size_t b = 0; b < previous.size(); ++b) {
        std::size_t best = fiber.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < fiber.size(); ++i) {
          const double d = circular_distance(fiber[i].eta, previous[b]);
          if (!used[i] && d < best_d) {
            best_d = d;
            best = i;
          }
        }
        used[best] = true;
        label[best] = b;
        if (best_d > 10.0 * spacing) g.discontinuity = true;
      }
    } else {
      if (!previous.empty()) g.discontinuity = true;
      for (std::size_t i = 0; i < fiber.size(); ++i) label[i] = i;
    }
    std::vector<Complex> current(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      current[label[i]] = fiber[i].eta;
      g.table.push_back({theta, label[i], angle_of(fiber[i].eta), fiber[i].weight});
    }
    std::stable_sort(g.table.end() - static_cast<std::ptrdiff_t>(fiber.size()), g.table.end(),
                     [](const GraphSample& a, const GraphSample& b) { return a.branch < b.branch; });
    if (!fiber.empty()) previous = std::move(current);
  }
  return g;
}

struct RejectedAttempt {
  std::string representation;
  double poisson_match_residual;
  double mass_residual;
  std::string reason;
};

struct ClarkCertificate {
  std::string representation;
  double poisson_match_residual = std::numeric_limits<double>::infinity();
  double mass_residual = std::numeric_limits<double>::infinity();
  bool exceptional = false;
  bool accepted = false;
  /// Empty, "closed_form" or "radial_approximant".
  std::string fallback;
  std::vector<RejectedAttempt> rejected;
  std::optional<InnerCertificate> inner;
};

struct ClarkConstruction {
  Complex alpha;
  TorusMeasure measure;
  ClarkCertificate certificate;
  std::optional<GraphConstruction> graph;
};

/// Fixed 25-point panel of interior points: radii {0, .25, .5, .7, .85} per coordinate and
/// angles that are multiples of pi / 4. The first point is the origin.
inline std::vector<DiscPoint> poisson_panel(std::size_t n) {
  static constexpr double radii[] = {0.0, 0.25, 0.5, 0.7, 0.85};
  std::vector<DiscPoint> panel;
  for (std::size_t i = 0; i < 25; ++i) {
    std::vector<Complex> z(n);
    const int p = static_cast<int>(i % 8);
    const int s = static_cast<int>((3 * i + 1) % 8);
    z[0] = radii[i / 5] * from_turns(p / 8.0);
    if (n > 1) z[1] = radii[i % 5] * from_turns(s / 8.0);
    for (std::size_t j = 2; j < n; ++j) z[j] = (i == 0 ? 0.0 : 0.3) * from_turns(static_cast<double>(i + j) / 8.0);
    panel.emplace_back(std::move(z));
  }
  return panel;
}

/// Poisson-match and mass residuals of a candidate measure.
inline std::pair<double, double> certify(const TorusMeasure& mu, const RationalMap& phi, Complex alpha,
                                         const QuadratureSpec& q) {
  const auto panel = poisson_panel(phi.dimension());
  const auto values = integrate_many(
      mu, panel.size() + 1,
      [&](std::span<const Complex> zeta, std::span<Complex> out) {
        for (std::size_t i = 0; i < panel.size(); ++i) out[i] = poisson_product(panel[i].coords(), zeta);
        out[panel.size()] = 1.0;
      },
      q);
  double worst = 0.0;
  for (std::size_t i = 0; i < panel.size(); ++i) {
    worst = std::max(worst, std::abs(values[i].real() - clark_symbol(phi, alpha, panel[i])));
  }
  const double mass = std::abs(values[panel.size()].real() - clark_symbol(phi, alpha, DiscPoint::origin(phi.dimension())));
  if (!std::isfinite(worst)) worst = std::numeric_limits<double>::infinity();
  return {worst, mass};
}

/// phi restricted to coordinate j with every other coordinate frozen at 0.
inline RationalMap restrict_to_coordinate(const RationalMap& phi, std::size_t j) {
  Polynomial num = phi.numerator();
  Polynomial den = phi.denominator();
  for (std::size_t i = phi.dimension(); i-- > 0;) {
    if (i == j || num.variables() == 1) continue;
    num = num.freeze(i, 0.0);
    den = den.freeze(i, 0.0);
  }
  return RationalMap(std::move(num), std::move(den));
}

inline bool same_map(const RationalMap& a, const RationalMap& b) {
  auto eq = [](const Polynomial& x, const Polynomial& y) {
    if (x.degrees() != y.degrees()) return false;
    for (std::size_t i = 0; i < x.coefficients().size(); ++i) {
      if (std::abs(x.coefficients()[i] - y.coefficients()[i]) > 1e-15) return false;
    }
    return true;
  };
  return eq(a.numerator(), b.numerator()) && eq(a.denominator(), b.denominator());
}

/// Radial approximant u_r(zeta) = (1 - |phi(r zeta)|^2) / |alpha - phi(r zeta)|^2 as an a.c. measure.
inline TorusMeasure radial_approximant(const RationalMap& phi, Complex alpha, double r) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("radius must lie in (0,1)");
  return TorusMeasure::abs_cont(
      phi.dimension(),
      [phi, alpha, r](std::span<const Complex> zeta) {
        std::vector<Complex> z(zeta.begin(), zeta.end());
        for (auto& c : z) c *= r;
        const Complex v = phi(z);
        return (1.0 - std::norm(v)) / std::norm(alpha - v);
      },
      "radial_approximant");
}

/// Closed forms for points where the generic constructions are known to fail.
inline std::optional<TorusMeasure> closed_form_special_case(const RationalMap& phi, Complex alpha) {
  if (same_map(phi, catalog("rational_example")) && std::abs(alpha + 1.0) < 1e-12) {
    // Half of the mass on each coordinate circle through -1; the mass identity fixes the 1/2.
    return TorusMeasure::sum(
        {{0.5, TorusMeasure::product({CircleMeasure::atom(-1.0), CircleMeasure::lebesgue()})},
         {0.5, TorusMeasure::product({CircleMeasure::lebesgue(), CircleMeasure::atom(-1.0)})}});
  }
  return std::nullopt;
}

/// Builds sigma_alpha[phi] and certifies it against the Poisson integral on a fixed panel.
/// Dispatch: one-coordinate maps give products, certified inner maps of two variables give
/// graphs, anything else an a.c. measure. A rejected candidate triggers the fallbacks.
inline ClarkConstruction construct_clark(const RationalMap& phi, Complex alpha, const QuadratureSpec& q,
                                         std::size_t graph_samples = 512) {
  q.validate();
  alpha = unimodular(alpha);
  const std::size_t n = phi.dimension();
  ClarkCertificate cert;
  std::optional<GraphConstruction> graph;

  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < n; ++j) {
    if (phi.depends_on(j)) active.push_back(j);
  }

  auto attempt = [&](const std::string& tag, const TorusMeasure& mu) {
    try {
      const auto [poisson, mass] = certify(mu, phi, alpha, q);
      if (poisson < acceptance_threshold) {
        cert.representation = tag;
        cert.poisson_match_residual = poisson;
        cert.mass_residual = mass;
        return true;
      }
      cert.rejected.push_back({tag, poisson, mass, "Poisson match above threshold"});
    } catch (const Error& e) {
      cert.rejected.push_back(
          {tag, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), e.what()});
    }
    return false;
  };

  std::optional<TorusMeasure> chosen;
  if (active.size() == 1) {
    const std::size_t j = active.front();
    const RationalMap b = restrict_to_coordinate(phi, j);
    std::vector<CircleMeasure> comps(n, CircleMeasure::lebesgue());
    try {
      comps[j] = clark_1d(b, alpha);
    } catch (const Error&) {
      comps[j] = CircleMeasure::density(
          [b, alpha](Complex x) { return boundary_symbol(b, alpha, std::span<const Complex>(&x, 1)); },
          "clark_symbol");
    }
    auto mu = TorusMeasure::product(std::move(comps));
    if (attempt("product", mu)) chosen = std::move(mu);
  } else if (n == 2) {
    cert.inner = inner_certificate(phi, 64, 1e-10);
    if (cert.inner->passed) {
      try {
        auto g = clark_graph_2d(phi, alpha, graph_samples);
        if (attempt("graph", g.measure)) chosen = g.measure;
        graph = std::move(g);
      } catch (const Error& e) {
        cert.rejected.push_back(
            {"graph", std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), e.what()});
      }
    }
  }
  if (!chosen && cert.rejected.empty() && !(cert.inner && cert.inner->passed)) {
    auto mu = TorusMeasure::abs_cont(
        n, [phi, alpha](std::span<const Complex> zeta) { return boundary_symbol(phi, alpha, zeta); }, "clark_symbol");
    if (attempt("abs_cont", mu)) chosen = std::move(mu);
  }
  if (!chosen) {
    cert.exceptional = true;
    if (auto special = closed_form_special_case(phi, alpha); special && attempt("closed_form", *special)) {
      chosen = std::move(*special);
      cert.fallback = "closed_form";
    } else {
      const double r = q.radii.empty() ? 1.0 - 1.0 / 128.0 : q.radii.back();
      auto mu = radial_approximant(phi, alpha, r);
      cert.fallback = "radial_approximant";
      cert.representation = "radial_approximant";
      try {
        std::tie(cert.poisson_match_residual, cert.mass_residual) = certify(mu, phi, alpha, q);
      } catch (const Error&) {
      }
      chosen = std::move(mu);
    }
  }
  cert.accepted = cert.poisson_match_residual < acceptance_threshold;
  return {alpha, std::move(*chosen), std::move(cert), std::move(graph)};
}

/// Largest |phi(zeta) - alpha| over support samples carrying positive weight.
inline double singular_support_residual(const TorusMeasure& mu, const RationalMap& phi, Complex alpha,
                                        std::size_t samples = 512) {
  double worst = 0.0;
  for (const auto& s : support_samples(mu, samples)) {
    if (!(s.weight > 0.0)) continue;
    const Complex v = phi.boundary_value(s.point);
    if (std::isfinite(v.real())) worst = std::max(worst, std::abs(v - alpha));
  }
  return worst;
}

/// Integrals of k_out functions against the radial approximants u_r dm over the schedule,
/// extrapolated in h = 1 - r to h = 0.
inline std::vector<Complex> weakstar_integrate_many(const RationalMap& phi, Complex alpha, std::size_t k_out,
                                                    const TorusIntegrand& f, const QuadratureSpec& q) {
  q.validate();
  alpha = unimodular(alpha);
  if (q.radii.size() < 2) throw InvalidArgument("weak-* extrapolation needs at least two radii");
  std::vector<double> h;
  std::vector<std::vector<Complex>> values(k_out);
  for (double r : q.radii) {
    QuadratureSpec qr = q;
    const double needed = 8.0 / (1.0 - r);
    if (q.scale_nodes) {
      qr.nodes_per_dim = static_cast<int>(std::ceil(q.node_factor / (1.0 - r)));
      qr.max_nodes = std::max(qr.max_nodes, qr.nodes_per_dim);
    } else if (q.nodes_per_dim < needed) {
      throw ResolutionError("nodes_per_dim below 8 / (1 - r)");
    }
    const auto mu = radial_approximant(phi, alpha, r);
    const auto v = integrate_many(mu, k_out, f, qr);
    h.push_back(1.0 - r);
    for (std::size_t c = 0; c < k_out; ++c) values[c].push_back(v[c]);
  }
  std::vector<Complex> out(k_out);
  for (std::size_t c = 0; c < k_out; ++c) {
    out[c] = richardson_extrapolate<Complex>(h, values[c], q.extrapolation_order);
  }
  return out;
}

inline Complex weakstar_integrate(const RationalMap& phi, Complex alpha, const ScalarFunction& f,
                                  const QuadratureSpec& q) {
  return weakstar_integrate_many(
      phi, alpha, 1, [&](std::span<const Complex> z, std::span<Complex> out) { out[0] = f(z); }, q)[0];
}

/// Clark measure of the diagonal slice lambda -> phi(lambda zeta), as a measure in lambda.
struct SliceMeasure {
  CircleMeasure measure;
  TorusPoint direction;

  /// Integral of f(lambda zeta) d measure(lambda).
  Complex integrate(const ScalarFunction& f, const QuadratureSpec& q) const {
    std::vector<Complex> pt(direction.size());
    return measure.integrate(
        [&](Complex lambda) {
          for (std::size_t j = 0; j < pt.size(); ++j) pt[j] = lambda * direction[j];
          return f(pt);
        },
        q);
  }

  /// The slice as a measure on the circle T zeta inside T^2.
  TorusMeasure pushforward() const {
    if (direction.size() != 2) throw InvalidArgument("pushforward is implemented on T^2");
    const Complex z1 = direction[0];
    const Complex z2 = direction[1];
    if (measure.is_discrete()) {
      std::vector<TorusMeasure::PointMass> atoms;
      for (const auto& a : measure.atoms()) atoms.push_back({{a.position * z1, a.position * z2}, a.weight});
      return TorusMeasure::atomic(std::move(atoms));
    }
    const CircleMeasure m = measure;
    return TorusMeasure::single_branch(
        0, [z1, z2](Complex xi) { return xi * std::conj(z1) * z2; },
        [m, z1](Complex xi) { return m.density_at(xi * std::conj(z1)); }, "slice");
  }
};

/// True when |B| = 1 to 1e-10 on 64 points of the circle.
inline bool looks_inner_1d(const RationalMap& b) {
  for (int k = 0; k < 64; ++k) {
    const Complex v = b.boundary_value(std::vector<Complex>{std::polar(1.0, grid_angle(k, 64, 64))});
    if (!std::isfinite(v.real()) || std::abs(std::abs(v) - 1.0) > 1e-10) return false;
  }
  return true;
}

inline SliceMeasure slice_measure(const RationalMap& phi, Complex alpha, const TorusPoint& zeta) {
  alpha = unimodular(alpha);
  const RationalMap b = diag_slice(phi, zeta);
  if (!b.depends_on(0)) {
    // A constant c inside the disc has the multiple (1 - |c|^2) / |alpha - c|^2 of Lebesgue measure.
    const Complex c = b(Complex(0.0));
    if (std::abs(c) >= 1.0 - 1e-12) throw DegenerateError("diagonal slice is a unimodular constant");
    const double u = (1.0 - std::norm(c)) / std::norm(alpha - c);
    return {CircleMeasure::density([u](Complex) { return u; }, "constant"), zeta};
  }
  if (looks_inner_1d(b)) return {clark_1d(b, alpha), zeta};
  return {CircleMeasure::density(
              [b, alpha](Complex x) { return boundary_symbol(b, alpha, std::span<const Complex>(&x, 1)); },
              "slice_symbol"),
          zeta};
}

/// |integral of f d sigma_alpha - average over a zeta grid of the slice integrals|, one per f.
/// The zeta grid has nodes_per_dim points per coordinate.
inline std::vector<double> verify_slice_decomposition(const TorusMeasure& sigma, const RationalMap& phi,
                                                      Complex alpha, const std::vector<ScalarFunction>& fs,
                                                      const QuadratureSpec& q) {
  const std::size_t k = fs.size();
  const auto lhs = integrate_many(
      sigma, k,
      [&](std::span<const Complex> z, std::span<Complex> out) {
        for (std::size_t c = 0; c < k; ++c) out[c] = fs[c](z);
      },
      q);
  const std::size_t n = phi.dimension();
  const auto g = static_cast<std::size_t>(q.nodes_per_dim);
  std::vector<std::vector<Complex>> columns(k);
  std::vector<std::size_t> idx(n, 0);
  std::vector<Complex> zeta(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) zeta[j] = std::polar(1.0, grid_angle(idx[j], g, g));
    try {
      const auto s = slice_measure(phi, alpha, TorusPoint(zeta));
      for (std::size_t c = 0; c < k; ++c) columns[c].push_back(s.integrate(fs[c], q));
    } catch (const DegenerateError&) {
      // A unimodular constant slice has the zero Clark measure.
      for (std::size_t c = 0; c < k; ++c) columns[c].push_back(0.0);
    }
    std::size_t j = n;
    while (j-- > 0) {
      if (++idx[j] < g) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  std::vector<double> res(k);
  for (std::size_t c = 0; c < k; ++c) {
    const Complex rhs = pairwise_sum<Complex>(columns[c]) / static_cast<double>(columns[c].size());
    res[c] = std::abs(lhs[c] - rhs);
  }
  return res;
}

inline std::vector<double> verify_slice_decomposition(const RationalMap& phi, Complex alpha,
                                                      const std::vector<ScalarFunction>& fs,
                                                      const QuadratureSpec& q) {
  const auto sigma = construct_clark(phi, alpha, q);
  return verify_slice_decomposition(sigma.measure, phi, alpha, fs, q);
}

/// alpha_k = exp(2 pi i k / m), k = 0..m-1.
inline std::vector<Complex> alpha_grid(std::size_t m) {
  std::vector<Complex> a(m);
  for (std::size_t k = 0; k < m; ++k) a[k] = from_turns(static_cast<double>(k) / static_cast<double>(m));
  return a;
}

/// |average over the alpha grid of integral f d sigma_alpha - integral f dm_n|, one per f.
inline std::vector<double> verify_disintegration(const RationalMap& phi, const std::vector<ScalarFunction>& fs,
                                                 const QuadratureSpec& q, std::size_t m = 128) {
  if (m < 64) throw InvalidArgument("disintegration needs an alpha grid of at least 64 points");
  const std::size_t k = fs.size();
  const TorusIntegrand all = [&](std::span<const Complex> z, std::span<Complex> out) {
    for (std::size_t c = 0; c < k; ++c) out[c] = fs[c](z);
  };
  std::vector<std::vector<Complex>> columns(k);
  for (Complex alpha : alpha_grid(m)) {
    const auto sigma = construct_clark(phi, alpha, q);
    const auto v = integrate_many(sigma.measure, k, all, q);
    for (std::size_t c = 0; c < k; ++c) columns[c].push_back(v[c]);
  }
  const auto rhs = lebesgue_integrate(phi.dimension(), k, all, q);
  std::vector<double> res(k);
  for (std::size_t c = 0; c < k; ++c) {
    res[c] = std::abs(pairwise_sum<Complex>(columns[c]) / static_cast<double>(m) - rhs[c]);
  }
  return res;
}

struct ContinuityScan {
  std::vector<Complex> alphas;
  std::vector<Complex> integrals;
  /// increments[k] = |integral at alpha_{k+1} - integral at alpha_k|, cyclically.
  std::vector<double> increments;
  double max_increment = 0.0;
};

inline ContinuityScan alpha_continuity_scan(const RationalMap& phi, const ScalarFunction& f, std::size_t m,
                                            const QuadratureSpec& q) {
  if (m < 2) throw InvalidArgument("continuity scan needs at least two alphas");
  ContinuityScan s;
  s.alphas = alpha_grid(m);
  for (Complex alpha : s.alphas) s.integrals.push_back(integrate(construct_clark(phi, alpha, q).measure, f, q));
  for (std::size_t k = 0; k < m; ++k) {
    s.increments.push_back(std::abs(s.integrals[(k + 1) % m] - s.integrals[k]));
    s.max_increment = std::max(s.max_increment, s.increments.back());
  }
  return s;
}

}  // namespace polyclark

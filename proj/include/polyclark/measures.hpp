#pragma once

// Closed-form complex measures on the circle and on the torus, and integration against them.
//
// Fourier convention: mu_hat(k) = integral of conj(zeta_1)^k_1 ... conj(zeta_n)^k_n d mu.
// A measure is pluriharmonic iff mu_hat vanishes at every k with entries of both signs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polyclark/core.hpp"
#include "polyclark/kernels.hpp"
#include "polyclark/quadrature.hpp"

namespace polyclark {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class CircleMeasure {
 public:
  /// Normalized arc length.
  struct Lebesgue {};
  struct Atom {
    Complex position;
    double weight;
  };
  struct AtomicSet {
    std::vector<Atom> atoms;
  };
  struct Density {
    std::function<double(Complex)> weight;
    std::string label;
  };
  using Variant = std::variant<Lebesgue, Atom, AtomicSet, Density>;

  static CircleMeasure lebesgue() { return CircleMeasure(Lebesgue{}); }
  static CircleMeasure atom(Complex position, double weight = 1.0) {
    return CircleMeasure(Atom{unimodular(position), weight});
  }
  static CircleMeasure atomic_set(std::vector<Atom> atoms) {
    for (auto& a : atoms) a.position = unimodular(a.position);
    return CircleMeasure(AtomicSet{std::move(atoms)});
  }
  static CircleMeasure density(std::function<double(Complex)> w, std::string label = {}) {
    return CircleMeasure(Density{std::move(w), std::move(label)});
  }

  const Variant& variant() const { return v_; }
  bool is_discrete() const { return std::holds_alternative<Atom>(v_) || std::holds_alternative<AtomicSet>(v_); }

  /// Atoms of a discrete measure; empty for the continuous variants.
  std::vector<Atom> atoms() const {
    if (const auto* a = std::get_if<Atom>(&v_)) return {*a};
    if (const auto* s = std::get_if<AtomicSet>(&v_)) return s->atoms;
    return {};
  }

  /// Weight of the continuous part at x (1 for Lebesgue).
  double density_at(Complex x) const {
    if (std::holds_alternative<Lebesgue>(v_)) return 1.0;
    if (const auto* d = std::get_if<Density>(&v_)) return d->weight(x);
    return 0.0;
  }

  Complex integrate(const std::function<Complex(Complex)>& f, const QuadratureSpec& q) const {
    if (is_discrete()) {
      std::vector<Complex> terms;
      for (const auto& a : atoms()) terms.push_back(a.weight * f(a.position));
      return pairwise_sum<Complex>(terms);
    }
    return lebesgue_integrate(
        1, 1, [&](std::span<const Complex> x, std::span<Complex> out) { out[0] = density_at(x[0]) * f(x[0]); },
        q)[0];
  }

  double mass(const QuadratureSpec& q) const {
    return integrate([](Complex) { return Complex(1.0); }, q).real();
  }

 private:
  explicit CircleMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

using ScalarFunction = std::function<Complex(std::span<const Complex>)>;

class TorusMeasure {
 public:
  struct Product {
    std::vector<CircleMeasure> components;
  };
  struct FiberPoint {
    Complex eta;
    double weight;
  };
  /// Mass on the curve {zeta_j = xi, zeta_other = eta_k(xi)} with weights w_k(xi) d m(xi).
  /// The fiber callable returns every (eta_k, w_k) over xi. Two-dimensional only.
  struct Graph {
    std::size_t parameter_coordinate = 0;
    std::function<std::vector<FiberPoint>(Complex)> fiber;
    std::string label;
  };
  struct AbsCont {
    std::size_t dimension;
    std::function<double(std::span<const Complex>)> density;
    std::string label;
  };
  struct PointMass {
    std::vector<Complex> point;
    Complex weight;
  };
  struct Atomic {
    std::size_t dimension;
    std::vector<PointMass> atoms;
  };
  struct Term {
    double coefficient;
    std::shared_ptr<const TorusMeasure> measure;
  };
  struct Sum {
    std::vector<Term> terms;
  };
  using Variant = std::variant<Product, Graph, AbsCont, Atomic, Sum>;

  static TorusMeasure product(std::vector<CircleMeasure> components) {
    if (components.empty()) throw InvalidArgument("product measure needs components");
    return TorusMeasure(Product{std::move(components)});
  }
  static TorusMeasure graph(std::size_t parameter_coordinate, std::function<std::vector<FiberPoint>(Complex)> fiber,
                            std::string label = {}) {
    if (parameter_coordinate > 1) throw InvalidArgument("graph parameter coordinate must be 0 or 1");
    return TorusMeasure(Graph{parameter_coordinate, std::move(fiber), std::move(label)});
  }
  /// Graph with one branch eta(xi) and weight w(xi).
  static TorusMeasure single_branch(std::size_t parameter_coordinate, std::function<Complex(Complex)> eta,
                                    std::function<double(Complex)> weight, std::string label = {}) {
    return graph(
        parameter_coordinate,
        [eta = std::move(eta), weight = std::move(weight)](Complex xi) {
          return std::vector<FiberPoint>{{eta(xi), weight(xi)}};
        },
        std::move(label));
  }
  static TorusMeasure abs_cont(std::size_t dimension, std::function<double(std::span<const Complex>)> density,
                               std::string label = {}) {
    return TorusMeasure(AbsCont{dimension, std::move(density), std::move(label)});
  }
  static TorusMeasure atomic(std::vector<PointMass> atoms) {
    if (atoms.empty()) throw InvalidArgument("atomic measure needs at least one atom");
    const std::size_t n = atoms.front().point.size();
    for (auto& a : atoms) {
      if (a.point.size() != n) throw InvalidArgument("atoms of different dimensions");
      const TorusPoint t(a.point);
      a.point.assign(t.coords().begin(), t.coords().end());
    }
    return TorusMeasure(Atomic{n, std::move(atoms)});
  }
  static TorusMeasure sum(std::vector<std::pair<double, TorusMeasure>> terms) {
    if (terms.empty()) throw InvalidArgument("sum measure needs terms");
    Sum s;
    for (auto& [c, m] : terms) s.terms.push_back({c, std::make_shared<const TorusMeasure>(std::move(m))});
    const std::size_t n = s.terms.front().measure->dimension();
    for (const auto& t : s.terms) {
      if (t.measure->dimension() != n) throw InvalidArgument("sum of measures of different dimensions");
    }
    return TorusMeasure(std::move(s));
  }

  const Variant& variant() const { return v_; }

  std::size_t dimension() const {
    return std::visit(overloaded{[](const Product& p) { return p.components.size(); },
                                 [](const Graph&) { return std::size_t{2}; },
                                 [](const AbsCont& a) { return a.dimension; },
                                 [](const Atomic& a) { return a.dimension; },
                                 [](const Sum& s) { return s.terms.front().measure->dimension(); }},
                      v_);
  }

  std::string tag() const {
    return std::visit(overloaded{[](const Product&) { return std::string("product"); },
                                 [](const Graph&) { return std::string("graph"); },
                                 [](const AbsCont&) { return std::string("abs_cont"); },
                                 [](const Atomic&) { return std::string("atomic"); },
                                 [](const Sum&) { return std::string("sum"); }},
                      v_);
  }

 private:
  explicit TorusMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Integrals of k_out functions at once: out[c] = integral of f_c d mu.
/// Atoms are summed exactly; continuous parts use the adaptive periodic rules of quadrature.hpp.
inline std::vector<Complex> integrate_many(const TorusMeasure& mu, std::size_t k_out, const TorusIntegrand& f,
                                           const QuadratureSpec& q) {
  using TM = TorusMeasure;
  return std::visit(
      overloaded{
          [&](const TM::Product& p) {
            const std::size_t n = p.components.size();
            std::vector<std::size_t> discrete;
            std::vector<std::size_t> continuous;
            std::vector<std::vector<CircleMeasure::Atom>> atoms(n);
            for (std::size_t j = 0; j < n; ++j) {
              if (p.components[j].is_discrete()) {
                discrete.push_back(j);
                atoms[j] = p.components[j].atoms();
              } else {
                continuous.push_back(j);
              }
            }
            std::vector<std::vector<Complex>> columns(k_out);
            std::vector<std::size_t> pick(discrete.size(), 0);
            std::vector<Complex> pt(n);
            std::vector<Complex> tmp(k_out);
            while (true) {
              double w = 1.0;
              for (std::size_t i = 0; i < discrete.size(); ++i) {
                const auto& a = atoms[discrete[i]][pick[i]];
                pt[discrete[i]] = a.position;
                w *= a.weight;
              }
              auto part = lebesgue_integrate(
                  continuous.size(), k_out,
                  [&](std::span<const Complex> x, std::span<Complex> out) {
                    double dens = 1.0;
                    for (std::size_t i = 0; i < continuous.size(); ++i) {
                      pt[continuous[i]] = x[i];
                      dens *= p.components[continuous[i]].density_at(x[i]);
                    }
                    f(pt, out);
                    for (auto& o : out) o *= dens;
                  },
                  q);
              for (std::size_t c = 0; c < k_out; ++c) columns[c].push_back(w * part[c]);
              std::size_t i = discrete.size();
              while (i-- > 0) {
                if (++pick[i] < atoms[discrete[i]].size()) break;
                pick[i] = 0;
              }
              if (i == static_cast<std::size_t>(-1)) break;
            }
            std::vector<Complex> res(k_out);
            for (std::size_t c = 0; c < k_out; ++c) res[c] = pairwise_sum<Complex>(columns[c]);
            return res;
          },
          [&](const TM::Graph& g) {
            std::vector<Complex> acc(k_out);
            return lebesgue_integrate(
                1, k_out,
                [&](std::span<const Complex> x, std::span<Complex> out) {
                  std::fill(out.begin(), out.end(), Complex(0.0));
                  Complex pt[2];
                  for (const auto& fp : g.fiber(x[0])) {
                    pt[g.parameter_coordinate] = x[0];
                    pt[1 - g.parameter_coordinate] = fp.eta;
                    f(std::span<const Complex>(pt, 2), acc);
                    for (std::size_t c = 0; c < k_out; ++c) out[c] += fp.weight * acc[c];
                  }
                },
                q);
          },
          [&](const TM::AbsCont& a) {
            return lebesgue_integrate(
                a.dimension, k_out,
                [&](std::span<const Complex> x, std::span<Complex> out) {
                  const double dens = a.density(x);
                  f(x, out);
                  for (auto& o : out) o *= dens;
                },
                q);
          },
          [&](const TM::Atomic& a) {
            std::vector<std::vector<Complex>> columns(k_out);
            std::vector<Complex> tmp(k_out);
            for (const auto& pm : a.atoms) {
              f(pm.point, tmp);
              for (std::size_t c = 0; c < k_out; ++c) columns[c].push_back(pm.weight * tmp[c]);
            }
            std::vector<Complex> res(k_out);
            for (std::size_t c = 0; c < k_out; ++c) res[c] = pairwise_sum<Complex>(columns[c]);
            return res;
          },
          [&](const TM::Sum& s) {
            std::vector<Complex> res(k_out, 0.0);
            for (const auto& t : s.terms) {
              const auto part = integrate_many(*t.measure, k_out, f, q);
              for (std::size_t c = 0; c < k_out; ++c) res[c] += t.coefficient * part[c];
            }
            return res;
          }},
      mu.variant());
}

inline Complex integrate(const TorusMeasure& mu, const ScalarFunction& f, const QuadratureSpec& q) {
  return integrate_many(
      mu, 1, [&](std::span<const Complex> z, std::span<Complex> out) { out[0] = f(z); }, q)[0];
}

/// True when integration against mu involves a quadrature rule (anything but pure atoms).
inline bool uses_quadrature(const TorusMeasure& mu) {
  using TM = TorusMeasure;
  return std::visit(overloaded{[](const TM::Product& p) {
                                 return std::any_of(p.components.begin(), p.components.end(),
                                                    [](const CircleMeasure& c) { return !c.is_discrete(); });
                               },
                               [](const TM::Graph&) { return true; }, [](const TM::AbsCont&) { return true; },
                               [](const TM::Atomic&) { return false; },
                               [](const TM::Sum& s) {
                                 return std::any_of(s.terms.begin(), s.terms.end(),
                                                    [](const TM::Term& t) { return uses_quadrature(*t.measure); });
                               }},
                    mu.variant());
}

/// True when mu carries an absolutely continuous part structurally.
inline bool has_abs_cont_part(const TorusMeasure& mu) {
  using TM = TorusMeasure;
  return std::visit(overloaded{[](const TM::Product& p) {
                                 return std::none_of(p.components.begin(), p.components.end(),
                                                     [](const CircleMeasure& c) { return c.is_discrete(); });
                               },
                               [](const TM::Graph&) { return false; }, [](const TM::AbsCont&) { return true; },
                               [](const TM::Atomic&) { return false; },
                               [](const TM::Sum& s) {
                                 return std::any_of(s.terms.begin(), s.terms.end(),
                                                    [](const TM::Term& t) { return has_abs_cont_part(*t.measure); });
                               }},
                    mu.variant());
}

/// Rejects structurally negative pieces: negative atoms, negative sum coefficients.
/// Densities and graph weights are checked by sampling in positivity_violation().
inline void require_positive(const TorusMeasure& mu) {
  using TM = TorusMeasure;
  std::visit(overloaded{[](const TM::Product& p) {
                          for (const auto& c : p.components) {
                            for (const auto& a : c.atoms()) {
                              if (a.weight < 0.0) throw NegativeMassError("negative atom in product component");
                            }
                          }
                        },
                        [](const TM::Graph&) {}, [](const TM::AbsCont&) {},
                        [](const TM::Atomic& a) {
                          for (const auto& pm : a.atoms) {
                            if (pm.weight.real() < 0.0 || pm.weight.imag() != 0.0) {
                              throw NegativeMassError("atom weight is not a nonnegative real");
                            }
                          }
                        },
                        [](const TM::Sum& s) {
                          for (const auto& t : s.terms) {
                            if (t.coefficient < 0.0) throw NegativeMassError("negative coefficient in sum");
                            require_positive(*t.measure);
                          }
                        }},
             mu.variant());
}

inline double total_mass(const TorusMeasure& mu, const QuadratureSpec& q) {
  require_positive(mu);
  return integrate(mu, [](std::span<const Complex>) { return Complex(1.0); }, q).real();
}

/// conj(zeta)^k with negative entries meaning positive powers of zeta (on the torus).
inline Complex character_conj(std::span<const Complex> zeta, std::span<const int> k) {
  Complex v = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const Complex base = k[j] >= 0 ? std::conj(zeta[j]) : zeta[j];
    for (int e = 0; e < std::abs(k[j]); ++e) v *= base;
  }
  return v;
}

inline void check_aliasing(const TorusMeasure& mu, std::span<const std::vector<int>> ks, const QuadratureSpec& q) {
  if (!uses_quadrature(mu)) return;
  const int limit = q.nodes_per_dim / 2 - 1;
  for (const auto& k : ks) {
    for (int kj : k) {
      if (std::abs(kj) > limit) throw AliasingError("Fourier index beyond nodes_per_dim / 2 - 1");
    }
  }
}

inline std::vector<Complex> fourier_coeffs(const TorusMeasure& mu, std::span<const std::vector<int>> ks,
                                           const QuadratureSpec& q) {
  const std::size_t n = mu.dimension();
  for (const auto& k : ks) {
    if (k.size() != n) throw InvalidArgument("Fourier index has the wrong dimension");
  }
  check_aliasing(mu, ks, q);
  return integrate_many(
      mu, ks.size(),
      [&](std::span<const Complex> z, std::span<Complex> out) {
        for (std::size_t c = 0; c < ks.size(); ++c) out[c] = character_conj(z, ks[c]);
      },
      q);
}

inline Complex fourier_coeff(const TorusMeasure& mu, const std::vector<int>& k, const QuadratureSpec& q) {
  return fourier_coeffs(mu, std::span<const std::vector<int>>(&k, 1), q)[0];
}

struct PluriharmonicReport {
  bool passed = true;
  double max_abs = 0.0;
  struct Offender {
    std::vector<int> index;
    double magnitude;
  };
  std::vector<Offender> offending;
};

/// Indices in [-maxdeg, maxdeg]^n having both a positive and a negative entry.
inline std::vector<std::vector<int>> mixed_sign_indices(std::size_t n, int maxdeg) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(n, -maxdeg);
  while (true) {
    const bool pos = std::any_of(k.begin(), k.end(), [](int v) { return v > 0; });
    const bool neg = std::any_of(k.begin(), k.end(), [](int v) { return v < 0; });
    if (pos && neg) out.push_back(k);
    std::size_t j = n;
    while (j-- > 0) {
      if (++k[j] <= maxdeg) break;
      k[j] = -maxdeg;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

inline PluriharmonicReport pluriharmonic_support_check(const TorusMeasure& mu, int maxdeg, double tol,
                                                       const QuadratureSpec& q) {
  const auto ks = mixed_sign_indices(mu.dimension(), maxdeg);
  PluriharmonicReport report;
  if (ks.empty()) return report;
  const auto coeffs = fourier_coeffs(mu, ks, q);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double m = std::abs(coeffs[i]);
    report.max_abs = std::max(report.max_abs, m);
    if (m > tol) {
      report.passed = false;
      report.offending.push_back({ks[i], m});
    }
  }
  return report;
}

inline double poisson_integral(const TorusMeasure& mu, const DiscPoint& z, const QuadratureSpec& q) {
  if (z.size() != mu.dimension()) throw DomainError("dimension mismatch");
  return integrate(mu, [&](std::span<const Complex> zeta) { return Complex(poisson_product(z.coords(), zeta)); }, q)
      .real();
}

inline Complex cauchy_transform(const TorusMeasure& mu, const DiscPoint& z, const QuadratureSpec& q) {
  if (z.size() != mu.dimension()) throw DomainError("dimension mismatch");
  return integrate(mu, [&](std::span<const Complex> zeta) { return cauchy_product(z.coords(), zeta); }, q);
}

/// Sample points on the support of mu, with the local weight or density at each.
/// Continuous directions are sampled on the offset grid with `count` nodes.
struct SupportSample {
  std::vector<Complex> point;
  double weight;
};

inline std::vector<SupportSample> support_samples(const TorusMeasure& mu, std::size_t count) {
  using TM = TorusMeasure;
  std::vector<SupportSample> out;
  std::visit(
      overloaded{
          [&](const TM::Product& p) {
            const std::size_t n = p.components.size();
            std::vector<std::vector<std::pair<Complex, double>>> per(n);
            for (std::size_t j = 0; j < n; ++j) {
              if (p.components[j].is_discrete()) {
                for (const auto& a : p.components[j].atoms()) per[j].push_back({a.position, a.weight});
              } else {
                for (std::size_t i = 0; i < count; ++i) {
                  const Complex x = std::polar(1.0, grid_angle(i, count, count));
                  per[j].push_back({x, p.components[j].density_at(x)});
                }
              }
            }
            std::vector<std::size_t> pick(n, 0);
            while (true) {
              SupportSample s{std::vector<Complex>(n), 1.0};
              for (std::size_t j = 0; j < n; ++j) {
                s.point[j] = per[j][pick[j]].first;
                s.weight *= per[j][pick[j]].second;
              }
              out.push_back(std::move(s));
              std::size_t j = n;
              while (j-- > 0) {
                if (++pick[j] < per[j].size()) break;
                pick[j] = 0;
              }
              if (j == static_cast<std::size_t>(-1)) break;
            }
          },
          [&](const TM::Graph& g) {
            for (std::size_t i = 0; i < count; ++i) {
              const Complex xi = std::polar(1.0, grid_angle(i, count, count));
              for (const auto& fp : g.fiber(xi)) {
                std::vector<Complex> pt(2);
                pt[g.parameter_coordinate] = xi;
                pt[1 - g.parameter_coordinate] = fp.eta;
                out.push_back({std::move(pt), fp.weight});
              }
            }
          },
          [&](const TM::AbsCont& a) {
            std::vector<std::size_t> idx(a.dimension, 0);
            while (true) {
              std::vector<Complex> pt(a.dimension);
              for (std::size_t j = 0; j < a.dimension; ++j) pt[j] = std::polar(1.0, grid_angle(idx[j], count, count));
              const double w = a.density(pt);
              out.push_back({std::move(pt), w});
              std::size_t j = a.dimension;
              while (j-- > 0) {
                if (++idx[j] < count) break;
                idx[j] = 0;
              }
              if (j == static_cast<std::size_t>(-1)) break;
            }
          },
          [&](const TM::Atomic& a) {
            for (const auto& pm : a.atoms) out.push_back({pm.point, pm.weight.real()});
          },
          [&](const TM::Sum& s) {
            for (const auto& t : s.terms) {
              for (auto& smp : support_samples(*t.measure, count)) {
                smp.weight *= t.coefficient;
                out.push_back(std::move(smp));
              }
            }
          }},
      mu.variant());
  return out;
}

/// max(0, -smallest sampled weight); zero for a positive measure.
inline double positivity_violation(const TorusMeasure& mu, std::size_t count) {
  double worst = 0.0;
  for (const auto& s : support_samples(mu, count)) worst = std::max(worst, -s.weight);
  return worst;
}

}  // namespace polyclark

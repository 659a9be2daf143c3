#pragma once

// JSON and CSV encodings of maps, measures, certificates and scan tables.
// Complex numbers are [re, im] pairs; CSV floats are printed with 17 significant digits.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polyclark/clark.hpp"
#include "polyclark/model_space.hpp"

namespace polyclark {

using json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("complex number must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_json(c));
  return {{"degrees", p.degrees()}, {"coefficients", coeffs}};
}

inline Polynomial polynomial_from_json(const json& j) {
  std::vector<Complex> c;
  for (const auto& e : j.at("coefficients")) c.push_back(complex_from_json(e));
  return Polynomial(j.at("degrees").get<std::vector<int>>(), std::move(c));
}

/// {"dimension", "numerator": {"degrees", "coefficients"}, "denominator": {...}, "label"?}.
/// Coefficients are row-major by multi-degree, the last variable fastest.
inline json to_json(const RationalMap& phi) {
  json j = {{"dimension", phi.dimension()},
            {"numerator", to_json(phi.numerator())},
            {"denominator", to_json(phi.denominator())}};
  if (!phi.label().empty()) j["label"] = phi.label();
  return j;
}

inline RationalMap rational_map_from_json(const json& j) {
  auto num = polynomial_from_json(j.at("numerator"));
  auto den = polynomial_from_json(j.at("denominator"));
  if (j.contains("dimension") && j.at("dimension").get<std::size_t>() != num.variables()) {
    throw InvalidArgument("declared dimension does not match the coefficient grid");
  }
  return RationalMap(std::move(num), std::move(den), j.value("label", std::string{}));
}

inline json to_json(const CircleMeasure& m) {
  return std::visit(overloaded{[](const CircleMeasure::Lebesgue&) { return json{{"type", "lebesgue"}}; },
                               [](const CircleMeasure::Atom& a) {
                                 return json{{"type", "atom"}, {"position", to_json(a.position)}, {"weight", a.weight}};
                               },
                               [](const CircleMeasure::AtomicSet& s) {
                                 json atoms = json::array();
                                 for (const auto& a : s.atoms) {
                                   atoms.push_back({{"position", to_json(a.position)}, {"weight", a.weight}});
                                 }
                                 return json{{"type", "atomic_set"}, {"atoms", atoms}};
                               },
                               [](const CircleMeasure::Density& d) {
                                 return json{{"type", "density"}, {"label", d.label}};
                               }},
                    m.variant());
}

/// Graph measures carry their fiber as a table sampled at `samples` values of xi.
inline json to_json(const TorusMeasure& mu, std::size_t samples = 512) {
  using TM = TorusMeasure;
  return std::visit(
      overloaded{[&](const TM::Product& p) {
                   json comps = json::array();
                   for (const auto& c : p.components) comps.push_back(to_json(c));
                   return json{{"type", "product"}, {"components", comps}};
                 },
                 [&](const TM::Graph& g) {
                   json rows = json::array();
                   for (std::size_t k = 0; k < samples; ++k) {
                     const double turns = static_cast<double>(k) / static_cast<double>(samples);
                     for (const auto& fp : g.fiber(from_turns(turns))) {
                       rows.push_back({two_pi * turns, angle_of(fp.eta), fp.weight});
                     }
                   }
                   return json{{"type", "graph"},
                               {"parameter_coordinate", g.parameter_coordinate},
                               {"label", g.label},
                               {"columns", {"angle", "eta_angle", "weight"}},
                               {"samples", rows}};
                 },
                 [](const TM::AbsCont& a) {
                   return json{{"type", "abs_cont"}, {"dimension", a.dimension}, {"label", a.label}};
                 },
                 [](const TM::Atomic& a) {
                   json atoms = json::array();
                   for (const auto& pm : a.atoms) {
                     json pt = json::array();
                     for (const auto& c : pm.point) pt.push_back(to_json(c));
                     atoms.push_back({{"point", pt}, {"weight", to_json(pm.weight)}});
                   }
                   return json{{"type", "atomic"}, {"atoms", atoms}};
                 },
                 [&](const TM::Sum& s) {
                   json terms = json::array();
                   for (const auto& t : s.terms) {
                     terms.push_back({{"coefficient", t.coefficient}, {"measure", to_json(*t.measure, samples)}});
                   }
                   return json{{"type", "sum"}, {"terms", terms}};
                 }},
      mu.variant());
}

inline json to_json(const InnerCertificate& c) {
  return {{"max_boundary_deviation", c.max_boundary_deviation},
          {"max_interior_modulus", c.max_interior_modulus},
          {"grid_size", c.grid_size},
          {"pole_samples", c.pole_samples},
          {"passed", c.passed}};
}

/// Non-finite residuals are written as null.
inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const ClarkCertificate& c) {
  json rejected = json::array();
  for (const auto& r : c.rejected) {
    rejected.push_back({{"representation", r.representation},
                        {"poisson_match_residual", finite_or_null(r.poisson_match_residual)},
                        {"mass_residual", finite_or_null(r.mass_residual)},
                        {"reason", r.reason}});
  }
  json j = {{"representation", c.representation},
            {"poisson_match_residual", finite_or_null(c.poisson_match_residual)},
            {"mass_residual", finite_or_null(c.mass_residual)},
            {"exceptional", c.exceptional},
            {"accepted", c.accepted},
            {"fallback", c.fallback},
            {"rejected", rejected}};
  if (c.inner) j["inner_certificate"] = to_json(*c.inner);
  return j;
}

inline json to_json(const GramReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"degree", row.degree}, {"residual", row.residual}, {"condition", finite_or_null(row.condition)}});
  }
  return {{"alpha", to_json(r.alpha)},
          {"target", r.target},
          {"rows", rows},
          {"monotone", r.monotone},
          {"verdict", r.verdict}};
}

inline std::string graph_table_csv(const GraphConstruction& g) {
  std::ostringstream out;
  out << "angle,branch,eta_angle,weight\n";
  for (const auto& s : g.table) {
    out << format_double(s.angle) << ',' << s.branch << ',' << format_double(s.eta_angle) << ','
        << format_double(s.weight) << '\n';
  }
  return out.str();
}

inline std::string gram_report_csv(const GramReport& r) {
  std::ostringstream out;
  out << "degree,residual,condition\n";
  for (const auto& row : r.rows) {
    out << row.degree << ',' << format_double(row.residual) << ',' << format_double(row.condition) << '\n';
  }
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << content;
  if (!f) throw InvalidArgument("failed writing " + path);
}

}  // namespace polyclark

// polyclark: construct Clark measures, run the verification suite, scan over alpha.
//
// Exit codes: 0 success, 1 verification or construction failure, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyclark/serialize.hpp"
#include "polyclark/suite.hpp"

namespace fs = std::filesystem;
using namespace polyclark;

namespace {

struct RunConfig {
  std::string command;
  std::string phi = "rational_example";
  double alpha_turns = 0.0;
  int nodes = 256;
  std::vector<double> radii = default_radii();
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  int grid = 16;
  int maxdeg = 8;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json config_json(const RunConfig& c) {
  return {{"phi", c.phi},   {"alpha_turns", c.alpha_turns}, {"nodes", c.nodes}, {"radii", c.radii},
          {"format", c.format}, {"seed", c.seed},            {"grid", c.grid},   {"maxdeg", c.maxdeg}};
}

RationalMap load_phi(const std::string& selector) {
  for (const auto& name : catalog_names()) {
    if (selector == name) return catalog(name);
  }
  std::ifstream f(selector);
  if (!f) throw UsageError("--phi is neither a catalog name nor a readable file: " + selector);
  try {
    return rational_map_from_json(json::parse(f));
  } catch (const json::exception& e) {
    throw UsageError(std::string("cannot parse map file: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(std::string("invalid map file: ") + e.what());
  }
}

QuadratureSpec make_quadrature(const RunConfig& c) {
  if (c.nodes < 64 || (c.nodes & (c.nodes - 1)) != 0) throw UsageError("--nodes must be a power of two >= 64");
  QuadratureSpec q;
  q.nodes_per_dim = c.nodes;
  q.radii = c.radii;
  try {
    q.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return q;
}

/// Artifacts go next to --out, else into $POLYCLARK_OUT_DIR; with neither, none are written.
std::string artifact_dir(const RunConfig& c) {
  if (!c.out.empty()) {
    const auto parent = fs::path(c.out).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
  }
  if (const char* env = std::getenv("POLYCLARK_OUT_DIR"); env && *env) return env;
  return {};
}

std::string artifact_stem(const RunConfig& c) {
  std::string stem = fs::path(c.phi).stem().string();
  return stem + "_" + c.command + "_" + format_double(c.alpha_turns);
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file(c.out, text);
  }
}

std::string checks_csv(const std::vector<Check>& checks) {
  std::ostringstream out;
  out << "name,residual,threshold,pass,skipped\n";
  for (const auto& ch : checks) {
    out << ch.name << ',' << format_double(ch.residual) << ',' << format_double(ch.threshold) << ','
        << (ch.pass ? 1 : 0) << ',' << (ch.skipped ? 1 : 0) << '\n';
  }
  return out.str();
}

json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& ch : checks) {
    json j = {{"name", ch.name},
              {"residual", finite_or_null(ch.residual)},
              {"threshold", ch.threshold},
              {"pass", ch.pass}};
    if (ch.skipped) j["skipped"] = true;
    if (!ch.note.empty()) j["note"] = ch.note;
    arr.push_back(j);
  }
  return arr;
}

int cmd_construct(const RunConfig& c) {
  const auto phi = load_phi(c.phi);
  const auto q = make_quadrature(c);
  const auto sigma = construct_clark(phi, from_turns(c.alpha_turns), q);
  const auto& cert = sigma.certificate;
  std::vector<Check> checks = {make_check("defining-property", cert.poisson_match_residual, acceptance_threshold),
                               make_check("mass-identity", cert.mass_residual, 1e-8)};
  json artifacts = json::array();
  if (const auto dir = artifact_dir(c); !dir.empty() && sigma.graph) {
    fs::create_directories(dir);
    const auto path = (fs::path(dir) / (artifact_stem(c) + "_graph.csv")).string();
    write_file(path, graph_table_csv(*sigma.graph));
    artifacts.push_back(path);
  }
  if (c.format == "csv") {
    emit(c, sigma.graph ? graph_table_csv(*sigma.graph) : checks_csv(checks));
  } else {
    json report = {{"command", "construct"},
                   {"config", config_json(c)},
                   {"phi", to_json(phi)},
                   {"measure", to_json(sigma.measure)},
                   {"certificate", to_json(cert)},
                   {"checks", checks_json(checks)},
                   {"artifacts", artifacts}};
    if (sigma.graph) {
      report["graph"] = {{"discontinuity", sigma.graph->discontinuity},
                         {"collision_angles", sigma.graph->collision_angles},
                         {"degenerate_angles", sigma.graph->degenerate_angles}};
    }
    emit(c, report.dump(2) + "\n");
  }
  return cert.accepted ? 0 : 1;
}

int cmd_verify(const RunConfig& c) {
  const auto phi = load_phi(c.phi);
  SuiteOptions opt;
  opt.quadrature = make_quadrature(c);
  opt.maxdeg = c.maxdeg;
  opt.seed = c.seed;
  const auto checks = run_suite(phi, from_turns(c.alpha_turns), opt);
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.pass;
  if (c.format == "csv") {
    emit(c, checks_csv(checks));
  } else {
    json report = {{"command", "verify"},
                   {"config", config_json(c)},
                   {"checks", checks_json(checks)},
                   {"artifacts", json::array()}};
    emit(c, report.dump(2) + "\n");
  }
  if (!ok) {
    for (const auto& ch : checks) {
      if (!ch.pass) std::cerr << "failed: " << ch.name << " residual " << format_double(ch.residual) << '\n';
    }
  }
  return ok ? 0 : 1;
}

int cmd_scan(const RunConfig& c) {
  if (c.grid < 2 || c.grid > 256) throw UsageError("--grid must lie in [2, 256]");
  const auto phi = load_phi(c.phi);
  if (phi.dimension() != 2) throw UsageError("scan needs a map of two variables");
  const auto q = make_quadrature(c);
  const auto targets = default_targets();
  const auto alphas = alpha_grid(static_cast<std::size_t>(c.grid));
  const ScalarFunction f = [](std::span<const Complex> z) { return z[0]; };
  std::vector<Complex> integrals;
  std::vector<std::vector<GramReport>> reports;
  std::vector<ClarkCertificate> certs;
  bool ok = true;
  for (Complex alpha : alphas) {
    const auto sigma = construct_clark(phi, alpha, q);
    ok = ok && sigma.certificate.accepted;
    certs.push_back(sigma.certificate);
    integrals.push_back(integrate(sigma.measure, f, q));
    std::vector<GramReport> row;
    for (const auto& t : targets) row.push_back(unitarity_residual_scan(sigma.measure, sigma.alpha, t, c.maxdeg, q));
    reports.push_back(std::move(row));
  }
  const std::size_t m = alphas.size();
  std::vector<double> increments(m);
  for (std::size_t k = 0; k < m; ++k) increments[k] = std::abs(integrals[(k + 1) % m] - integrals[k]);

  if (c.format == "csv") {
    std::ostringstream out;
    out << "index,alpha_turns,representation,target,rho_maxdeg,verdict,continuity_increment\n";
    for (std::size_t k = 0; k < m; ++k) {
      for (const auto& r : reports[k]) {
        out << k << ',' << format_double(static_cast<double>(k) / static_cast<double>(m)) << ','
            << certs[k].representation << ',' << r.target << ',' << format_double(r.rows.back().residual) << ','
            << r.verdict << ',' << format_double(increments[k]) << '\n';
      }
    }
    emit(c, out.str());
  } else {
    json rows = json::array();
    for (std::size_t k = 0; k < m; ++k) {
      json reps = json::array();
      for (const auto& r : reports[k]) reps.push_back(to_json(r));
      rows.push_back({{"index", k},
                      {"alpha_turns", static_cast<double>(k) / static_cast<double>(m)},
                      {"certificate", to_json(certs[k])},
                      {"gram_reports", reps},
                      {"continuity_increment", increments[k]}});
    }
    json report = {{"command", "scan"},
                   {"config", config_json(c)},
                   {"checks", json::array()},
                   {"rows", rows},
                   {"max_continuity_increment", *std::max_element(increments.begin(), increments.end())},
                   {"artifacts", json::array()}};
    emit(c, report.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clark measures on the torus: construction, verification and scans"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--phi", cfg.phi, "catalog name or path to a JSON map")->capture_default_str();
    sub->add_option("--alpha", cfg.alpha_turns, "alpha in turns, alpha = exp(2 pi i turns)")->capture_default_str();
    sub->add_option("--nodes", cfg.nodes, "quadrature nodes per dimension (power of two >= 64)")->capture_default_str();
    sub->add_option("--radii", cfg.radii, "radial schedule for weak-* limits");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--seed", cfg.seed, "seed for random point panels")->capture_default_str();
    sub->add_option("--maxdeg", cfg.maxdeg, "maximal degree for Fourier and Gram checks")
        ->check(CLI::Range(0, 16))
        ->capture_default_str();
  };
  auto* construct = app.add_subcommand("construct", "construct sigma_alpha and its certificate");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  auto* scan = app.add_subcommand("scan", "unitarity and continuity scan over an alpha grid");
  add_common(construct);
  add_common(verify);
  add_common(scan);
  scan->add_option("--grid", cfg.grid, "alpha grid size (<= 256)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*construct) {
      cfg.command = "construct";
      return cmd_construct(cfg);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    cfg.command = "scan";
    return cmd_scan(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

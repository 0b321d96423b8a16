#pragma once

// The ricciflow command line. run_cli() is the whole program; main() only
// forwards to it so tests can drive the CLI in-process.

#include "ricciflow/catalog.hpp"
#include "ricciflow/compactify.hpp"
#include "ricciflow/dynamics.hpp"
#include "ricciflow/einstein.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/report.hpp"
#include "ricciflow/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ricciflow::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string space;
  std::string family;
  int l = 0;
  int p = 0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double horizon = 50.0;
  int grid = 64;
  std::optional<double> check_tol;
  std::string output;  // file for JSON, directory for CSV bundles

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw UsageError("tolerances must be positive");
    if (check_tol && !(*check_tol > 0.0)) throw UsageError("--tol must be positive");
    if (grid < 8) throw UsageError("--grid must be at least 8");
    if (!(horizon > 0.0)) throw UsageError("--t-end must be positive");
  }

  IntegrationOptions integration() const {
    IntegrationOptions o;
    o.rel_tol = rel_tol;
    o.abs_tol = abs_tol;
    return o;
  }
};

inline FlagSpace resolve_space(const RunConfig& cfg) {
  if (!cfg.family.empty()) {
    if (!cfg.space.empty()) throw UsageError("give either a space id or --family, not both");
    const auto fam = parse_family(cfg.family);
    if (!fam) throw UsageError("unknown family '" + cfg.family + "' (expected B, C or D)");
    return instantiate_classical(*fam, cfg.l, cfg.p);
  }
  if (cfg.space.empty()) throw UsageError("a space id or --family is required");
  return find_space(cfg.space);
}

inline void emit_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
}

inline std::vector<double> parse_metric(const std::string& text) {
  std::vector<double> x;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') throw UsageError("malformed metric '" + text + "'");
    x.push_back(v);
  }
  for (double v : x)
    if (!(v > 0.0) || !std::isfinite(v))
      throw UsageError("metric '" + text + "' violates positivity: coefficients must be finite and > 0");
  return x;
}

/// One metric per non-empty line, comma separated; '#' starts a comment.
inline std::vector<std::vector<double>> read_initial_conditions(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read initial conditions file '" + path + "'");
  std::vector<std::vector<double>> out;
  std::string line;
  while (std::getline(f, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) out.push_back(parse_metric(line));
  }
  return out;
}

inline int cmd_list(const RunConfig& cfg, bool type_one, std::ostream& out) {
  if (!cfg.family.empty()) {
    emit_json(catalog_report({resolve_space(cfg)}, false), cfg.output, out);
    return kOk;
  }
  emit_json(catalog_report(type_one ? list_spaces(3) : list_spaces(), !type_one), cfg.output, out);
  return kOk;
}

inline int cmd_einstein(const RunConfig& cfg, std::ostream& out) {
  const FlagSpace sp = resolve_space(cfg);
  const auto metrics = sp.s == 2 ? solve_two_summand(sp) : solve_three_summand(sp, cfg.grid);
  emit_json(einstein_report(sp, metrics, infinity_fixed_points(sp, cfg.grid)), cfg.output, out);
  return kOk;
}

inline int cmd_fixed_points(const RunConfig& cfg, std::ostream& out) {
  const FlagSpace sp = resolve_space(cfg);
  const FixedPointSearch fps = infinity_fixed_points(sp, cfg.grid);
  emit_json(fixed_point_report(sp, fps), cfg.output, out);
  return kOk;
}

inline int cmd_flow_field(const RunConfig& cfg, const std::string& chart_name, std::ostream& out) {
  const FlagSpace sp = resolve_space(cfg);
  const PolyVectorField F = scaled_polynomial_field(sp);
  const ScalingMonomial mu = scaling_monomial(sp);
  Json j{{"space", sp.id},
         {"scaling", {{"coefficient", json_rational(mu.coefficient)}, {"exponents", mu.exponents}}},
         {"field", to_json(F)}};
  if (!chart_name.empty()) {
    const auto chart = parse_chart(chart_name);
    if (!chart) throw UsageError("unknown chart '" + chart_name + "'");
    if (chart_index(*chart) > sp.s + 1) throw UsageError("chart " + chart_name + " does not exist for s = " + std::to_string(sp.s));
    const CompactifiedField cf = compactify(F, *chart);
    j["chart"] = chart_name;
    j["compactified"] = to_json(cf.field);
    if (!is_affine_chart(*chart, F.n_vars())) j["boundary"] = to_json(boundary_restriction(cf));
  }
  emit_json(j, cfg.output, out);
  return kOk;
}

struct PortraitRequest {
  int samples = 0;
  std::vector<std::string> from;
  std::string ic_file;
  std::uint64_t seed = 1;
};

inline std::string default_output_dir() {
  if (const char* env = std::getenv("RICCIFLOW_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

inline int cmd_portrait(RunConfig cfg, const PortraitRequest& req, std::ostream& out) {
  if (cfg.space.empty() && cfg.family.empty()) cfg.space = "G2/U(2)-short";
  const FlagSpace sp = resolve_space(cfg);
  std::vector<std::vector<double>> initial;
  for (const auto& f : req.from) initial.push_back(parse_metric(f));
  if (!req.ic_file.empty())
    for (auto& x : read_initial_conditions(req.ic_file)) initial.push_back(std::move(x));
  if (req.samples < 0) throw UsageError("--samples must be non-negative");
  std::mt19937_64 rng(req.seed);
  for (int i = 0; i < req.samples; ++i) initial.push_back(detail::random_metric(rng, static_cast<std::size_t>(sp.s)));
  if (initial.empty()) throw UsageError("portrait needs --samples, --from or --ic");
  for (const auto& x : initial)
    if (x.size() != static_cast<std::size_t>(sp.s))
      throw UsageError("initial metric has " + std::to_string(x.size()) + " coefficients, '" + sp.id + "' needs " +
                       std::to_string(sp.s));

  const std::filesystem::path dir = cfg.output.empty() ? default_output_dir() : cfg.output;
  std::filesystem::create_directories(dir);
  const auto einstein = solve_einstein(sp);
  Json runs = Json::array();
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const Trajectory traj = integrate_flow(sp, InvariantMetric(initial[i]), cfg.horizon, cfg.integration());
    char name[48];
    std::snprintf(name, sizeof name, "trajectory_%03zu.csv", i);
    const auto path = dir / name;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_trajectory_csv(f, traj);
    // Nearest Einstein direction, for a quick read of where the run went.
    const auto d = traj.final_direction();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < einstein.size(); ++k) {
      const auto x = einstein[k].metric.x();
      double n = 0.0, dist = 0.0;
      for (double v : x) n += v * v;
      n = std::sqrt(n);
      for (std::size_t c = 0; c < x.size(); ++c) dist += (d[c] - x[c] / n) * (d[c] - x[c] / n);
      if (std::sqrt(dist) < best) {
        best = std::sqrt(dist);
        best_k = k;
      }
    }
    runs.push_back({{"file", path.string()},
                    {"initial", json_vector(initial[i])},
                    {"final_time", json_number(traj.times.back())},
                    {"final_direction", json_vector(d)},
                    {"nearest_einstein", json_vector(einstein[best_k].metric.x())},
                    {"direction_distance", json_number(best)},
                    {"stop", std::string(to_string(traj.stop))},
                    {"steps", traj.accepted}});
  }
  out << Json{{"space", sp.id}, {"t_end", cfg.horizon}, {"count", initial.size()}, {"trajectories", runs}}.dump(2)
      << '\n';
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, bool all, std::ostream& out) {
  std::vector<FlagSpace> spaces;
  if (all) {
    if (!cfg.space.empty() || !cfg.family.empty()) throw UsageError("--all takes no space");
    spaces = sweep_spaces();
  } else {
    spaces.push_back(resolve_space(cfg));
  }
  VerifyOptions opt;
  opt.tol = cfg.check_tol;
  opt.grid_density = cfg.grid;
  const auto results = verify_spaces(spaces, opt);
  bool ok = true;
  char line[256];
  for (const auto& r : results) {
    out << r.space << '\n';
    for (const auto& c : r.checks) {
      std::snprintf(line, sizeof line, "  %-4s %-30s measured=%-12.4g tol=%-10.3g", c.passed ? "pass" : "FAIL",
                    c.name.c_str(), c.measured, c.tolerance);
      out << line;
      if (!c.detail.empty()) out << ' ' << c.detail;
      out << '\n';
    }
    ok = ok && r.passed();
  }
  std::size_t failed = 0;
  for (const auto& r : results)
    for (const auto& c : r.checks) failed += c.passed ? 0 : 1;
  out << (ok ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return ok ? kOk : kFailure;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Normalized Ricci flow on flag manifolds with two or three isotropy summands"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("space", cfg.space, "space id, e.g. G2/U(2)-short (see `list`)");
    sub->add_option("--family", cfg.family, "classical family B, C or D");
    sub->add_option("--l", cfg.l, "family rank l");
    sub->add_option("--p", cfg.p, "family parameter p");
  };

  bool type_one = false;
  auto* list = app.add_subcommand("list", "print the catalog as JSON");
  list->add_flag("--type-I", type_one, "only the Type I three-summand spaces");
  list->add_option("--family", cfg.family, "instantiate a classical family");
  list->add_option("--l", cfg.l, "family rank l");
  list->add_option("--p", cfg.p, "family parameter p");

  auto* einstein = app.add_subcommand("einstein", "Einstein metrics normalized to x1 = 1");
  add_space(einstein);
  einstein->add_option("--grid", cfg.grid, "Newton seed grid density");
  einstein->add_option("--json", cfg.output, "write the report to this file");

  auto* fixed = app.add_subcommand("fixed-points", "equilibria at infinity in chart U1");
  add_space(fixed);
  fixed->add_option("--grid", cfg.grid, "Newton seed grid density");
  fixed->add_option("--json", cfg.output, "write the report to this file");

  std::string chart_name;
  auto* field = app.add_subcommand("flow-field", "the scaled polynomial field, optionally in a chart");
  add_space(field);
  field->add_option("--chart", chart_name, "U1, U2, U3 (and U4 for three summands)");
  field->add_option("--json", cfg.output, "write the report to this file");

  PortraitRequest req;
  auto* portrait = app.add_subcommand("portrait", "integrate trajectories and write one CSV per trajectory");
  add_space(portrait);
  portrait->add_option("--samples", req.samples, "number of random initial metrics");
  portrait->add_option("--from", req.from, "initial metric x1,x2[,x3]; repeatable");
  portrait->add_option("--ic", req.ic_file, "file with one initial metric per line");
  portrait->add_option("--t-end", cfg.horizon, "integration horizon");
  portrait->add_option("--seed", req.seed, "seed for --samples");
  portrait->add_option("--rel-tol", cfg.rel_tol, "integrator relative tolerance");
  portrait->add_option("--abs-tol", cfg.abs_tol, "integrator absolute tolerance");
  portrait->add_option("--out-dir", cfg.output, "output directory (default $RICCIFLOW_OUTPUT_DIR or .)");

  bool all = false;
  double tol = 0.0;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_space(verify);
  verify->add_flag("--all", all, "every catalog space and the smallest classical instances");
  auto* tol_opt = verify->add_option("--tol", tol, "override every check tolerance");
  verify->add_option("--grid", cfg.grid, "Newton seed grid density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (tol_opt->count() > 0) cfg.check_tol = tol;

  try {
    cfg.validate();
    if (*list) return cmd_list(cfg, type_one, out);
    if (*einstein) return cmd_einstein(cfg, out);
    if (*fixed) return cmd_fixed_points(cfg, out);
    if (*field) return cmd_flow_field(cfg, chart_name, out);
    if (*portrait) return cmd_portrait(cfg, req, out);
    if (*verify) return cmd_verify(cfg, all, out);
  } catch (const UnknownSpace& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace ricciflow::cli

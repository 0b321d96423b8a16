#pragma once

// JSON and CSV serialization. Keys are sorted (nlohmann::json's default map)
// and every double is rounded to 12 significant digits, so reports diff cleanly.

#include "ricciflow/catalog.hpp"
#include "ricciflow/dynamics.hpp"
#include "ricciflow/einstein.hpp"
#include "ricciflow/integrate.hpp"
#include "ricciflow/vector_field.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace ricciflow {

using Json = nlohmann::json;

inline double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline Json json_number(double v) {
  if (!std::isfinite(v)) return Json(nullptr);
  return Json(round12(v));
}

inline Json json_vector(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

/// [numerator, denominator] as decimal strings (they may exceed 64 bits).
inline Json json_rational(const Rational& q) {
  return Json::array({numerator_of(q).str(), denominator_of(q).str()});
}

inline Json json_complex(const std::complex<double>& z) { return {{"re", json_number(z.real())}, {"im", json_number(z.imag())}}; }

inline Json to_json(const FlagSpace& sp) {
  Json j;
  j["id"] = sp.id;
  j["group"] = sp.group;
  j["s"] = sp.s;
  j["dims"] = sp.dims;
  j["n"] = sp.n;
  if (sp.s == 2) {
    j["constants"] = {{"triple211", json_rational(sp.two().triple211)}};
  } else {
    j["constants"] = {{"c112", json_rational(sp.three().c112)}, {"c123", json_rational(sp.three().c123)}};
  }
  if (sp.family_params) {
    j["family"] = {{"family", std::string(to_string(sp.family_params->family))},
                   {"l", sp.family_params->rank},
                   {"p", sp.family_params->p}};
  }
  return j;
}

inline Json to_json(const FamilyDescriptor& f) {
  return {{"family", std::string(to_string(f.family))}, {"group", f.group}, {"pattern", f.pattern},
          {"dims", {f.d1, f.d2}}, {"range", f.range}};
}

inline Json catalog_report(const std::vector<FlagSpace>& spaces, bool with_families) {
  Json list = Json::array();
  for (const auto& sp : spaces) list.push_back(to_json(sp));
  Json j{{"spaces", list}, {"count", spaces.size()}};
  if (with_families) {
    Json fams = Json::array();
    for (const auto& f : classical_families()) fams.push_back(to_json(f));
    j["classical_families"] = fams;
  }
  return j;
}

inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exponents", e}, {"numerator", numerator_of(c).str()}, {"denominator", denominator_of(c).str()}});
  return terms;
}

inline Json to_json(const PolyVectorField& f) {
  Json comps = Json::array();
  for (const auto& c : f.components()) comps.push_back(to_json(c));
  return {{"n_vars", f.n_vars()}, {"degree", f.degree()}, {"components", comps}};
}

inline Json to_json(const FixedPointRecord& r) {
  Json j;
  j["chart"] = std::string(to_string(r.chart));
  j["z"] = json_vector(r.z);
  j["residual"] = json_number(r.residual);
  j["classification"] = std::string(to_string(r.classification));
  j["transverse_eigenvalue"] = json_number(r.transverse_eigenvalue);
  j["seed_count"] = r.seed_count;
  Json be = Json::array(), ce = Json::array(), jac = Json::array();
  for (const auto& z : r.boundary_eigenvalues) be.push_back(json_complex(z));
  for (const auto& z : r.chart_eigenvalues) ce.push_back(json_complex(z));
  for (std::size_t i = 0; i < r.jacobian.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < r.jacobian.size(); ++k) row.push_back(json_number(r.jacobian(i, k)));
    jac.push_back(row);
  }
  j["boundary_eigenvalues"] = be;
  j["chart_eigenvalues"] = ce;
  j["jacobian"] = jac;
  return j;
}

inline Json to_json(const EinsteinMetric& e) {
  Json j;
  j["metric"] = json_vector(e.metric.x());
  j["residual"] = json_number(e.residual);
  j["is_kahler"] = e.is_kahler;
  if (e.exact) {
    Json ex = Json::array();
    for (const auto& q : *e.exact) ex.push_back(json_rational(q));
    j["exact"] = ex;
  }
  return j;
}

/// Einstein metrics of a space, each with the index of the U1 fixed point it matches.
inline Json einstein_report(const FlagSpace& sp, const std::vector<EinsteinMetric>& metrics,
                            const FixedPointSearch& fps) {
  const FixedPointMetrics from_fp = fixed_points_to_metrics(sp, fps.points);
  std::vector<EinsteinMetric> fp_metrics;
  for (const auto& m : from_fp.metrics) fp_metrics.push_back(m.einstein);
  Json list = Json::array();
  for (const auto& e : metrics) {
    Json j = to_json(e);
    const auto idx = match_metric(e.metric, fp_metrics);
    j["matched_fixed_point"] = idx ? Json(from_fp.metrics[*idx].record_index) : Json(nullptr);
    list.push_back(j);
  }
  return {{"space", sp.id}, {"count", metrics.size()}, {"metrics", list}};
}

inline Json fixed_point_report(const FlagSpace& sp, const FixedPointSearch& fps) {
  const FixedPointMetrics from_fp = fixed_points_to_metrics(sp, fps.points);
  Json pts = Json::array();
  for (std::size_t i = 0; i < fps.points.size(); ++i) {
    Json j = to_json(fps.points[i]);
    j["index"] = i;
    j["metric"] = nullptr;
    for (const auto& m : from_fp.metrics)
      if (m.record_index == i) j["metric"] = to_json(m.einstein);
    for (const auto& d : from_fp.discrepancies)
      if (d.record_index == i) j["discrepancy"] = d.reason;
    pts.push_back(j);
  }
  Json warns = Json::array();
  for (const auto& w : fps.warnings)
    warns.push_back({{"cell_lower", json_vector(w.cell_lower)}, {"cell_upper", json_vector(w.cell_upper)}, {"message", w.message}});
  return {{"space", sp.id}, {"chart", "U1"}, {"count", fps.points.size()}, {"fixed_points", pts}, {"warnings", warns}};
}

/// Columns t, x1..xs, norm, dir1..dirs.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const std::size_t s = traj.states.front().size();
  os << "t";
  for (std::size_t k = 1; k <= s; ++k) os << ",x" << k;
  os << ",norm";
  for (std::size_t k = 1; k <= s; ++k) os << ",dir" << k;
  os << '\n';
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& x = traj.states[i];
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    put(traj.times[i]);
    for (double v : x) os << ',', put(v);
    os << ',';
    put(norm);
    for (double v : x) os << ',', put(v / norm);
    os << '\n';
  }
}

}  // namespace ricciflow

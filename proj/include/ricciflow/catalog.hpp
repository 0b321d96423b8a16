#pragma once

// Registry of generalized flag manifolds with two or three isotropy
// summands: summand dimensions and the structure constants derived from them.
//
// Everything here is exact (integers and rationals). Classical two-summand
// families are parametric and validated on instantiation.

#include "ricciflow/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ricciflow {

enum class ClassicalFamily { B, C, D };

inline std::string_view to_string(ClassicalFamily f) {
  switch (f) {
    case ClassicalFamily::B: return "B";
    case ClassicalFamily::C: return "C";
    case ClassicalFamily::D: return "D";
  }
  return "?";
}

inline std::optional<ClassicalFamily> parse_family(std::string_view s) {
  if (s == "B" || s == "b") return ClassicalFamily::B;
  if (s == "C" || s == "c") return ClassicalFamily::C;
  if (s == "D" || s == "d") return ClassicalFamily::D;
  return std::nullopt;
}

struct FamilyParams {
  ClassicalFamily family;
  int rank;  // l
  int p;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// The single non-zero triple [2;11] = [1;12] = [1;21] of a two-summand space.
struct TwoSummandConstants {
  Rational triple211;
};

/// c_{11}^2 = [1;12] = [2;11] and c_{12}^3 = [3;12] = [1;23] = ... of a Type I space.
struct ThreeSummandConstants {
  Rational c112;
  Rational c123;
};

using StructureConstants = std::variant<TwoSummandConstants, ThreeSummandConstants>;

class ParameterOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownSpace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidStructureConstants : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FlagSpace {
  std::string id;
  std::string group;
  int s = 0;
  std::vector<int> dims;
  int n = 0;
  std::optional<FamilyParams> family_params;
  StructureConstants constants;

  const TwoSummandConstants& two() const { return std::get<TwoSummandConstants>(constants); }
  const ThreeSummandConstants& three() const { return std::get<ThreeSummandConstants>(constants); }

  int d(int k) const { return dims.at(static_cast<std::size_t>(k - 1)); }
};

/// Closed forms obtained by imposing the Kahler-Einstein metric (1,2) resp. (1,2,3).
inline StructureConstants structure_constants(std::span<const int> dims) {
  if (dims.size() != 2 && dims.size() != 3)
    throw std::invalid_argument("structure_constants: expected 2 or 3 dimensions, got " + std::to_string(dims.size()));
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("structure_constants: dimensions must be >= 1");
  if (dims.size() == 2) {
    const Rational d1 = dims[0], d2 = dims[1];
    return TwoSummandConstants{d1 * d2 / (d1 + 4 * d2)};
  }
  const Rational d1 = dims[0], d2 = dims[1], d3 = dims[2];
  const Rational denom = d1 + 4 * d2 + 9 * d3;
  const Rational numer = d1 * d2 + 2 * d1 * d3 - d2 * d3;
  if (numer <= 0) throw InvalidStructureConstants("structure_constants: c_11^2 would be non-positive for these dimensions");
  return ThreeSummandConstants{numer / denom, (d1 + d2) * d3 / denom};
}

namespace detail {

inline FlagSpace make_space(std::string id, std::string group, std::vector<int> dims,
                            std::optional<FamilyParams> params = std::nullopt) {
  FlagSpace sp;
  sp.id = std::move(id);
  sp.group = std::move(group);
  sp.s = static_cast<int>(dims.size());
  sp.n = 0;
  for (int d : dims) sp.n += d;
  sp.constants = structure_constants(dims);
  sp.dims = std::move(dims);
  sp.family_params = params;
  return sp;
}

inline std::vector<FlagSpace> build_catalog() {
  std::vector<FlagSpace> out;
  // Two summands (exceptional groups).
  out.push_back(make_space("G2/U(2)-short", "G2", {8, 2}));
  out.push_back(make_space("F4/SO(7)xU(1)", "F4", {16, 14}));
  out.push_back(make_space("F4/Sp(3)xU(1)", "F4", {28, 2}));
  out.push_back(make_space("E6/SU(6)xU(1)", "E6", {40, 2}));
  out.push_back(make_space("E6/SU(2)xSU(5)xU(1)", "E6", {40, 10}));
  out.push_back(make_space("E7/SU(7)xU(1)", "E7", {70, 14}));
  out.push_back(make_space("E7/SU(2)xSO(10)xU(1)", "E7", {64, 20}));
  out.push_back(make_space("E7/SO(12)xU(1)", "E7", {64, 2}));
  out.push_back(make_space("E8/E7xU(1)", "E8", {112, 2}));
  out.push_back(make_space("E8/SO(14)xU(1)", "E8", {128, 28}));
  // Three summands, Type I.
  out.push_back(make_space("E8/E6xSU(2)xU(1)", "E8", {108, 54, 4}));
  out.push_back(make_space("E8/SU(8)xU(1)", "E8", {112, 56, 16}));
  out.push_back(make_space("E7/SU(5)xSU(3)xU(1)", "E7", {60, 30, 8}));
  out.push_back(make_space("E7/SU(6)xSU(2)xU(1)", "E7", {60, 30, 4}));
  out.push_back(make_space("E6/SU(3)xSU(3)xSU(2)xU(1)", "E6", {36, 18, 4}));
  out.push_back(make_space("F4/SU(3)xSU(2)xU(1)", "F4", {24, 12, 4}));
  out.push_back(make_space("G2/U(2)-long", "G2", {4, 2, 4}));
  return out;
}

}  // namespace detail

/// The 10 fixed two-summand spaces followed by the 7 Type I spaces.
inline const std::vector<FlagSpace>& list_spaces() {
  static const std::vector<FlagSpace> catalog = detail::build_catalog();
  return catalog;
}

inline std::vector<FlagSpace> list_spaces(int s) {
  std::vector<FlagSpace> out;
  for (const auto& sp : list_spaces())
    if (sp.s == s) out.push_back(sp);
  return out;
}

struct FamilyDescriptor {
  ClassicalFamily family;
  std::string group;     // e.g. "B_l"
  std::string pattern;   // quotient with symbolic l, p
  std::string d1, d2;    // dimension formulas
  std::string range;     // admissible p
};

inline const std::vector<FamilyDescriptor>& classical_families() {
  static const std::vector<FamilyDescriptor> families = {
      {ClassicalFamily::B, "B_l", "SO(2l+1)/U(p)xSO(2(l-p)+1)", "2p(2(l-p)+1)", "p(p-1)", "2 <= p <= l"},
      {ClassicalFamily::C, "C_l", "Sp(l)/U(p)xSp(l-p)", "4p(l-p)", "p(p+1)", "1 <= p <= l-1"},
      {ClassicalFamily::D, "D_l", "SO(2l)/U(p)xSO(2(l-p))", "4p(l-p)", "p(p-1)", "2 <= p <= l-2"},
  };
  return families;
}

inline FlagSpace instantiate_classical(ClassicalFamily family, int l, int p) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ParameterOutOfRange("instantiate_classical: requires " + what);
  };
  const std::string tag = std::string(to_string(family));
  const FamilyParams params{family, l, p};
  switch (family) {
    case ClassicalFamily::B: {
      require(p >= 2, "p >= 2 (family B)");
      require(p <= l, "p <= l (family B)");
      std::string id = "SO(" + std::to_string(2 * l + 1) + ")/U(" + std::to_string(p) + ")";
      if (l > p) id += "xSO(" + std::to_string(2 * (l - p) + 1) + ")";
      return detail::make_space(std::move(id), tag + std::to_string(l), {2 * p * (2 * (l - p) + 1), p * (p - 1)}, params);
    }
    case ClassicalFamily::C: {
      require(p >= 1, "p >= 1 (family C)");
      require(p <= l - 1, "p <= l-1 (family C)");
      std::string id = "Sp(" + std::to_string(l) + ")/U(" + std::to_string(p) + ")xSp(" + std::to_string(l - p) + ")";
      return detail::make_space(std::move(id), tag + std::to_string(l), {4 * p * (l - p), p * (p + 1)}, params);
    }
    case ClassicalFamily::D: {
      require(p >= 2, "p >= 2 (family D)");
      require(p <= l - 2, "p <= l-2 (family D)");
      std::string id = "SO(" + std::to_string(2 * l) + ")/U(" + std::to_string(p) + ")xSO(" + std::to_string(2 * (l - p)) + ")";
      return detail::make_space(std::move(id), tag + std::to_string(l), {4 * p * (l - p), p * (p - 1)}, params);
    }
  }
  throw std::logic_error("instantiate_classical: unhandled family");
}

/// B(l=2,p=2), C(l=2,p=1), D(l=4,p=2).
inline std::vector<FlagSpace> smallest_classical_instances() {
  return {instantiate_classical(ClassicalFamily::B, 2, 2), instantiate_classical(ClassicalFamily::C, 2, 1),
          instantiate_classical(ClassicalFamily::D, 4, 2)};
}

/// Catalog entries plus the smallest classical instances: the default sweep.
inline std::vector<FlagSpace> sweep_spaces() {
  std::vector<FlagSpace> out = list_spaces();
  for (auto& sp : smallest_classical_instances()) out.push_back(std::move(sp));
  return out;
}

inline const FlagSpace& find_space(std::string_view id) {
  const auto& all = list_spaces();
  auto it = std::find_if(all.begin(), all.end(), [&](const FlagSpace& sp) { return sp.id == id; });
  if (it == all.end()) throw UnknownSpace("unknown space '" + std::string(id) + "'");
  return *it;
}

}  // namespace ricciflow

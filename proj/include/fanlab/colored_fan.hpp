#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fanlab/cone.hpp"
#include "fanlab/numeric.hpp"

// Colored cones and colored fans: validation against the defining axioms,
// factoriality, completeness and walls, and the ray <-> divisor dictionary.
// Cones carry colors; the fan is stored by its maximal cones and the face
// closure is derived on demand.

namespace fanlab {

using ColorId = std::string;

enum class ValuationMode { FullSpace, HalfspaceList };

struct ColoredFan {
  struct MaxCone {
    std::vector<std::size_t> ray_indices;  // into rays, ascending
    std::set<ColorId> colors;
  };

  std::size_t lattice_rank = 0;
  std::vector<IntVec> rays;                 // primitive, no duplicates
  std::map<ColorId, IntVec> color_table;    // rho-values; zero allowed if unattached
  std::vector<MaxCone> maximal_cones;
  ValuationMode valuation_mode = ValuationMode::FullSpace;
  std::vector<IntVec> valuation_halfspaces; // covectors, HalfspaceList mode only

  RatCone cone_of(std::size_t max_index) const;
  RatCone valuation_cone() const;
  std::set<ColorId> attached_colors() const;            // D_X
  std::vector<std::size_t> uncolored_ray_indices() const; // V_X (valid fans)
};

// Divisor dictionary entry: a boundary divisor (uncolored ray) or a color.
struct DivisorId {
  enum class Kind { Boundary, Color };
  Kind kind = Kind::Boundary;
  std::size_t ray_index = 0;  // Boundary
  ColorId color;              // Color

  static DivisorId boundary(std::size_t i) { return {Kind::Boundary, i, {}}; }
  static DivisorId color_divisor(ColorId c) { return {Kind::Color, 0, std::move(c)}; }
  friend bool operator==(const DivisorId& a, const DivisorId& b) {
    return a.kind == b.kind &&
           (a.kind == Kind::Boundary ? a.ray_index == b.ray_index : a.color == b.color);
  }
  friend bool operator<(const DivisorId& a, const DivisorId& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.kind == Kind::Boundary ? a.ray_index < b.ray_index : a.color < b.color;
  }
  std::string label() const;
};

struct ValidationIssue {
  std::string axiom;   // short tag, e.g. "strict-convexity", "interior-overlap"
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const ColoredFan& fan);

// Throws InvalidFan (with the first issue) unless validate(fan) is clean.
void require_valid(const ColoredFan& fan);

// A cone of the fan together with its (induced) colors.
struct FanCone {
  RatCone cone;
  std::set<ColorId> colors;
};

// Every cone of the fan: faces of maximal cones whose relative interior meets
// the valuation cone, with induced colors, deduplicated and sorted by
// (dim, canonical generators). Requires a valid fan.
std::vector<FanCone> face_closure(const ColoredFan& fan);

// Membership of a cone in the fan; nullopt when absent.
std::optional<FanCone> find_cone(const ColoredFan& fan, const RatCone& cone);

struct FactorialityProfile {
  bool q_factorial = false;
  bool locally_factorial = false;
  // maximal cones whose divisor family fails each test, if any
  std::optional<RatCone> q_factorial_witness;
  std::optional<RatCone> locally_factorial_witness;
};

FactorialityProfile factoriality_profile(const ColoredFan& fan);

struct Wall {
  RatCone mu;               // the shared codimension-one face
  std::size_t plus_index;   // maximal cone indices; the cone with the
  std::size_t minus_index;  // lex-greater canonical generators is mu_plus
};

struct SupportAndWalls {
  bool complete = false;
  std::vector<Wall> walls;  // sorted by the wall cone
};

SupportAndWalls support_and_walls(const ColoredFan& fan);

// All fan-attached colors whose rho lies in the (closed) cone.
std::set<ColorId> colors_of_cone(const ColoredFan& fan, const RatCone& cone);

// Ray index -> divisor, bijective onto V_X plus attached colors.
// Requires a valid Q-factorial fan with FullSpace valuation cone.
std::map<std::size_t, DivisorId> ray_divisor_map(const ColoredFan& fan);

}  // namespace fanlab

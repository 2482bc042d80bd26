#include "fanlab/colored_fan.hpp"

#include <algorithm>
#include <utility>

#include "fanlab/errors.hpp"
#include "fanlab/linalg.hpp"

namespace fanlab {

std::string DivisorId::label() const {
  if (kind == Kind::Boundary) return "ray:" + std::to_string(ray_index);
  return "color:" + color;
}

RatCone ColoredFan::cone_of(std::size_t max_index) const {
  std::vector<IntVec> gens;
  for (std::size_t i : maximal_cones[max_index].ray_indices) gens.push_back(rays[i]);
  return RatCone::from_generators(lattice_rank, gens);
}

RatCone ColoredFan::valuation_cone() const {
  if (valuation_mode == ValuationMode::FullSpace) return RatCone::full_space(lattice_rank);
  return RatCone::from_inequalities(lattice_rank, valuation_halfspaces);
}

std::set<ColorId> ColoredFan::attached_colors() const {
  std::set<ColorId> out;
  for (const MaxCone& mc : maximal_cones) out.insert(mc.colors.begin(), mc.colors.end());
  return out;
}

std::vector<std::size_t> ColoredFan::uncolored_ray_indices() const {
  std::set<IntVec, bool (*)(const IntVec&, const IntVec&)> colored(
      +[](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
  for (const ColorId& c : attached_colors()) {
    const IntVec& rho = color_table.at(c);
    if (!is_zero(rho)) colored.insert(primitive_generator(rho));
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!colored.count(rays[i])) out.push_back(i);
  return out;
}

namespace {

std::string cone_name(const RatCone& c) {
  std::string s = "cone{";
  bool first = true;
  for (const IntVec& g : c.generators()) {
    if (!first) s += ", ";
    s += to_string(g);
    first = false;
  }
  return s + "}";
}

// Does the relative interior of C meet the valuation cone? Exact via the
// relative-interior point of the intersection.
bool relint_meets_valuation(const RatCone& C, const ColoredFan& fan) {
  if (fan.valuation_mode == ValuationMode::FullSpace) return true;
  RatCone H = intersect_cones(C, fan.valuation_cone());
  return C.contains(H.relative_interior_point(), Membership::RelativeInterior);
}

// Is some valuation-cone point in the relative interior of both cones? The
// test point is the relative-interior point of the triple intersection: if
// any witness exists, that point is one.
bool relint_overlap_within_valuation(const RatCone& A, const RatCone& B,
                                     const ColoredFan& fan) {
  RatCone H = intersect_cones(A, B);
  if (fan.valuation_mode == ValuationMode::HalfspaceList)
    H = intersect_cones(H, fan.valuation_cone());
  RatVec p = H.relative_interior_point();
  return A.contains(p, Membership::RelativeInterior) &&
         B.contains(p, Membership::RelativeInterior);
}

struct ClosureEntry {
  RatCone cone;
  std::set<ColorId> colors;
  std::size_t origin;  // a maximal cone it is a face of
};

// Faces of maximal cones meeting the valuation cone, with induced colors.
// On color disagreement between two maximal cones the report (when given)
// receives an issue and the first assignment wins.
std::vector<ClosureEntry> closure_entries(const ColoredFan& fan, ValidationReport* report) {
  std::vector<ClosureEntry> out;
  for (std::size_t i = 0; i < fan.maximal_cones.size(); ++i) {
    RatCone C = fan.cone_of(i);
    for (const RatCone& F : C.all_faces()) {
      if (!relint_meets_valuation(F, fan)) continue;
      std::set<ColorId> induced;
      for (const ColorId& D : fan.maximal_cones[i].colors)
        if (F.contains(fan.color_table.at(D), Membership::Closed)) induced.insert(D);
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const ClosureEntry& e) { return e.cone == F; });
      if (it == out.end()) {
        out.push_back({F, std::move(induced), i});
      } else if (report && it->colors != induced) {
        report->issues.push_back(
            {"face-colors", cone_name(F) + " inherits different colors from maximal cones " +
                                std::to_string(it->origin) + " and " + std::to_string(i)});
      }
    }
  }
  return out;
}

}  // namespace

ValidationReport validate(const ColoredFan& fan) {
  ValidationReport report;
  auto add = [&](const char* axiom, std::string detail) {
    report.issues.push_back({axiom, std::move(detail)});
  };
  const std::size_t n = fan.lattice_rank;

  // Structural checks; geometry below assumes these hold, so bail on failure.
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const IntVec& r = fan.rays[i];
    if (r.size() != n) {
      add("structure", "ray " + std::to_string(i) + " has wrong rank");
      continue;
    }
    if (is_zero(r))
      add("structure", "ray " + std::to_string(i) + " is zero");
    else if (primitive_generator(r) != r)
      add("structure", "ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = i + 1; j < fan.rays.size(); ++j)
      if (fan.rays[j] == r) add("structure", "duplicate ray " + to_string(r));
  }
  for (const auto& [label, rho] : fan.color_table)
    if (rho.size() != n) add("structure", "color " + label + " has wrong rank");
  if (fan.valuation_mode == ValuationMode::FullSpace) {
    if (!fan.valuation_halfspaces.empty())
      add("structure", "halfspaces listed in full-space valuation mode");
  } else {
    for (const IntVec& h : fan.valuation_halfspaces)
      if (h.size() != n) add("structure", "valuation halfspace has wrong rank");
  }
  if (fan.maximal_cones.empty()) add("structure", "fan has no maximal cones");
  for (std::size_t i = 0; i < fan.maximal_cones.size(); ++i) {
    const auto& mc = fan.maximal_cones[i];
    for (std::size_t idx : mc.ray_indices)
      if (idx >= fan.rays.size())
        add("structure", "cone " + std::to_string(i) + " references ray " + std::to_string(idx));
    if (!std::is_sorted(mc.ray_indices.begin(), mc.ray_indices.end()) ||
        std::adjacent_find(mc.ray_indices.begin(), mc.ray_indices.end()) != mc.ray_indices.end())
      add("structure", "cone " + std::to_string(i) + " ray indices not strictly ascending");
    for (const ColorId& c : mc.colors)
      if (!fan.color_table.count(c))
        add("structure", "cone " + std::to_string(i) + " attaches unknown color " + c);
  }
  if (!report.ok()) return report;

  // Colored-cone axioms per maximal cone.
  std::vector<RatCone> cones;
  for (std::size_t i = 0; i < fan.maximal_cones.size(); ++i) {
    const auto& mc = fan.maximal_cones[i];
    RatCone C = fan.cone_of(i);
    cones.push_back(C);
    if (!C.is_strictly_convex())
      add("strict-convexity", cone_name(C) + " contains a line");

    std::vector<IntVec> listed;
    for (std::size_t idx : mc.ray_indices) listed.push_back(fan.rays[idx]);
    std::sort(listed.begin(), listed.end(),
              [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    if (listed != C.extreme_rays())
      add("ray-list", "cone " + std::to_string(i) + " ray list differs from its extreme rays");

    bool rho_ok = true;
    for (const ColorId& D : mc.colors) {
      const IntVec& rho = fan.color_table.at(D);
      if (is_zero(rho)) {
        add("zero-color-rho", "color " + D + " with rho = 0 attached to cone " + std::to_string(i));
        rho_ok = false;
      } else if (!C.contains(rho, Membership::Closed)) {
        add("generation", "rho of color " + D + " lies outside cone " + std::to_string(i));
        rho_ok = false;
      }
    }

    if (fan.valuation_mode == ValuationMode::HalfspaceList) {
      if (!relint_meets_valuation(C, fan))
        add("interior-meets-valuation",
            "relative interior of cone " + std::to_string(i) + " misses the valuation cone");
      if (rho_ok) {
        // generation: the cone must be spanned by its color images together
        // with its valuation part
        std::vector<IntVec> gens = intersect_cones(C, fan.valuation_cone()).generators();
        for (const ColorId& D : mc.colors) gens.push_back(fan.color_table.at(D));
        if (!(RatCone::from_generators(n, gens) == C))
          add("generation", "cone " + std::to_string(i) +
                                " is not generated by its colors and valuation elements");
      }
    }
  }

  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      if (cones[i] == cones[j]) {
        add(fan.maximal_cones[i].colors == fan.maximal_cones[j].colors ? "redundant-cone"
                                                                       : "face-colors",
            "maximal cones " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      } else if (cones[i].contains_cone(cones[j]) || cones[j].contains_cone(cones[i])) {
        add("redundant-cone", "maximal cone " + std::to_string(i) + " is comparable with " +
                                  std::to_string(j));
      }
    }
  if (!report.ok()) return report;

  // Fan axioms over the face closure.
  std::vector<ClosureEntry> closure = closure_entries(fan, &report);
  for (std::size_t a = 0; a < closure.size(); ++a)
    for (std::size_t b = a + 1; b < closure.size(); ++b)
      if (relint_overlap_within_valuation(closure[a].cone, closure[b].cone, fan))
        add("interior-overlap", "a valuation point is interior to both " +
                                    cone_name(closure[a].cone) + " and " +
                                    cone_name(closure[b].cone));

  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    bool used = false;
    for (const RatCone& C : cones) {
      const auto& er = C.extreme_rays();
      if (std::find(er.begin(), er.end(), fan.rays[i]) != er.end()) {
        used = true;
        break;
      }
    }
    if (!used) add("ray-coverage", "ray " + to_string(fan.rays[i]) + " spans no cone");
  }
  return report;
}

void require_valid(const ColoredFan& fan) {
  ValidationReport r = validate(fan);
  if (!r.ok())
    fail(ErrorCode::InvalidFan, r.issues.front().axiom + ": " + r.issues.front().detail);
}

std::vector<FanCone> face_closure(const ColoredFan& fan) {
  require_valid(fan);
  std::vector<ClosureEntry> entries = closure_entries(fan, nullptr);
  std::sort(entries.begin(), entries.end(), [](const ClosureEntry& a, const ClosureEntry& b) {
    if (a.cone.dim() != b.cone.dim()) return a.cone.dim() < b.cone.dim();
    return cone_less(a.cone, b.cone);
  });
  std::vector<FanCone> out;
  for (ClosureEntry& e : entries) out.push_back({std::move(e.cone), std::move(e.colors)});
  return out;
}

std::optional<FanCone> find_cone(const ColoredFan& fan, const RatCone& cone) {
  for (FanCone& f : face_closure(fan))
    if (f.cone == cone) return std::move(f);
  return std::nullopt;
}

namespace {

// The divisor family of a maximal cone: primitive generators of its uncolored
// rays followed by the rho-images of its colors (a multiset; repetitions make
// it dependent).
std::vector<IntVec> divisor_family(const ColoredFan& fan, std::size_t max_index) {
  const auto& mc = fan.maximal_cones[max_index];
  RatCone C = fan.cone_of(max_index);
  std::vector<IntVec> colored;
  for (const ColorId& D : mc.colors) colored.push_back(primitive_generator(fan.color_table.at(D)));
  std::vector<IntVec> family;
  for (const IntVec& r : C.extreme_rays())
    if (std::find(colored.begin(), colored.end(), r) == colored.end()) family.push_back(r);
  for (const ColorId& D : mc.colors) family.push_back(fan.color_table.at(D));
  return family;
}

}  // namespace

FactorialityProfile factoriality_profile(const ColoredFan& fan) {
  require_valid(fan);
  FactorialityProfile out;
  out.q_factorial = true;
  out.locally_factorial = true;
  for (std::size_t i = 0; i < fan.maximal_cones.size(); ++i) {
    std::vector<IntVec> family = divisor_family(fan, i);
    if (out.q_factorial && rank(family) != family.size()) {
      out.q_factorial = false;
      out.q_factorial_witness = fan.cone_of(i);
    }
    if (out.locally_factorial && !is_z_basis_extendable(family)) {
      out.locally_factorial = false;
      out.locally_factorial_witness = fan.cone_of(i);
    }
  }
  return out;
}

SupportAndWalls support_and_walls(const ColoredFan& fan) {
  require_valid(fan);
  const std::size_t n = fan.lattice_rank;
  SupportAndWalls out;

  std::vector<RatCone> cones;
  for (std::size_t i = 0; i < fan.maximal_cones.size(); ++i) cones.push_back(fan.cone_of(i));

  std::vector<std::size_t> full;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i].dim() == n) full.push_back(i);

  for (std::size_t a = 0; a < full.size(); ++a)
    for (std::size_t b = a + 1; b < full.size(); ++b) {
      std::size_t i = full[a], j = full[b];
      RatCone mu = intersect_cones(cones[i], cones[j]);
      if (mu.dim() + 1 != n) continue;
      bool i_greater = cone_less(cones[j], cones[i]);
      out.walls.push_back({std::move(mu), i_greater ? i : j, i_greater ? j : i});
    }
  std::sort(out.walls.begin(), out.walls.end(),
            [](const Wall& x, const Wall& y) { return cone_less(x.mu, y.mu); });

  if (fan.valuation_mode == ValuationMode::FullSpace) {
    // A pure full-dimensional fan covers the space iff every facet of every
    // maximal cone is shared with another maximal cone.
    if (n == 0) {
      out.complete = !fan.maximal_cones.empty();
      return out;
    }
    if (full.size() != cones.size() || cones.empty()) {
      out.complete = false;
      return out;
    }
    out.complete = true;
    for (std::size_t i : full) {
      for (const RatCone& F : cones[i].faces(n - 1)) {
        bool shared = false;
        for (std::size_t j : full)
          if (j != i && cones[j].contains_cone(F)) {
            shared = true;
            break;
          }
        if (!shared) {
          out.complete = false;
          return out;
        }
      }
    }
    return out;
  }

  // HalfspaceList mode: the valuation cone must be exhausted by the maximal
  // cones. Cells are (closed cone, strict covectors) regions; subtracting a
  // cone splits a cell along its facets and span equations. A cell is empty
  // iff some strict covector vanishes on all of its closed refinement.
  struct Cell {
    RatCone base;
    std::vector<IntVec> strict;
  };
  auto nonempty = [&](const Cell& c) {
    std::vector<IntVec> ineq = c.base.facet_normals();
    for (const IntVec& s : c.strict) ineq.push_back(s);
    RatCone refined = RatCone::from_inequalities(n, ineq, c.base.span_equations());
    RatVec p = refined.relative_interior_point();
    for (const IntVec& s : c.strict)
      if (dot(p, s) <= 0) return false;
    return true;
  };
  std::vector<Cell> cells = {{fan.valuation_cone(), {}}};
  for (const RatCone& C : cones) {
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      auto push = [&](const IntVec& s) {
        Cell piece = cell;
        piece.strict.push_back(s);
        if (nonempty(piece)) next.push_back(std::move(piece));
      };
      for (const IntVec& a : C.facet_normals()) push(neg(a));
      for (const IntVec& e : C.span_equations()) {
        push(e);
        push(neg(e));
      }
    }
    cells = std::move(next);
    if (cells.empty()) break;
  }
  out.complete = cells.empty();
  return out;
}

std::set<ColorId> colors_of_cone(const ColoredFan& fan, const RatCone& cone) {
  require_valid(fan);
  std::set<ColorId> out;
  for (const ColorId& D : fan.attached_colors())
    if (cone.contains(fan.color_table.at(D), Membership::Closed)) out.insert(D);
  return out;
}

std::map<std::size_t, DivisorId> ray_divisor_map(const ColoredFan& fan) {
  require_valid(fan);
  if (fan.valuation_mode != ValuationMode::FullSpace)
    fail(ErrorCode::Unsupported, "ray_divisor_map requires a full-space valuation cone");
  FactorialityProfile fp = factoriality_profile(fan);
  if (!fp.q_factorial)
    fail(ErrorCode::NotQFactorial, "ray_divisor_map requires a Q-factorial fan");

  std::map<std::size_t, DivisorId> out;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    std::vector<ColorId> on_ray;
    for (const ColorId& D : fan.attached_colors())
      if (primitive_generator(fan.color_table.at(D)) == fan.rays[i]) on_ray.push_back(D);
    if (on_ray.size() > 1)
      fail(ErrorCode::AmbiguousRay, "two colors span ray " + to_string(fan.rays[i]));
    out.emplace(i, on_ray.empty() ? DivisorId::boundary(i)
                                  : DivisorId::color_divisor(on_ray.front()));
  }
  return out;
}

}  // namespace fanlab

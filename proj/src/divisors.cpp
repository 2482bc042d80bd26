#include "fanlab/divisors.hpp"

#include <algorithm>

#include "fanlab/errors.hpp"

namespace fanlab {

Rat coefficient(const BDivisor& d, const DivisorId& id) {
  auto it = d.coefficients.find(id);
  return it == d.coefficients.end() ? Rat(0) : it->second;
}

std::string CurveClass::label() const {
  switch (kind) {
    case Kind::Wall: return "wall:" + std::to_string(wall_id);
    case Kind::ColorCurve: return "colorcurve:" + color + "@cone" + std::to_string(orbit_index);
    case Kind::ZeroColorCurve: return "zerocurve:" + color;
  }
  return {};
}

namespace {

std::vector<DivisorId> b_divisors_unchecked(const HorosphericalEmbedding& emb) {
  std::vector<DivisorId> out;
  for (std::size_t i : emb.fan.uncolored_ray_indices()) out.push_back(DivisorId::boundary(i));
  for (const auto& [label, rho] : emb.fan.color_table) out.push_back(DivisorId::color_divisor(label));
  return out;
}

IntVec divisor_image_unchecked(const HorosphericalEmbedding& emb, const DivisorId& id) {
  if (id.kind == DivisorId::Kind::Boundary) return emb.fan.rays[id.ray_index];
  return emb.fan.color_table.at(id.color);
}

void check_divisor_support(const HorosphericalEmbedding& emb, const BDivisor& d) {
  std::vector<DivisorId> b = b_divisors_unchecked(emb);
  for (const auto& [id, coeff] : d.coefficients)
    if (std::find(b.begin(), b.end(), id) == b.end())
      fail(ErrorCode::PreconditionFailed, "divisor names " + id.label() + " outside B(X)");
}

void require_complete(const HorosphericalEmbedding& emb) {
  if (!support_and_walls(emb.fan).complete)
    fail(ErrorCode::NotComplete, "operation requires a complete fan");
}

void require_q_factorial(const HorosphericalEmbedding& emb) {
  if (!factoriality_profile(emb.fan).q_factorial)
    fail(ErrorCode::NotQFactorial, "operation requires a Q-factorial fan");
}

// Local system of one maximal cone: one equation per divisor of B(X) whose
// support contains the cone's orbit (its uncolored rays and its colors).
struct LocalSystem {
  std::vector<DivisorId> ids;
  std::vector<RatVec> rows;
};

LocalSystem local_system(const HorosphericalEmbedding& emb, std::size_t max_index) {
  const auto& mc = emb.fan.maximal_cones[max_index];
  LocalSystem sys;
  std::vector<IntVec> colored;
  for (const ColorId& c : mc.colors)
    colored.push_back(primitive_generator(emb.fan.color_table.at(c)));
  RatCone cone = emb.fan.cone_of(max_index);
  for (const IntVec& ray : cone.extreme_rays()) {
    if (std::find(colored.begin(), colored.end(), ray) != colored.end()) continue;
    std::size_t idx =
        std::find(emb.fan.rays.begin(), emb.fan.rays.end(), ray) - emb.fan.rays.begin();
    sys.ids.push_back(DivisorId::boundary(idx));
    sys.rows.push_back(to_rat(ray));
  }
  for (const ColorId& c : mc.colors) {
    sys.ids.push_back(DivisorId::color_divisor(c));
    sys.rows.push_back(to_rat(emb.fan.color_table.at(c)));
  }
  return sys;
}

PLResult pl_unchecked(const HorosphericalEmbedding& emb, const BDivisor& d) {
  PLResult out;
  out.cartier = true;
  for (std::size_t i = 0; i < emb.fan.maximal_cones.size(); ++i) {
    LocalSystem sys = local_system(emb, i);
    RatVec rhs;
    for (const DivisorId& id : sys.ids) rhs.push_back(coefficient(d, id));
    LinearSolve ls = solve(sys.rows, rhs, emb.fan.lattice_rank);
    if (!ls.consistent)
      fail(ErrorCode::Inconsistent,
           "no local linear functional on maximal cone " + std::to_string(i));
    for (const Rat& x : ls.solution)
      if (x.get_den() != 1) out.cartier = false;
    out.pl.chi.push_back(std::move(ls.solution));
  }
  out.q_cartier = true;
  return out;
}

void check_curve(const HorosphericalEmbedding& emb, const std::vector<Wall>& walls,
                 const CurveClass& curve) {
  switch (curve.kind) {
    case CurveClass::Kind::Wall:
      if (curve.wall_id >= walls.size())
        fail(ErrorCode::InvalidCurve, "wall id out of range");
      return;
    case CurveClass::Kind::ColorCurve: {
      auto it = emb.fan.color_table.find(curve.color);
      if (it == emb.fan.color_table.end())
        fail(ErrorCode::InvalidCurve, "unknown color " + curve.color);
      if (is_zero(it->second))
        fail(ErrorCode::InvalidCurve, "color " + curve.color + " has zero image");
      if (curve.orbit_index >= emb.fan.maximal_cones.size())
        fail(ErrorCode::InvalidCurve, "orbit index out of range");
      if (emb.fan.maximal_cones[curve.orbit_index].colors.count(curve.color))
        fail(ErrorCode::InvalidCurve,
             "color " + curve.color + " is attached to the chosen orbit cone");
      return;
    }
    case CurveClass::Kind::ZeroColorCurve: {
      auto it = emb.fan.color_table.find(curve.color);
      if (it == emb.fan.color_table.end())
        fail(ErrorCode::InvalidCurve, "unknown color " + curve.color);
      if (!is_zero(it->second))
        fail(ErrorCode::InvalidCurve, "color " + curve.color + " has nonzero image");
      return;
    }
  }
}

Rat eval_curve(const HorosphericalEmbedding& emb, const std::vector<Wall>& walls,
               const PLResult& pl, const BDivisor& d, const CurveClass& curve) {
  switch (curve.kind) {
    case CurveClass::Kind::Wall: {
      const Wall& w = walls[curve.wall_id];
      if (w.mu.span_equations().size() != 1)
        fail(ErrorCode::Internal, "wall cone is not of codimension one");
      IntVec chi_mu = w.mu.span_equations().front();
      Rat side = dot(emb.fan.cone_of(w.plus_index).relative_interior_point(), chi_mu);
      if (side == 0) fail(ErrorCode::Internal, "wall covector vanishes on the plus cone");
      if (side < 0) chi_mu = neg(chi_mu);
      RatVec diff = sub(pl.pl.chi[w.plus_index], pl.pl.chi[w.minus_index]);
      std::size_t k = 0;
      while (chi_mu[k] == 0) ++k;
      Rat c = diff[k] / Rat(chi_mu[k]);
      for (std::size_t j = 0; j < diff.size(); ++j)
        if (diff[j] != c * Rat(chi_mu[j]))
          fail(ErrorCode::Internal, "piecewise-linear difference is not a multiple of chi_mu");
      return c;
    }
    case CurveClass::Kind::ColorCurve: {
      const IntVec& rho = emb.fan.color_table.at(curve.color);
      return coefficient(d, DivisorId::color_divisor(curve.color)) -
             dot(pl.pl.chi[curve.orbit_index], rho);
    }
    case CurveClass::Kind::ZeroColorCurve:
      return coefficient(d, DivisorId::color_divisor(curve.color));
  }
  fail(ErrorCode::Internal, "unhandled curve kind");
}

BDivisor unit_divisor(const DivisorId& id) {
  BDivisor d;
  d.coefficients[id] = Rat(1);
  return d;
}

std::vector<CurveClass> curve_family(const HorosphericalEmbedding& emb,
                                     const std::vector<Wall>& walls) {
  std::vector<CurveClass> out;
  for (std::size_t w = 0; w < walls.size(); ++w) out.push_back(CurveClass::wall(w));
  for (std::size_t i = 0; i < emb.fan.maximal_cones.size(); ++i)
    for (const auto& [label, rho] : emb.fan.color_table) {
      if (is_zero(rho) || emb.fan.maximal_cones[i].colors.count(label)) continue;
      out.push_back(CurveClass::color_curve(label, i));
    }
  for (const auto& [label, rho] : emb.fan.color_table)
    if (is_zero(rho)) out.push_back(CurveClass::zero_color_curve(label));
  return out;
}

std::vector<DivisorId> picard_basis_unchecked(const HorosphericalEmbedding& emb) {
  std::vector<DivisorId> b = b_divisors_unchecked(emb);
  const std::size_t s = b.size(), r = emb.datum.rank();
  // Spanning set so far: the image of M inside Z^{B(X)} ...
  std::vector<IntVec> span;
  for (std::size_t j = 0; j < r; ++j) {
    IntVec col(s, Int(0));
    for (std::size_t t = 0; t < s; ++t) col[t] = divisor_image_unchecked(emb, b[t])[j];
    span.push_back(std::move(col));
  }
  // ... extended greedily by unit vectors whose classes stay independent.
  std::vector<DivisorId> basis;
  std::size_t current = rank(span);
  for (std::size_t t = 0; t < s; ++t) {
    IntVec unit(s, Int(0));
    unit[t] = 1;
    span.push_back(std::move(unit));
    if (rank(span) > current) {
      ++current;
      basis.push_back(b[t]);
    } else {
      span.pop_back();
    }
  }
  return basis;
}

std::vector<std::pair<CurveClass, NumClass>> numclasses_unchecked(
    const HorosphericalEmbedding& emb, const std::vector<Wall>& walls) {
  std::vector<DivisorId> basis = picard_basis_unchecked(emb);
  std::vector<PLResult> pls;
  std::vector<BDivisor> units;
  for (const DivisorId& id : basis) {
    units.push_back(unit_divisor(id));
    pls.push_back(pl_unchecked(emb, units.back()));
  }
  std::vector<std::pair<CurveClass, NumClass>> out;
  for (const CurveClass& c : curve_family(emb, walls)) {
    NumClass nc;
    for (std::size_t k = 0; k < basis.size(); ++k)
      nc.push_back(eval_curve(emb, walls, pls[k], units[k], c));
    out.emplace_back(c, std::move(nc));
  }
  return out;
}

bool projective_unchecked(const std::vector<std::pair<CurveClass, NumClass>>& ncs) {
  std::vector<RatVec> classes;
  for (const auto& entry : ncs) {
    if (is_zero(entry.second)) return false;  // nothing pairs strictly positively with 0
    classes.push_back(entry.second);
  }
  std::size_t k = classes.empty() ? 0 : classes.front().size();
  return RatCone::from_generators_rat(k, classes).is_strictly_convex();
}

}  // namespace

std::vector<DivisorId> b_divisors(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  return b_divisors_unchecked(emb);
}

IntVec divisor_image(const HorosphericalEmbedding& emb, const DivisorId& id) {
  require_valid_embedding(emb);
  std::vector<DivisorId> b = b_divisors_unchecked(emb);
  if (std::find(b.begin(), b.end(), id) == b.end())
    fail(ErrorCode::PreconditionFailed, id.label() + " is not in B(X)");
  return divisor_image_unchecked(emb, id);
}

ClassGroup class_group(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  require_complete(emb);
  std::vector<DivisorId> b = b_divisors_unchecked(emb);
  const std::size_t r = emb.datum.rank();
  ClassGroup out;
  out.relations = IntMatrix(b.size(), r);
  for (std::size_t t = 0; t < b.size(); ++t) {
    IntVec img = divisor_image_unchecked(emb, b[t]);
    for (std::size_t j = 0; j < r; ++j) out.relations.at(t, j) = img[j];
  }
  SNFResult snf = smith_normal_form(out.relations);
  std::size_t diag_rank = 0;
  for (std::size_t i = 0; i < std::min(b.size(), r); ++i) {
    if (snf.S.at(i, i) == 0) break;
    ++diag_rank;
    if (snf.S.at(i, i) > 1) out.torsion.push_back(snf.S.at(i, i));
  }
  if (diag_rank != r)
    fail(ErrorCode::Internal, "character lattice does not inject despite completeness");
  out.free_rank = b.size() - diag_rank;
  return out;
}

PLResult pl_function(const HorosphericalEmbedding& emb, const BDivisor& d) {
  require_valid_embedding(emb);
  check_divisor_support(emb, d);
  return pl_unchecked(emb, d);
}

Rat intersect_curve(const HorosphericalEmbedding& emb, const BDivisor& d,
                    const CurveClass& curve) {
  require_valid_embedding(emb);
  check_divisor_support(emb, d);
  std::vector<Wall> walls = support_and_walls(emb.fan).walls;
  check_curve(emb, walls, curve);
  PLResult pl;
  try {
    pl = pl_unchecked(emb, d);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Inconsistent)
      fail(ErrorCode::NotQCartier, "divisor is not Q-Cartier");
    throw;
  }
  return eval_curve(emb, walls, pl, d, curve);
}

std::vector<DivisorId> picard_basis(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  require_complete(emb);
  return picard_basis_unchecked(emb);
}

std::vector<std::pair<CurveClass, NumClass>> curve_numclasses(
    const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  require_complete(emb);
  require_q_factorial(emb);
  return numclasses_unchecked(emb, support_and_walls(emb.fan).walls);
}

Nef1Result nef1_eq_psef1(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  require_complete(emb);
  require_q_factorial(emb);
  std::vector<Wall> walls = support_and_walls(emb.fan).walls;
  if (!projective_unchecked(numclasses_unchecked(emb, walls)))
    fail(ErrorCode::NotProjective, "nef/psef comparison requires a projective embedding");
  std::vector<CurveClass> curves = curve_family(emb, walls);
  Nef1Result out;
  for (const DivisorId& id : b_divisors_unchecked(emb)) {
    BDivisor d = unit_divisor(id);
    PLResult pl = pl_unchecked(emb, d);
    for (const CurveClass& c : curves)
      if (eval_curve(emb, walls, pl, d, c) < 0) {
        out.equal = false;
        out.certificate = {id, c};
        return out;
      }
  }
  out.equal = true;
  return out;
}

Positivity positivity(const HorosphericalEmbedding& emb, const BDivisor& d) {
  require_valid_embedding(emb);
  require_complete(emb);
  require_q_factorial(emb);
  std::vector<Wall> walls = support_and_walls(emb.fan).walls;
  if (!projective_unchecked(numclasses_unchecked(emb, walls)))
    fail(ErrorCode::NotProjective, "positivity requires a projective embedding");
  check_divisor_support(emb, d);
  PLResult pl;
  try {
    pl = pl_unchecked(emb, d);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Inconsistent)
      fail(ErrorCode::NotQCartier, "divisor is not Q-Cartier");
    throw;
  }
  Positivity out;
  out.nef = true;
  out.ample = true;
  for (const CurveClass& c : curve_family(emb, walls)) {
    Rat v = eval_curve(emb, walls, pl, d, c);
    if (v < 0) out.nef = false;
    if (v <= 0) out.ample = false;
  }
  return out;
}

bool projective(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  require_complete(emb);
  require_q_factorial(emb);
  std::vector<Wall> walls = support_and_walls(emb.fan).walls;
  return projective_unchecked(numclasses_unchecked(emb, walls));
}

}  // namespace fanlab

#include "fanlab/mori.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fanlab/errors.hpp"

namespace fanlab {
namespace {

void require_contractible(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  if (!support_and_walls(emb.fan).complete)
    fail(ErrorCode::NotComplete, "operation requires a complete fan");
  if (!factoriality_profile(emb.fan).q_factorial)
    fail(ErrorCode::NotQFactorial, "operation requires a Q-factorial fan");
  if (!projective(emb))
    fail(ErrorCode::NotProjective, "operation requires a projective embedding");
}

// The ray of a maximal cone that the wall does not contain; Q-factorial
// walls leave exactly one.
std::size_t off_wall_ray(const ColoredFan& fan, std::size_t cone_index, const RatCone& mu) {
  std::optional<std::size_t> found;
  for (std::size_t idx : fan.maximal_cones[cone_index].ray_indices) {
    if (mu.contains(fan.rays[idx], Membership::Closed)) continue;
    if (found) fail(ErrorCode::Internal, "wall misses two rays of an adjacent cone");
    found = idx;
  }
  if (!found) fail(ErrorCode::Internal, "wall contains its adjacent cone");
  return *found;
}

WallData wall_data_unchecked(const HorosphericalEmbedding& emb,
                             const std::vector<Wall>& walls, std::size_t wall_id) {
  const ColoredFan& fan = emb.fan;
  const Wall& w = walls[wall_id];
  WallData out;
  out.wall_id = wall_id;
  out.mu = w.mu;
  out.plus_index = w.plus_index;
  out.minus_index = w.minus_index;

  std::vector<IntVec> wall_gens = w.mu.extreme_rays();
  IntVec e_plus = fan.rays[off_wall_ray(fan, w.plus_index, w.mu)];
  IntVec e_minus = fan.rays[off_wall_ray(fan, w.minus_index, w.mu)];

  // solve sum_{i<=r} a_i e_i = -e_{r+1}
  const std::size_t n = fan.lattice_rank;
  const std::size_t r = wall_gens.size() + 1;
  std::vector<RatVec> rows(n, RatVec(r, Rat(0)));
  RatVec rhs;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t j = 0; j + 1 < r; ++j) rows[c][j] = Rat(wall_gens[j][c]);
    rows[c][r - 1] = Rat(e_plus[c]);
    rhs.push_back(Rat(-e_minus[c]));
  }
  LinearSolve ls = solve(rows, rhs, r);
  if (!ls.consistent) fail(ErrorCode::Internal, "wall relation has no solution");
  if (ls.solution[r - 1] <= 0)
    fail(ErrorCode::Internal, "wall relation is not positive on the plus cone");

  // order the wall generators negatives / zeros / positives, stably
  std::vector<std::size_t> order(wall_gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto bucket = [&](std::size_t i) {
      if (ls.solution[i] < 0) return 0;
      return ls.solution[i] == 0 ? 1 : 2;
    };
    return bucket(a) < bucket(b);
  });
  for (std::size_t i : order) {
    out.generators.push_back(wall_gens[i]);
    out.coefficients.push_back(ls.solution[i]);
    if (ls.solution[i] < 0) ++out.alpha;
    if (ls.solution[i] <= 0) ++out.beta;
  }
  out.generators.push_back(std::move(e_plus));
  out.coefficients.push_back(ls.solution[r - 1]);
  out.generators.push_back(std::move(e_minus));
  out.coefficients.emplace_back(1);
  return out;
}

// Minimal disjoint-set over maximal cone indices.
struct DSU {
  std::vector<std::size_t> parent;
  explicit DSU(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Drop rays no longer used by any maximal cone and renumber.
ColoredFan reindexed(const ColoredFan& fan) {
  std::set<std::size_t> used;
  for (const auto& mc : fan.maximal_cones) used.insert(mc.ray_indices.begin(), mc.ray_indices.end());
  std::map<std::size_t, std::size_t> to_new;
  ColoredFan out = fan;
  out.rays.clear();
  for (std::size_t idx : used) {
    to_new[idx] = out.rays.size();
    out.rays.push_back(fan.rays[idx]);
  }
  for (auto& mc : out.maximal_cones)
    for (std::size_t& idx : mc.ray_indices) idx = to_new.at(idx);
  return out;
}

ContractionResult contract_birational(const HorosphericalEmbedding& emb,
                                      const std::vector<Wall>& walls,
                                      const std::vector<std::size_t>& wall_ids,
                                      const WallData& wd) {
  const ColoredFan& fan = emb.fan;
  DSU dsu(fan.maximal_cones.size());
  for (std::size_t id : wall_ids) dsu.unite(walls[id].plus_index, walls[id].minus_index);

  std::map<std::size_t, std::vector<std::size_t>> groups;  // root -> members
  for (std::size_t i = 0; i < fan.maximal_cones.size(); ++i)
    groups[dsu.find(i)].push_back(i);

  ColoredFan result = fan;
  result.maximal_cones.clear();
  for (const auto& [root, members] : groups) {
    if (members.size() == 1) {
      result.maximal_cones.push_back(fan.maximal_cones[members.front()]);
      continue;
    }
    std::set<std::size_t> idx_set;
    ColoredFan::MaxCone merged;
    for (std::size_t i : members) {
      const auto& mc = fan.maximal_cones[i];
      idx_set.insert(mc.ray_indices.begin(), mc.ray_indices.end());
      merged.colors.insert(mc.colors.begin(), mc.colors.end());
    }
    std::vector<IntVec> gens;
    for (std::size_t idx : idx_set) gens.push_back(fan.rays[idx]);
    RatCone united = RatCone::from_generators(fan.lattice_rank, gens);
    for (std::size_t idx : idx_set) {
      if (std::find(united.extreme_rays().begin(), united.extreme_rays().end(),
                    fan.rays[idx]) != united.extreme_rays().end())
        merged.ray_indices.push_back(idx);
    }
    result.maximal_cones.push_back(std::move(merged));
  }

  ContractionResult out;
  out.kind = wd.alpha == 1 ? ContractionKind::Divisorial : ContractionKind::Small;
  std::vector<IntVec> exc(wd.generators.begin(), wd.generators.begin() + wd.alpha);
  out.exceptional_cone = RatCone::from_generators(fan.lattice_rank, exc);
  std::vector<IntVec> img = exc;
  img.insert(img.end(), wd.generators.begin() + wd.beta, wd.generators.end());
  out.image_cone = RatCone::from_generators(fan.lattice_rank, img);
  out.fan = reindexed(result);
  out.report = validate(*out.fan);
  return out;
}

ContractionResult contract_fiber(const HorosphericalEmbedding& emb, const WallData& wd) {
  const ColoredFan& fan = emb.fan;
  const std::size_t n = fan.lattice_rank;

  std::vector<IntVec> positive(wd.generators.begin() + wd.beta, wd.generators.end());
  std::vector<IntVec> pi_rows = integer_kernel(IntMatrix::from_rows(positive));
  const std::size_t target_rank = pi_rows.size();
  auto project = [&](const IntVec& v) {
    IntVec out;
    for (const IntVec& row : pi_rows) out.push_back(dot(row, v));
    return out;
  };

  ColoredFan target;
  target.lattice_rank = target_rank;
  for (const auto& [label, rho] : fan.color_table) {
    IntVec img = project(rho);
    if (is_zero(img)) continue;
    target.color_table.emplace(label, std::move(img));
  }

  // image cones, deduplicated by their canonical form
  std::map<IntVec, std::size_t> ray_of;
  std::vector<std::pair<RatCone, ColoredFan::MaxCone>> images;
  for (const auto& mc : fan.maximal_cones) {
    std::vector<IntVec> gens;
    for (std::size_t idx : mc.ray_indices) {
      IntVec img = project(fan.rays[idx]);
      if (!is_zero(img)) gens.push_back(std::move(img));
    }
    RatCone cone = RatCone::from_generators(target_rank, gens);
    ColoredFan::MaxCone image;
    for (const IntVec& ray : cone.extreme_rays()) {
      auto it = ray_of.find(ray);
      if (it == ray_of.end()) {
        it = ray_of.emplace(ray, target.rays.size()).first;
        target.rays.push_back(ray);
      }
      image.ray_indices.push_back(it->second);
    }
    std::sort(image.ray_indices.begin(), image.ray_indices.end());
    for (const ColorId& c : mc.colors)
      if (target.color_table.count(c)) image.colors.insert(c);
    bool seen = false;
    for (auto& [prev, prev_cone] : images)
      if (prev == cone) {
        seen = true;
        prev_cone.colors.insert(image.colors.begin(), image.colors.end());
        break;
      }
    if (!seen) images.emplace_back(std::move(cone), std::move(image));
  }
  for (auto& [cone, mc] : images) target.maximal_cones.push_back(std::move(mc));

  ContractionResult out;
  out.kind = ContractionKind::Fiber;
  std::vector<IntVec> img_gens;
  for (const IntVec& e : wd.generators) {
    IntVec img = project(e);
    if (!is_zero(img)) img_gens.push_back(std::move(img));
  }
  out.image_cone = RatCone::from_generators(target_rank, img_gens);
  out.projection = IntMatrix::from_rows(pi_rows);
  for (const auto& [label, rho] : fan.color_table)
    if (is_zero(project(rho))) out.dominant_colors.push_back(label);
  out.fan = std::move(target);
  out.report = validate(*out.fan);
  return out;
}

ContractionResult contract_color(const HorosphericalEmbedding& emb, const CurveClass& curve) {
  const ColoredFan& fan = emb.fan;
  const auto& mc = fan.maximal_cones[curve.orbit_index];
  const IntVec& rho = fan.color_table.at(curve.color);

  // minimal face of the orbit cone containing rho
  std::vector<RatVec> rows(fan.lattice_rank, RatVec(mc.ray_indices.size(), Rat(0)));
  RatVec rhs;
  for (std::size_t c = 0; c < fan.lattice_rank; ++c) {
    for (std::size_t j = 0; j < mc.ray_indices.size(); ++j)
      rows[c][j] = Rat(fan.rays[mc.ray_indices[j]][c]);
    rhs.push_back(Rat(rho[c]));
  }
  LinearSolve ls = solve(rows, rhs, mc.ray_indices.size());
  if (!ls.consistent) fail(ErrorCode::Internal, "color image escapes the span of its cone");
  std::vector<std::size_t> sigma;
  std::vector<IntVec> sigma_gens;
  for (std::size_t j = 0; j < mc.ray_indices.size(); ++j)
    if (ls.solution[j] > 0) {
      sigma.push_back(mc.ray_indices[j]);
      sigma_gens.push_back(fan.rays[mc.ray_indices[j]]);
    }

  ColoredFan result = fan;
  for (auto& cone : result.maximal_cones)
    if (std::includes(cone.ray_indices.begin(), cone.ray_indices.end(), sigma.begin(),
                      sigma.end()))
      cone.colors.insert(curve.color);

  ContractionResult out;
  out.kind = ContractionKind::Divisorial;
  out.exceptional_cone = RatCone::from_generators(fan.lattice_rank, sigma_gens);
  out.image_cone = fan.cone_of(curve.orbit_index);
  out.fan = std::move(result);
  out.report = validate(*out.fan);
  return out;
}

}  // namespace

WallData wall_data(const HorosphericalEmbedding& emb, std::size_t wall_id) {
  require_contractible(emb);
  std::vector<Wall> walls = support_and_walls(emb.fan).walls;
  if (wall_id >= walls.size())
    fail(ErrorCode::NotAWall, "wall id " + std::to_string(wall_id) + " out of range");
  return wall_data_unchecked(emb, walls, wall_id);
}

std::vector<ExtremalRay> extremal_rays(const HorosphericalEmbedding& emb) {
  require_contractible(emb);
  auto ncs = curve_numclasses(emb);
  std::vector<RatVec> classes;
  for (const auto& [curve, nc] : ncs) classes.push_back(nc);
  RatCone ne = RatCone::from_generators_rat(picard_basis(emb).size(), classes);

  std::vector<ExtremalRay> out;
  for (const IntVec& g : ne.extreme_rays()) {
    ExtremalRay ray;
    ray.numclass = g;
    for (const auto& [curve, nc] : ncs)
      if (primitive_generator(nc) == g) ray.curves.push_back(curve);
    if (ray.curves.empty())
      fail(ErrorCode::Internal, "extreme ray of the curve cone carries no curve");
    out.push_back(std::move(ray));
  }
  return out;
}

ContractionResult contract(const HorosphericalEmbedding& emb, const IntVec& ray) {
  require_contractible(emb);
  if (is_zero(ray)) fail(ErrorCode::NotExtremal, "the zero class spans no ray");
  IntVec target = primitive_generator(ray);
  std::optional<ExtremalRay> found;
  for (ExtremalRay& er : extremal_rays(emb))
    if (er.numclass == target) found = std::move(er);
  if (!found)
    fail(ErrorCode::NotExtremal, to_string(target) + " is not an extremal curve class");

  std::vector<Wall> walls = support_and_walls(emb.fan).walls;
  std::vector<std::size_t> wall_ids;
  for (const CurveClass& c : found->curves)
    if (c.kind == CurveClass::Kind::Wall) wall_ids.push_back(c.wall_id);

  if (!wall_ids.empty()) {
    WallData wd = wall_data_unchecked(emb, walls, wall_ids.front());
    if (wd.alpha == 0) return contract_fiber(emb, wd);
    return contract_birational(emb, walls, wall_ids, wd);
  }

  for (const CurveClass& c : found->curves) {
    if (c.kind != CurveClass::Kind::ColorCurve) continue;
    const IntVec& rho = emb.fan.color_table.at(c.color);
    if (emb.fan.cone_of(c.orbit_index).contains(rho, Membership::Closed))
      return contract_color(emb, c);
  }

  for (const CurveClass& c : found->curves) {
    if (c.kind != CurveClass::Kind::ZeroColorCurve) continue;
    ContractionResult out;
    out.kind = ContractionKind::Unsupported;
    out.note = "curve of the zero-image color " + c.color +
               " moves the generic isotropy; horo_reduce handles the related reduction";
    return out;
  }
  fail(ErrorCode::Unsupported, "no applicable surgery for this extremal ray");
}

}  // namespace fanlab

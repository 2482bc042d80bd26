#include "fanlab/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fanlab/errors.hpp"
#include "fanlab/linalg.hpp"

namespace fanlab {

namespace {

void require_complete(const ColoredFan& fan, const char* what) {
  if (!support_and_walls(fan).complete)
    fail(ErrorCode::NotComplete, std::string(what) + " requires a complete fan");
}

// Positive primitive integer rescaling of a rational relation vector whose
// entries all share one sign.
IntVec primitive_positive(const RatVec& a) {
  RatVec scaled = a;
  if (scaled[0] < 0)
    for (Rat& x : scaled) x = -x;
  Int denom = 1;
  for (const Rat& x : scaled) denom = lcm(denom, x.get_den());
  IntVec out(scaled.size());
  Int g = 0;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    out[i] = Int(scaled[i].get_num() * (denom / scaled[i].get_den()));
    g = gcd(g, out[i]);
  }
  for (Int& x : out) x /= g;
  return out;
}

}  // namespace

ProjectiveSpaceProduct detect_product_of_projective_spaces(const ColoredFan& fan) {
  require_valid(fan);
  if (!fan.color_table.empty())
    fail(ErrorCode::Unsupported, "projective-space detection works on toric fans only");
  require_complete(fan, "projective-space detection");
  FactorialityProfile profile = factoriality_profile(fan);
  if (!profile.q_factorial)
    fail(ErrorCode::NotQFactorial, "projective-space detection requires a Q-factorial fan");

  ProjectiveSpaceProduct out;
  const std::size_t n = fan.lattice_rank;
  const std::size_t m = fan.rays.size();
  if (n == 0) {  // the point is the empty product
    out.found = true;
    out.exact = true;
    return out;
  }

  // Each ray outside the first maximal cone closes one candidate circuit:
  // writing it over the cone's rays, the support of the (unique) expression
  // plus the ray itself must carry an all-positive relation.
  const std::vector<std::size_t>& sigma0 = fan.maximal_cones.front().ray_indices;
  std::vector<RatVec> rows(n, RatVec(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t j = 0; j < n; ++j) rows[c][j] = Rat(fan.rays[sigma0[j]][c]);

  const std::size_t unassigned = m;
  std::vector<std::size_t> owner(m, unassigned);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::map<std::size_t, Rat>> relations;

  for (std::size_t o = 0; o < m; ++o) {
    if (std::binary_search(sigma0.begin(), sigma0.end(), o)) continue;
    RatVec rhs = to_rat(fan.rays[o]);
    LinearSolve ls = solve(rows, rhs, n);
    std::map<std::size_t, Rat> rel;
    rel[o] = 1;
    std::vector<std::size_t> group{o};
    for (std::size_t j = 0; j < n; ++j) {
      if (ls.solution[j] == 0) continue;
      if (ls.solution[j] > 0) return out;  // relation not positive
      rel[sigma0[j]] = -ls.solution[j];
      group.push_back(sigma0[j]);
    }
    for (std::size_t idx : group) {
      if (owner[idx] != unassigned) return out;  // circuits overlap
      owner[idx] = groups.size();
    }
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
    relations.push_back(std::move(rel));
  }
  for (std::size_t idx = 0; idx < m; ++idx)
    if (owner[idx] == unassigned) return out;  // a cone ray in no circuit

  // One omitted ray per group inside every maximal cone is forced (a full
  // circuit inside a cone would contradict the independence of its rays),
  // so comparing counts suffices for "all selections occur".
  std::size_t selections = 1;
  for (const auto& g : groups) selections *= g.size();
  if (fan.maximal_cones.size() != selections) return out;

  std::vector<std::size_t> order(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return groups[a].front() < groups[b].front(); });

  out.found = true;
  bool unit_coefficients = true;
  for (std::size_t i : order) {
    RatVec aligned;
    for (std::size_t idx : groups[i]) aligned.push_back(relations[i].at(idx));
    IntVec coeffs = primitive_positive(aligned);
    for (const Int& c : coeffs)
      if (c != 1) unit_coefficients = false;
    out.dims.push_back(groups[i].size() - 1);
    out.groups.push_back(groups[i]);
    out.circuit_coefficients.push_back(std::move(coeffs));
  }
  out.exact = unit_coefficients && profile.locally_factorial;
  out.cover = !out.exact;
  return out;
}

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Rays joined whenever they share a positive circuit (a minimal dependent
// set whose unique relation has full support of one sign).
std::vector<std::vector<std::size_t>> circuit_components(const std::vector<IntVec>& rays,
                                                         std::size_t n) {
  const std::size_t m = rays.size();
  Dsu dsu(m);
  std::vector<std::size_t> pick;
  auto scan = [&](std::size_t size, auto&& self, std::size_t next) -> void {
    if (pick.size() == size) {
      std::vector<RatVec> rows(n, RatVec(size));
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < size; ++j) rows[c][j] = Rat(rays[pick[j]][c]);
      std::vector<RatVec> kernel = rational_kernel(rows, size);
      if (kernel.size() != 1) return;
      const RatVec& a = kernel.front();
      int sign = 0;
      for (const Rat& x : a) {
        if (x == 0) return;  // a smaller subset is already dependent
        int s = x > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) return;
      }
      for (std::size_t j = 1; j < size; ++j) dsu.unite(pick[0], pick[j]);
      return;
    }
    for (std::size_t i = next; i + (size - pick.size()) <= m; ++i) {
      pick.push_back(i);
      self(size, self, i + 1);
      pick.pop_back();
    }
  };
  for (std::size_t size = 2; size <= std::min(n + 1, m); ++size) scan(size, scan, 0);

  std::map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < m; ++i) buckets[dsu.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> comps;
  for (auto& [root, members] : buckets) comps.push_back(std::move(members));
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

using Partition = std::vector<std::vector<std::size_t>>;

std::string partition_key(const Partition& parts) {
  std::ostringstream os;
  for (const auto& p : parts) {
    for (std::size_t i : p) os << i << ',';
    os << ';';
  }
  return os.str();
}

Partition canonical(Partition parts) {
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return parts;
}

// Integer basis of the characters vanishing on every row; identity when
// there are no rows.
std::vector<IntVec> perp_basis(const std::vector<IntVec>& rows, std::size_t n) {
  if (rows.empty()) {
    std::vector<IntVec> id(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }
  return hermite_rows(integer_kernel(IntMatrix::from_rows(rows)));
}

Weight weight_combination(const std::vector<Weight>& basis, const IntVec& coeffs) {
  Weight w;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (coeffs[j] == 0) continue;
    for (const auto& [node, value] : basis[j]) w[node] += coeffs[j] * value;
  }
  for (auto it = w.begin(); it != w.end();)
    it = it->second == 0 ? w.erase(it) : std::next(it);
  return w;
}

// Attempt to realize one partition of the rays as a product splitting.
std::optional<std::vector<ProductFactor>> try_partition(const HorosphericalEmbedding& emb,
                                                        const Partition& parts) {
  const std::size_t n = emb.fan.lattice_rank;

  // Rational spans must stack to a direct sum...
  std::vector<std::size_t> part_rank(parts.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<IntVec> vs;
    for (std::size_t idx : parts[i]) vs.push_back(emb.fan.rays[idx]);
    part_rank[i] = rank(vs);
    total += part_rank[i];
  }
  if (total != n) return std::nullopt;

  // ...and the saturated sublattices must stack to the full lattice.
  std::vector<std::vector<IntVec>> lattice(parts.size());
  std::vector<IntVec> stacked;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<IntVec> vs;
    for (std::size_t idx : parts[i]) vs.push_back(emb.fan.rays[idx]);
    lattice[i] = saturate_lattice(vs, n);
    stacked.insert(stacked.end(), lattice[i].begin(), lattice[i].end());
  }
  if (stacked.size() != n) return std::nullopt;
  Int index = det(IntMatrix::from_rows(stacked));
  if (index != 1 && index != -1) return std::nullopt;

  // Every color joins the unique part whose span contains its image.
  std::vector<std::set<ColorId>> part_colors(parts.size());
  for (const auto& [color, rho] : emb.fan.color_table) {
    bool placed = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<IntVec> vs;
      for (std::size_t idx : parts[i]) vs.push_back(emb.fan.rays[idx]);
      vs.push_back(rho);
      if (rank(vs) == part_rank[i]) {
        part_colors[i].insert(color);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }

  // Colors of distinct factors may not share a diagram component.
  if (emb.datum.diagram.node_count() > 0) {
    std::set<std::size_t> seen;
    for (const auto& colors : part_colors) {
      std::set<std::size_t> own;
      for (const ColorId& c : colors) own.insert(emb.datum.diagram.locate(c).first);
      for (std::size_t comp : own)
        if (!seen.insert(comp).second) return std::nullopt;
    }
  }

  // Maximal cones must split along the parts, with every combination of
  // factor cones showing up exactly once.
  using FactorCone = std::pair<std::vector<std::size_t>, std::set<ColorId>>;
  std::vector<std::vector<FactorCone>> factor_cones(parts.size());
  std::vector<std::map<std::string, std::size_t>> cone_index(parts.size());
  std::set<std::vector<std::size_t>> tuples;
  for (const auto& cone : emb.fan.maximal_cones) {
    std::vector<std::size_t> tuple;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      FactorCone fc;
      for (std::size_t idx : cone.ray_indices)
        if (std::binary_search(parts[i].begin(), parts[i].end(), idx)) fc.first.push_back(idx);
      for (const ColorId& c : cone.colors)
        if (part_colors[i].count(c)) fc.second.insert(c);
      std::ostringstream key;
      for (std::size_t idx : fc.first) key << idx << ',';
      key << '|';
      for (const ColorId& c : fc.second) key << c << ',';
      auto [it, fresh] = cone_index[i].try_emplace(key.str(), factor_cones[i].size());
      if (fresh) factor_cones[i].push_back(std::move(fc));
      tuple.push_back(it->second);
    }
    if (!tuples.insert(tuple).second) return std::nullopt;
  }
  std::size_t combinations = 1;
  for (const auto& fc : factor_cones) combinations *= fc.size();
  if (combinations != emb.fan.maximal_cones.size()) return std::nullopt;

  // Assemble the factor embeddings in their own coordinates and let the
  // validator have the final word.
  std::vector<ProductFactor> factors(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    ProductFactor& f = factors[i];
    f.ray_indices = parts[i];
    f.lattice_basis = lattice[i];
    f.colors.assign(part_colors[i].begin(), part_colors[i].end());

    std::vector<IntVec> others;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) others.insert(others.end(), lattice[j].begin(), lattice[j].end());
    f.character_basis = perp_basis(others, n);
    if (f.character_basis.size() != part_rank[i]) return std::nullopt;

    auto project = [&](const IntVec& v) {
      IntVec w(f.character_basis.size());
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = dot(f.character_basis[k], v);
      return w;
    };

    HorosphericalEmbedding& fe = f.embedding;
    if (emb.datum.diagram.node_count() == 0) {
      fe.datum = toric_datum(part_rank[i]);
    } else {
      fe.datum.diagram = emb.datum.diagram;
      for (const std::string& node : emb.datum.diagram.nodes())
        if (!part_colors[i].count(node)) fe.datum.parabolic.insert(node);
      for (const IntVec& row : f.character_basis)
        fe.datum.m_basis.push_back(weight_combination(emb.datum.m_basis, row));
    }
    fe.fan.lattice_rank = part_rank[i];
    std::map<std::size_t, std::size_t> new_index;
    for (std::size_t idx : parts[i]) {
      new_index[idx] = fe.fan.rays.size();
      fe.fan.rays.push_back(project(emb.fan.rays[idx]));
    }
    for (const ColorId& c : f.colors) fe.fan.color_table[c] = project(emb.fan.color_table.at(c));
    for (const FactorCone& fc : factor_cones[i]) {
      ColoredFan::MaxCone mc;
      for (std::size_t idx : fc.first) mc.ray_indices.push_back(new_index.at(idx));
      mc.colors = fc.second;
      fe.fan.maximal_cones.push_back(std::move(mc));
    }
    if (!validate_embedding(fe).ok()) return std::nullopt;
    if (!support_and_walls(fe.fan).complete) return std::nullopt;
  }
  return factors;
}

}  // namespace

ProductDecomposition decompose_fan_product(const HorosphericalEmbedding& emb,
                                           std::size_t merge_budget) {
  require_valid_embedding(emb);
  require_complete(emb.fan, "product decomposition");
  if (color_rho(emb.datum).rho.size() != emb.fan.attached_colors().size())
    fail(ErrorCode::PreconditionFailed,
         "product decomposition requires every color to be attached to the fan");

  ProductDecomposition out;
  if (emb.fan.lattice_rank == 0) return out;  // the point splits as the empty product

  Partition finest = circuit_components(emb.fan.rays, emb.fan.lattice_rank);

  std::deque<Partition> queue{finest};
  std::set<std::string> seen{partition_key(finest)};
  while (!queue.empty() && out.attempts < merge_budget) {
    Partition parts = std::move(queue.front());
    queue.pop_front();
    ++out.attempts;
    if (auto factors = try_partition(emb, parts)) {
      out.factors = std::move(*factors);
      out.coarsened = parts.size() != finest.size();
      return out;
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        Partition merged;
        for (std::size_t k = 0; k < parts.size(); ++k)
          if (k != j) merged.push_back(parts[k]);
        merged[i].insert(merged[i].end(), parts[j].begin(), parts[j].end());
        merged = canonical(std::move(merged));
        if (seen.insert(partition_key(merged)).second) queue.push_back(merged);
      }
  }

  // Budget spent: fall back to the always-valid trivial splitting.
  Partition whole(1);
  for (std::size_t i = 0; i < emb.fan.rays.size(); ++i) whole[0].push_back(i);
  ++out.attempts;
  auto factors = try_partition(emb, whole);
  if (!factors) fail(ErrorCode::Internal, "trivial partition failed to verify");
  out.factors = std::move(*factors);
  out.coarsened = finest.size() > 1;
  return out;
}

namespace {

// Identify a connected induced subdiagram: the unique valid component type
// of its size together with the relabeling onto Bourbaki positions.
DynkinComponent classify_subdiagram(const DynkinDiagram& diagram,
                                    const std::vector<std::string>& nodes,
                                    std::vector<std::size_t>& placement) {
  const std::size_t k = nodes.size();
  std::vector<DynkinComponent> candidates;
  candidates.push_back({'A', k});
  if (k >= 2) candidates.push_back({'B', k});
  if (k >= 3) candidates.push_back({'C', k});
  if (k >= 4) candidates.push_back({'D', k});
  if (k >= 6 && k <= 8) candidates.push_back({'E', k});
  if (k == 4) candidates.push_back({'F', k});
  if (k == 2) candidates.push_back({'G', k});

  for (const DynkinComponent& cand : candidates) {
    IntMatrix target = cartan_matrix(cand);
    std::vector<std::size_t> pos(k, k);  // node order index -> target position
    std::vector<bool> used(k, false);
    auto assign = [&](std::size_t i, auto&& self) -> bool {
      if (i == k) return true;
      for (std::size_t p = 0; p < k; ++p) {
        if (used[p]) continue;
        bool fits = true;
        for (std::size_t j = 0; j < i && fits; ++j)
          fits = diagram.cartan(nodes[i], nodes[j]) == target.at(p, pos[j]) &&
                 diagram.cartan(nodes[j], nodes[i]) == target.at(pos[j], p);
        if (!fits) continue;
        pos[i] = p;
        used[p] = true;
        if (self(i + 1, self)) return true;
        used[p] = false;
      }
      return false;
    };
    if (assign(0, assign)) {
      placement = pos;
      return cand;
    }
  }
  fail(ErrorCode::Internal, "induced subdiagram matches no component type");
}

}  // namespace

HoroReduction horo_reduce(const HorosphericalEmbedding& emb, const std::set<ColorId>& d1) {
  require_valid_embedding(emb);
  require_complete(emb.fan, "reduction");
  ColorData cd = color_rho(emb.datum);
  for (const ColorId& c : d1) {
    auto it = cd.rho.find(c);
    if (it == cd.rho.end())
      fail(ErrorCode::NotInD0, c + " is not a color of the open orbit");
    if (!is_zero(it->second)) fail(ErrorCode::NotInD0, c + " has a nonzero image");
  }

  HoroReduction red;
  NodeSet remaining;
  for (const std::string& node : emb.datum.diagram.nodes())
    if (!d1.count(node)) remaining.insert(node);
  red.target_parabolic = remaining;
  red.target_dimension = dim_flag(emb.datum.diagram, remaining);

  std::vector<DynkinComponent> comps;
  for (const auto& comp_nodes : connected_components(emb.datum.diagram, remaining)) {
    std::vector<std::size_t> placement;
    DynkinComponent comp = classify_subdiagram(emb.datum.diagram, comp_nodes, placement);
    std::string letter = DynkinDiagram::component_letter(comps.size());
    for (std::size_t i = 0; i < comp_nodes.size(); ++i)
      red.node_map[comp_nodes[i]] = letter + std::to_string(placement[i] + 1);
    comps.push_back(comp);
  }

  HorosphericalEmbedding& fiber = red.fiber;
  fiber.datum.diagram = DynkinDiagram(comps);
  for (const std::string& node : emb.datum.parabolic)
    fiber.datum.parabolic.insert(red.node_map.at(node));
  for (const Weight& w : emb.datum.m_basis) {
    Weight relabeled;
    for (const auto& [node, value] : w) {
      if (value == 0) continue;
      if (d1.count(node))  // zero-image colors pair to zero with every character
        fail(ErrorCode::Internal, "character pairs nontrivially with dropped color " + node);
      relabeled[red.node_map.at(node)] = value;
    }
    fiber.datum.m_basis.push_back(std::move(relabeled));
  }

  fiber.fan.lattice_rank = emb.fan.lattice_rank;
  fiber.fan.rays = emb.fan.rays;
  fiber.fan.valuation_mode = emb.fan.valuation_mode;
  fiber.fan.valuation_halfspaces = emb.fan.valuation_halfspaces;
  for (const auto& [color, rho] : emb.fan.color_table)
    if (!d1.count(color)) fiber.fan.color_table[red.node_map.at(color)] = rho;
  for (const auto& cone : emb.fan.maximal_cones) {
    ColoredFan::MaxCone mc;
    mc.ray_indices = cone.ray_indices;
    for (const ColorId& c : cone.colors) mc.colors.insert(red.node_map.at(c));
    fiber.fan.maximal_cones.push_back(std::move(mc));
  }

  red.report = validate_embedding(fiber);
  return red;
}

namespace {

bool smooth_profile(const ColoredFan& fan) {
  if (!factoriality_profile(fan).locally_factorial) return false;
  ColoredFan colorless = fan;
  colorless.color_table.clear();
  for (auto& cone : colorless.maximal_cones) cone.colors.clear();
  return factoriality_profile(colorless).locally_factorial;
}

}  // namespace

ClassifyReport classify_pipeline(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  require_complete(emb.fan, "classification");
  if (!factoriality_profile(emb.fan).q_factorial)
    fail(ErrorCode::NotQFactorial, "classification requires a Q-factorial fan");
  if (!projective(emb)) fail(ErrorCode::NotProjective, "classification requires a projective fan");

  ClassifyReport report;
  report.profile = smooth_profile(emb.fan)
                       ? "locally factorial, associated toric fan smooth"
                       : "Q-factorial (smoothness stand-in not verified)";
  report.nef1 = nef1_eq_psef1(emb);
  if (!report.nef1.equal) {
    report.notes.push_back("effective divisor classes leave the nef cone; no structure implied");
    return report;
  }

  if (emb.datum.diagram.node_count() == 0) {
    report.toric_product = detect_product_of_projective_spaces(emb.fan);
    report.notes.push_back(report.toric_product->exact
                               ? "fan is a product of projective-space fans"
                               : "fan is finitely covered by a product of projective spaces");
    return report;
  }

  ColorData cd = color_rho(emb.datum);
  std::set<ColorId> attached = emb.fan.attached_colors();
  std::set<ColorId> unattached;
  for (const auto& [color, rho] : cd.rho)
    if (!attached.count(color)) unattached.insert(color);
  report.unattached_equals_d0 = unattached == cd.d0;
  if (!*report.unattached_equals_d0)
    report.notes.push_back("a color with nonzero image is unattached, contrary to expectation");

  report.toroidal = attached.empty();
  if (report.toroidal) {
    if (smooth_profile(emb.fan)) {
      report.rational_homogeneous = true;
      report.notes.push_back("toroidal with nef effective divisors: rational homogeneous");
    } else {
      report.notes.push_back("toroidal, but homogeneity is only asserted under the smooth profile");
    }
  }

  report.reduction = horo_reduce(emb, cd.d0);
  if (!report.reduction->report.ok()) {
    report.notes.push_back("fiber failed revalidation; stopping before decomposition");
    return report;
  }

  report.fiber_decomposition = decompose_fan_product(report.reduction->fiber);
  for (const ProductFactor& f : report.fiber_decomposition->factors)
    report.factor_picard_numbers.push_back(picard_number(f.embedding));

  if (smooth_profile(report.reduction->fiber.fan)) {
    bool all_one = true;
    for (std::size_t p : report.factor_picard_numbers) all_one = all_one && p == 1;
    report.factors_all_picard_one = all_one;
    if (!all_one) report.notes.push_back("a factor has Picard number above one");
  } else {
    report.notes.push_back("Picard-one assertion skipped: fiber misses the smooth profile");
  }
  return report;
}

}  // namespace fanlab

#include "fanlab/toric_intersect.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "fanlab/divisors.hpp"
#include "fanlab/errors.hpp"
#include "fanlab/horospherical.hpp"
#include "fanlab/linalg.hpp"

#if FANLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace fanlab {
namespace {

std::string key_name(const ConeKey& key) {
  std::string out = "{";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(key[i]);
  }
  return out + "}";
}

void require_toric(const ColoredFan& fan) {
  if (!fan.color_table.empty())
    fail(ErrorCode::Unsupported, "intersection calculus handles toric fans only");
}

void require_simplicial(const ColoredFan& fan) {
  if (!factoriality_profile(fan).q_factorial)
    fail(ErrorCode::NotQFactorial, "operation requires a Q-factorial fan");
}

void require_complete(const ColoredFan& fan) {
  if (!support_and_walls(fan).complete)
    fail(ErrorCode::NotComplete, "operation requires a complete fan");
}

// In a simplicial fan every cone is the span of the ray subset naming it, so
// membership is containment in some maximal cone's ray set.
bool in_fan(const ColoredFan& fan, const ConeKey& key) {
  for (const auto& mc : fan.maximal_cones)
    if (std::includes(mc.ray_indices.begin(), mc.ray_indices.end(), key.begin(), key.end()))
      return true;
  return false;
}

void check_key(const ColoredFan& fan, const ConeKey& key) {
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] >= fan.rays.size())
      fail(ErrorCode::PreconditionFailed, "ray index " + std::to_string(key[i]) + " out of range");
    if (i && key[i - 1] >= key[i])
      fail(ErrorCode::PreconditionFailed, "cone key must list distinct rays in ascending order");
  }
  if (!in_fan(fan, key))
    fail(ErrorCode::ConeNotInFan, "no cone of the fan is spanned by rays " + key_name(key));
}

Int multiplicity_unchecked(const ColoredFan& fan, const ConeKey& tau) {
  if (tau.empty()) return Int(1);
  std::vector<IntVec> gens;
  for (std::size_t i : tau) gens.push_back(fan.rays[i]);
  return sublattice_index(gens);
}

ConeKey joined(const ConeKey& a, const ConeKey& b) {
  ConeKey out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

CycleClass transverse_unchecked(const ColoredFan& fan, const ConeKey& sigma,
                                const ConeKey& tau) {
  CycleClass out;
  out.codim = sigma.size() + tau.size();
  ConeKey gamma = joined(sigma, tau);
  if (!in_fan(fan, gamma)) return out;
  Rat coeff = Rat(multiplicity_unchecked(fan, sigma) * multiplicity_unchecked(fan, tau)) /
              Rat(multiplicity_unchecked(fan, gamma));
  out.terms.emplace(std::move(gamma), std::move(coeff));
  return out;
}

CycleClass dot_orbit_unchecked(const ColoredFan& fan, std::size_t ray, const ConeKey& tau) {
  if (!std::binary_search(tau.begin(), tau.end(), ray))
    return transverse_unchecked(fan, {ray}, tau);

  const std::size_t n = fan.lattice_rank;
  // m with <m, v> = 1, zero on the other rays of tau and on the first
  // standard basis vectors completing tau's span; the choice only moves the
  // representative inside its class.
  std::vector<RatVec> rows;
  for (std::size_t i : tau) rows.push_back(to_rat(fan.rays[i]));
  RatVec rhs;
  for (std::size_t i : tau) rhs.emplace_back(i == ray ? 1 : 0);
  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    RatVec unit(n, Rat(0));
    unit[j] = 1;
    rows.push_back(std::move(unit));
    if (rank(rows) < rows.size()) {
      rows.pop_back();
    } else {
      rhs.emplace_back(0);
    }
  }
  LinearSolve ls = solve(rows, rhs, n);
  if (!ls.consistent) fail(ErrorCode::Internal, "singular reduction system on a simplicial cone");
  const RatVec& m = ls.solution;

  CycleClass out;
  out.codim = tau.size() + 1;
  Rat mult_tau{multiplicity_unchecked(fan, tau)};
  for (std::size_t w = 0; w < fan.rays.size(); ++w) {
    if (std::binary_search(tau.begin(), tau.end(), w)) continue;
    ConeKey gamma = joined(tau, {w});
    if (!in_fan(fan, gamma)) continue;
    Rat coeff = -dot(m, fan.rays[w]) * mult_tau / Rat(multiplicity_unchecked(fan, gamma));
    if (coeff != 0) out.terms.emplace(std::move(gamma), std::move(coeff));
  }
  return out;
}

CycleClass fold_unchecked(const ColoredFan& fan, const std::vector<std::size_t>& rays,
                          CycleClass start) {
  CycleClass cur = std::move(start);
  for (std::size_t v : rays) {
    CycleClass next;
    next.codim = cur.codim + 1;
    for (const auto& [tau, c] : cur.terms) {
      CycleClass step = dot_orbit_unchecked(fan, v, tau);
      for (auto& [gamma, c2] : step.terms) {
        Rat& slot = next.terms[gamma];
        slot += c * c2;
        if (slot == 0) next.terms.erase(gamma);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Rat degree(const CycleClass& zero_cycle) {
  Rat total(0);
  for (const auto& [key, c] : zero_cycle.terms) total += c;
  return total;
}

std::vector<ConeKey> cones_of_dim(const ColoredFan& fan, std::size_t k) {
  std::set<ConeKey> keys;
  if (k == 0) {
    keys.insert({});
  } else {
    for (const auto& mc : fan.maximal_cones) {
      const auto& r = mc.ray_indices;
      if (r.size() < k) continue;
      // enumerate k-subsets of the (ascending) ray list
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        ConeKey key;
        for (std::size_t i : pick) key.push_back(r[i]);
        keys.insert(std::move(key));
        std::size_t j = k;
        while (j > 0 && pick[j - 1] == r.size() - k + (j - 1)) --j;
        if (j == 0) break;
        ++pick[j - 1];
        for (std::size_t i = j; i < k; ++i) pick[i] = pick[i - 1] + 1;
      }
    }
  }
  return {keys.begin(), keys.end()};
}

#if FANLAB_HAVE_OPENMP
int thread_cap() {
  if (const char* env = std::getenv("FANLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, omp_get_max_threads());
  }
  return omp_get_max_threads();
}
#endif

NefkResult nefk_core(const ColoredFan& fan, std::size_t k, bool parallel) {
  const std::size_t n = fan.lattice_rank;
  std::vector<ConeKey> taus = cones_of_dim(fan, k);
  std::vector<ConeKey> sigmas = cones_of_dim(fan, n - k);

  std::vector<Rat> mult_tau(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i)
    mult_tau[i] = Rat(multiplicity_unchecked(fan, taus[i]));

  const std::size_t total = taus.size() * sigmas.size();
  std::vector<Rat> values(total);
  auto pair_value = [&](std::size_t idx) -> Rat {
    const ConeKey& tau = taus[idx / sigmas.size()];
    const ConeKey& sigma = sigmas[idx % sigmas.size()];
    CycleClass start;
    start.codim = sigma.size();
    start.terms.emplace(sigma, Rat(1));
    return mult_tau[idx / sigmas.size()] * degree(fold_unchecked(fan, tau, std::move(start)));
  };

#if FANLAB_HAVE_OPENMP
  if (parallel) {
    const int cap = thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(cap)
    for (long i = 0; i < static_cast<long>(total); ++i)
      values[static_cast<std::size_t>(i)] = pair_value(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < total; ++i) values[i] = pair_value(i);
  }
#else
  (void)parallel;
  for (std::size_t i = 0; i < total; ++i) values[i] = pair_value(i);
#endif

  NefkResult out;
  for (std::size_t i = 0; i < total; ++i) {
    if (values[i] < 0) {
      out.equal = false;
      out.certificate = {taus[i / sigmas.size()], sigmas[i % sigmas.size()], values[i]};
      break;
    }
  }
  return out;
}

void nefk_gates(const ColoredFan& fan, std::size_t k) {
  require_valid(fan);
  require_toric(fan);
  require_simplicial(fan);
  require_complete(fan);
  if (k < 1 || k + 1 > fan.lattice_rank)
    fail(ErrorCode::PreconditionFailed, "k must be between 1 and rank-1");
  HorosphericalEmbedding emb{toric_datum(fan.lattice_rank), fan};
  if (!projective(emb))
    fail(ErrorCode::NotProjective, "pseudo-effective comparison needs a projective fan");
}

}  // namespace

Int cone_multiplicity(const ColoredFan& fan, const ConeKey& tau) {
  require_valid(fan);
  require_toric(fan);
  require_simplicial(fan);
  check_key(fan, tau);
  return multiplicity_unchecked(fan, tau);
}

CycleClass transverse_product(const ColoredFan& fan, const ConeKey& sigma,
                              const ConeKey& tau) {
  require_valid(fan);
  require_toric(fan);
  require_simplicial(fan);
  check_key(fan, sigma);
  check_key(fan, tau);
  ConeKey common;
  std::set_intersection(sigma.begin(), sigma.end(), tau.begin(), tau.end(),
                        std::back_inserter(common));
  if (!common.empty())
    fail(ErrorCode::OverlappingCones,
         "cones " + key_name(sigma) + " and " + key_name(tau) + " share a ray");
  return transverse_unchecked(fan, sigma, tau);
}

CycleClass divisor_dot_orbit(const ColoredFan& fan, std::size_t ray, const ConeKey& tau) {
  require_valid(fan);
  require_toric(fan);
  require_simplicial(fan);
  require_complete(fan);
  if (ray >= fan.rays.size())
    fail(ErrorCode::PreconditionFailed, "ray index " + std::to_string(ray) + " out of range");
  check_key(fan, tau);
  return dot_orbit_unchecked(fan, ray, tau);
}

Rat intersection_number(const ColoredFan& fan, const std::vector<std::size_t>& rays,
                        const ConeKey& start) {
  require_valid(fan);
  require_toric(fan);
  require_simplicial(fan);
  require_complete(fan);
  check_key(fan, start);
  for (std::size_t v : rays)
    if (v >= fan.rays.size())
      fail(ErrorCode::PreconditionFailed, "ray index " + std::to_string(v) + " out of range");
  if (start.size() + rays.size() != fan.lattice_rank)
    fail(ErrorCode::PreconditionFailed,
         "need " + std::to_string(fan.lattice_rank - start.size()) +
             " divisors to cut the orbit closure down to points");
  CycleClass init;
  init.codim = start.size();
  init.terms.emplace(start, Rat(1));
  return degree(fold_unchecked(fan, rays, std::move(init)));
}

NefkResult nefk_eq_psefk(const ColoredFan& fan, std::size_t k) {
  nefk_gates(fan, k);
  return nefk_core(fan, k, true);
}

NefkResult nefk_eq_psefk_serial(const ColoredFan& fan, std::size_t k) {
  nefk_gates(fan, k);
  return nefk_core(fan, k, false);
}

}  // namespace fanlab

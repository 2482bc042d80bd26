#include "fanlab/cone.hpp"

#include <algorithm>
#include <utility>

#include "fanlab/errors.hpp"
#include "fanlab/linalg.hpp"

namespace fanlab {

namespace {

IntVec combine(const Int& c1, const IntVec& v1, const Int& c2, const IntVec& v2) {
  IntVec out(v1.size());
  for (std::size_t i = 0; i < v1.size(); ++i) out[i] = c1 * v1[i] + c2 * v2[i];
  return out;
}

void sort_unique(std::vector<IntVec>& v) {
  std::sort(v.begin(), v.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Orthogonal projection of v off the span of the (independent) rows.
RatVec project_off(const std::vector<IntVec>& rows, const IntVec& v) {
  if (rows.empty()) return to_rat(v);
  const std::size_t k = rows.size();
  std::vector<RatVec> gram(k, RatVec(k));
  RatVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(rows[i], rows[j]));
    rhs[i] = Rat(dot(rows[i], v));
  }
  LinearSolve ls = solve(gram, rhs, k);
  RatVec out = to_rat(v);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[j] -= ls.solution[i] * Rat(rows[i][j]);
  return out;
}

}  // namespace

DDPair dd_enumerate(std::size_t n, const std::vector<IntVec>& inequalities,
                    const std::vector<IntVec>& equations) {
  std::vector<IntVec> lin;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<IntVec> rays;
  std::vector<IntVec> proc_eq, proc_ineq;

  // Drops duplicates and every candidate failing the extremality rank test:
  // a ray of the cone cut out so far is extreme iff its active constraints
  // span a space of dimension (ambient - lineality - 1).
  auto prune = [&]() {
    if (rays.empty()) return;
    if (lin.size() == n) {
      rays.clear();
      return;
    }
    sort_unique(rays);
    const std::size_t target = n - lin.size() - 1;
    std::vector<IntVec> kept;
    for (const IntVec& r : rays) {
      std::vector<IntVec> active = proc_eq;
      for (const IntVec& a : proc_ineq)
        if (dot(a, r) == 0) active.push_back(a);
      if (rank(active) >= target) kept.push_back(r);
    }
    rays = std::move(kept);
  };

  // If some lineality vector sees the constraint, pivot on it: project the
  // rest of the basis and all rays onto the hyperplane, and for an
  // inequality keep the positive side of the pivot as a new ray.
  auto reduce_by_lineality = [&](const IntVec& c, bool is_equation) {
    std::size_t k = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(c, lin[i]) != 0) {
        k = i;
        break;
      }
    if (k == lin.size()) return false;
    IntVec lstar = lin[k];
    Int d = dot(c, lstar);
    if (d < 0) {
      lstar = neg(lstar);
      d = -d;
    }
    lin.erase(lin.begin() + k);
    for (IntVec& l : lin) {
      Int t = dot(c, l);
      if (t != 0) l = primitive_generator(combine(d, l, -t, lstar));
    }
    for (IntVec& r : rays) {
      Int t = dot(c, r);
      if (t != 0) r = primitive_generator(combine(d, r, -t, lstar));
    }
    if (!is_equation) rays.push_back(std::move(lstar));
    return true;
  };

  auto split_rays = [&](const IntVec& c, bool keep_positive) {
    std::vector<IntVec> pos, zero, negv;
    for (IntVec& r : rays) {
      int s = sgn(dot(c, r));
      if (s > 0)
        pos.push_back(std::move(r));
      else if (s < 0)
        negv.push_back(std::move(r));
      else
        zero.push_back(std::move(r));
    }
    std::vector<IntVec> next = std::move(zero);
    if (keep_positive)
      for (const IntVec& p : pos) next.push_back(p);
    for (const IntVec& p : pos)
      for (const IntVec& m : negv) {
        IntVec w = combine(dot(c, p), m, -dot(c, m), p);
        if (!is_zero(w)) next.push_back(primitive_generator(w));
      }
    rays = std::move(next);
  };

  for (const IntVec& e : equations) {
    if (is_zero(e)) continue;
    if (!reduce_by_lineality(e, true)) split_rays(e, false);
    proc_eq.push_back(e);
    prune();
  }
  for (const IntVec& a : inequalities) {
    if (is_zero(a)) continue;
    if (!reduce_by_lineality(a, false)) split_rays(a, true);
    proc_ineq.push_back(a);
    prune();
  }

  DDPair out;
  out.lineality = saturate_lattice(lin, n);
  for (const IntVec& r : rays) {
    RatVec p = project_off(out.lineality, r);
    if (!is_zero(p)) out.rays.push_back(primitive_generator(p));
  }
  sort_unique(out.rays);
  return out;
}

RatCone RatCone::from_generators(std::size_t n, const std::vector<IntVec>& gens) {
  std::vector<IntVec> clean;
  for (const IntVec& g : gens) {
    if (g.size() != n) fail(ErrorCode::Internal, "generator rank mismatch");
    if (!is_zero(g)) clean.push_back(primitive_generator(g));
  }
  RatCone c;
  c.n_ = n;
  DDPair dual = dd_enumerate(n, clean, {});
  c.equations_ = dual.lineality;
  c.inequalities_ = dual.rays;
  DDPair primal = dd_enumerate(n, c.inequalities_, c.equations_);
  c.lineality_ = primal.lineality;
  c.rays_ = primal.rays;
  return c;
}

RatCone RatCone::from_generators_rat(std::size_t n, const std::vector<RatVec>& gens) {
  std::vector<IntVec> prim;
  for (const RatVec& g : gens)
    if (!is_zero(g)) prim.push_back(primitive_generator(g));
  return from_generators(n, prim);
}

RatCone RatCone::from_inequalities(std::size_t n, const std::vector<IntVec>& inequalities,
                                   const std::vector<IntVec>& equations) {
  RatCone c;
  c.n_ = n;
  DDPair primal = dd_enumerate(n, inequalities, equations);
  c.lineality_ = primal.lineality;
  c.rays_ = primal.rays;
  std::vector<IntVec> gens = primal.rays;
  for (const IntVec& l : primal.lineality) {
    gens.push_back(l);
    gens.push_back(neg(l));
  }
  DDPair dual = dd_enumerate(n, gens, {});
  c.equations_ = dual.lineality;
  c.inequalities_ = dual.rays;
  return c;
}

std::vector<IntVec> RatCone::generators() const {
  std::vector<IntVec> g = rays_;
  for (const IntVec& l : lineality_) {
    g.push_back(l);
    g.push_back(neg(l));
  }
  sort_unique(g);
  return g;
}

RatVec RatCone::relative_interior_point() const {
  RatVec p(n_, Rat(0));
  for (const IntVec& r : rays_)
    for (std::size_t i = 0; i < n_; ++i) p[i] += Rat(r[i]);
  return p;
}

bool RatCone::contains(const RatVec& v, Membership mode) const {
  if (v.size() != n_) fail(ErrorCode::Internal, "membership rank mismatch");
  for (const IntVec& e : equations_)
    if (dot(v, e) != 0) return false;
  for (const IntVec& a : inequalities_) {
    Rat t = dot(v, a);
    if (t < 0) return false;
    if (mode == Membership::RelativeInterior && t == 0) return false;
  }
  return true;
}

bool RatCone::contains(const IntVec& v, Membership mode) const {
  return contains(to_rat(v), mode);
}

bool RatCone::contains_cone(const RatCone& other) const {
  for (const IntVec& g : other.generators())
    if (!contains(g, Membership::Closed)) return false;
  return true;
}

std::vector<RatCone> RatCone::all_faces() const {
  std::vector<RatCone> found = {*this};
  // Every proper face is reached by intersecting with active facets,
  // recursively; the lineality space sits inside every face.
  for (std::size_t head = 0; head < found.size(); ++head) {
    RatCone f = found[head];
    for (const IntVec& a : inequalities_) {
      std::vector<IntVec> sub;
      for (const IntVec& r : f.rays_)
        if (dot(a, r) == 0) sub.push_back(r);
      if (sub.size() == f.rays_.size()) continue;  // hyperplane contains f
      for (const IntVec& l : f.lineality_) {
        sub.push_back(l);
        sub.push_back(neg(l));
      }
      RatCone g = from_generators(n_, sub);
      if (std::find(found.begin(), found.end(), g) == found.end()) found.push_back(g);
    }
  }
  std::sort(found.begin(), found.end(), [](const RatCone& a, const RatCone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return lex_less(a.generators(), b.generators());
  });
  return found;
}

std::vector<RatCone> RatCone::faces(std::size_t d) const {
  std::vector<RatCone> out;
  for (RatCone& f : all_faces())
    if (f.dim() == d) out.push_back(std::move(f));
  return out;
}

bool membership(const RatCone& C, const RatVec& v, Membership mode) {
  return C.contains(v, mode);
}

RatCone dual_cone(const RatCone& C) {
  std::vector<IntVec> gens = C.facet_normals();
  for (const IntVec& e : C.span_equations()) {
    gens.push_back(e);
    gens.push_back(neg(e));
  }
  return RatCone::from_generators(C.ambient_rank(), gens);
}

RatCone intersect_cones(const RatCone& a, const RatCone& b) {
  if (a.ambient_rank() != b.ambient_rank()) fail(ErrorCode::Internal, "rank mismatch");
  std::vector<IntVec> ineq = a.facet_normals();
  ineq.insert(ineq.end(), b.facet_normals().begin(), b.facet_normals().end());
  std::vector<IntVec> eq = a.span_equations();
  eq.insert(eq.end(), b.span_equations().begin(), b.span_equations().end());
  return RatCone::from_inequalities(a.ambient_rank(), ineq, eq);
}

RatCone sum_cones(const RatCone& a, const RatCone& b) {
  if (a.ambient_rank() != b.ambient_rank()) fail(ErrorCode::Internal, "rank mismatch");
  std::vector<IntVec> gens = a.generators();
  for (const IntVec& g : b.generators()) gens.push_back(g);
  return RatCone::from_generators(a.ambient_rank(), gens);
}

bool is_face_of(const RatCone& face, const RatCone& C) {
  if (face.ambient_rank() != C.ambient_rank()) return false;
  if (!C.contains_cone(face)) return false;
  // The smallest face of C containing a relative-interior point of `face`
  // must be `face` itself.
  RatVec p = face.relative_interior_point();
  std::vector<IntVec> sub;
  for (const IntVec& r : C.extreme_rays()) {
    bool on_all = true;
    for (const IntVec& a : C.facet_normals())
      if (dot(a, p) == 0 && dot(a, r) != 0) {
        on_all = false;
        break;
      }
    if (on_all) sub.push_back(r);
  }
  for (const IntVec& l : C.lineality_basis()) {
    sub.push_back(l);
    sub.push_back(neg(l));
  }
  return RatCone::from_generators(C.ambient_rank(), sub) == face;
}

bool cone_less(const RatCone& a, const RatCone& b) {
  if (a.ambient_rank() != b.ambient_rank()) return a.ambient_rank() < b.ambient_rank();
  return lex_less(a.generators(), b.generators());
}

}  // namespace fanlab

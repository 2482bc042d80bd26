#pragma once

#include <cstddef>
#include <vector>

#include "fanlab/numeric.hpp"

// Rational polyhedral cones in Q^n with exact double-description conversion.
// Every cone is stored canonically (saturated Hermite basis for the lineality
// space, primitive extreme rays projected off the lineality, facet normals and
// span equations likewise canonical), so operator== is structural equality of
// the geometric object.

namespace fanlab {

enum class Membership { Closed, RelativeInterior };

// Raw double-description output: a basis of the lineality space plus the
// extreme rays modulo lineality, both canonicalized.
struct DDPair {
  std::vector<IntVec> lineality;
  std::vector<IntVec> rays;
};

// Extreme-ray description of {x : ineq . x >= 0, eq . x = 0}. Incremental
// insertion with an exact rank-based extremality prune after every step; the
// ranks in play are small, so no adjacency bookkeeping is needed.
DDPair dd_enumerate(std::size_t n, const std::vector<IntVec>& inequalities,
                    const std::vector<IntVec>& equations);

class RatCone {
 public:
  RatCone() = default;

  static RatCone from_generators(std::size_t n, const std::vector<IntVec>& gens);
  static RatCone from_generators_rat(std::size_t n, const std::vector<RatVec>& gens);
  static RatCone from_inequalities(std::size_t n, const std::vector<IntVec>& inequalities,
                                   const std::vector<IntVec>& equations = {});
  static RatCone zero(std::size_t n) { return from_generators(n, {}); }
  static RatCone full_space(std::size_t n) { return from_inequalities(n, {}); }

  std::size_t ambient_rank() const { return n_; }
  std::size_t dim() const { return n_ - equations_.size(); }
  bool is_strictly_convex() const { return lineality_.empty(); }

  const std::vector<IntVec>& extreme_rays() const { return rays_; }
  const std::vector<IntVec>& lineality_basis() const { return lineality_; }
  const std::vector<IntVec>& facet_normals() const { return inequalities_; }
  const std::vector<IntVec>& span_equations() const { return equations_; }

  // Canonical generator list: both signs of the lineality basis plus the
  // extreme rays, lex-sorted. Equal cones yield equal lists.
  std::vector<IntVec> generators() const;

  // Sum of the canonical generators; lies in the relative interior (the zero
  // vector for a linear subspace, whose relative interior contains 0).
  RatVec relative_interior_point() const;

  bool contains(const RatVec& v, Membership mode) const;
  bool contains(const IntVec& v, Membership mode) const;
  bool contains_cone(const RatCone& other) const;

  std::vector<RatCone> faces(std::size_t dim) const;
  std::vector<RatCone> all_faces() const;  // sorted by (dim, generators)

  friend bool operator==(const RatCone& a, const RatCone& b) {
    return a.n_ == b.n_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<IntVec> lineality_;    // canonical basis of the lineality lattice
  std::vector<IntVec> rays_;         // primitive extreme rays mod lineality, sorted
  std::vector<IntVec> equations_;    // canonical basis of (span C)^perp
  std::vector<IntVec> inequalities_; // canonical facet normals
};

bool membership(const RatCone& C, const RatVec& v, Membership mode);

RatCone dual_cone(const RatCone& C);
RatCone intersect_cones(const RatCone& a, const RatCone& b);
RatCone sum_cones(const RatCone& a, const RatCone& b);
bool is_face_of(const RatCone& face, const RatCone& C);

// Deterministic total order on cones of one ambient rank (compares canonical
// generator lists); used wherever an arrangement or an orientation must be
// reproducible.
bool cone_less(const RatCone& a, const RatCone& b);

}  // namespace fanlab

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fanlab/colored_fan.hpp"
#include "fanlab/numeric.hpp"

namespace fanlab {

// Cones of a simplicial fan are named by their sorted ray-index sets; the
// empty key is the zero cone.
using ConeKey = std::vector<std::size_t>;

// A rational combination of orbit-closure classes V(sigma), all of the same
// codimension (= dim sigma). Zero coefficients are dropped, so the zero
// class has an empty term map.
struct CycleClass {
  std::size_t codim = 0;
  std::map<ConeKey, Rat> terms;
};

// Lattice index of the subgroup spanned by the primitive ray generators of
// tau inside the lattice of its span; 1 exactly for smooth cones.
Int cone_multiplicity(const ColoredFan& fan, const ConeKey& tau);

// V(sigma).V(tau) for cones meeting only at the origin:
// (mult sigma . mult tau / mult gamma) V(gamma) when gamma = <sigma, tau>
// belongs to the fan, zero otherwise. Throws OverlappingCones when the two
// cones share a ray.
CycleClass transverse_product(const ColoredFan& fan, const ConeKey& sigma,
                              const ConeKey& tau);

// D_ray . V(tau). When the ray is not in tau this is the transverse rule;
// when it is, the class is rewritten via a linear functional m with
// <m, ray> = 1 vanishing on the remaining rays of tau and on a fixed
// complement basis, giving sum over adjacent cones tau+w of
// (-<m, w>)(mult tau / mult(tau+w)) V(tau+w).
CycleClass divisor_dot_orbit(const ColoredFan& fan, std::size_t ray,
                             const ConeKey& tau);

// Degree of D_{v_1} ... D_{v_t} . V(start); repetitions give
// self-intersections. Requires dim(start) + t to reach the ambient rank.
Rat intersection_number(const ColoredFan& fan, const std::vector<std::size_t>& rays,
                        const ConeKey& start = {});

// Nef^k vs Psef^k: pseudo-effective codimension-k classes are generated by
// the V(tau) with dim tau = k, so equality holds iff every pairing
// V(tau).V(sigma) with dim sigma = n-k is nonnegative. The certificate, when
// present, is the lexicographically first negative pairing.
struct NefkResult {
  struct Violation {
    ConeKey tau;
    ConeKey sigma;
    Rat value;
  };
  bool equal = true;
  std::optional<Violation> certificate;
};

NefkResult nefk_eq_psefk(const ColoredFan& fan, std::size_t k);

// Same computation forced onto a single thread; kept as the reference
// implementation for the parallel pairing table.
NefkResult nefk_eq_psefk_serial(const ColoredFan& fan, std::size_t k);

}  // namespace fanlab

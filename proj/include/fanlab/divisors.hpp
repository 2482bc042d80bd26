#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanlab/horospherical.hpp"
#include "fanlab/linalg.hpp"

// B-stable divisors and curves on a horospherical embedding: the divisor
// basis B(X), class groups, piecewise-linear functions and Cartier tests,
// the three curve families, intersection pairings, and the nef/psef and
// ampleness criteria built on them. Everything is exact; no LP solver is
// involved anywhere (strict feasibility reduces to strict convexity of an
// explicit cone).

namespace fanlab {

// A B-stable Q-divisor, written over B(X) with finite support.
struct BDivisor {
  std::map<DivisorId, Rat> coefficients;
};

Rat coefficient(const BDivisor& d, const DivisorId& id);

// B(X): one divisor per uncolored ray (ascending ray index), then every
// color of G/H (sorted by label) — attached or not, zero image or not.
std::vector<DivisorId> b_divisors(const HorosphericalEmbedding& emb);

// rho(nu_D): the ray vector for a boundary divisor, the color-table image
// for a color.
IntVec divisor_image(const HorosphericalEmbedding& emb, const DivisorId& id);

struct ClassGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility order
  // The relation matrix of Z^{B(X)} / M: row per B(X) entry (canonical
  // order), column per M-basis character, entry <rho(nu_D), chi_j>.
  IntMatrix relations;
};

// Cokernel presentation of chi -> (<rho(nu_D), chi>)_D. Requires a valid
// complete embedding (completeness makes the map injective).
ClassGroup class_group(const HorosphericalEmbedding& emb);

// A divisor determines one linear functional per maximal cone, solving
// <rho(nu_D), chi_Y> = n_D for every divisor D whose support contains the
// orbit of Y.
struct PLFunction {
  std::vector<RatVec> chi;  // indexed by maximal cone
};

struct PLResult {
  PLFunction pl;
  bool cartier = false;    // every chi_Y integral
  bool q_cartier = false;  // every system solvable over Q
};

// Throws Inconsistent when some local system has no solution (possible only
// when the fan is not Q-factorial).
PLResult pl_function(const HorosphericalEmbedding& emb, const BDivisor& d);

// The three curve families. Walls are indexed into support_and_walls(fan);
// color curves name a color and the maximal cone of the closed orbit.
struct CurveClass {
  enum class Kind { Wall, ColorCurve, ZeroColorCurve };
  Kind kind = Kind::Wall;
  std::size_t wall_id = 0;     // Wall
  ColorId color;               // ColorCurve / ZeroColorCurve
  std::size_t orbit_index = 0; // ColorCurve: maximal cone index

  static CurveClass wall(std::size_t id) { return {Kind::Wall, id, {}, 0}; }
  static CurveClass color_curve(ColorId c, std::size_t orbit) {
    return {Kind::ColorCurve, 0, std::move(c), orbit};
  }
  static CurveClass zero_color_curve(ColorId c) {
    return {Kind::ZeroColorCurve, 0, std::move(c), 0};
  }
  friend bool operator==(const CurveClass& a, const CurveClass& b) {
    return a.kind == b.kind && a.wall_id == b.wall_id && a.color == b.color &&
           a.orbit_index == b.orbit_index;
  }
  std::string label() const;
};

// Exact intersection number of a Q-Cartier divisor with a curve class.
//   Wall mu:            the scalar c with chi_plus - chi_minus = c * chi_mu,
//                       chi_mu the primitive covector vanishing on mu and
//                       positive on the plus cone;
//   ColorCurve(D, Y):   n_D - <chi_Y, rho(nu_D)>;
//   ZeroColorCurve(D):  n_D (the chi term vanishes at 0, any Y).
Rat intersect_curve(const HorosphericalEmbedding& emb, const BDivisor& d,
                    const CurveClass& curve);

// Numerical class: pairings against the fixed Pic_Q basis.
using NumClass = RatVec;

// Lexicographically first maximal subset of B(X) whose classes are
// independent in the class group tensor Q; size = Picard number.
std::vector<DivisorId> picard_basis(const HorosphericalEmbedding& emb);

// One entry per wall (wall order), then per (maximal cone, applicable color)
// with colors sorted inside each cone, then per zero-image color. Emitted
// for every complete Q-factorial embedding, projective or not.
std::vector<std::pair<CurveClass, NumClass>> curve_numclasses(
    const HorosphericalEmbedding& emb);

struct Nef1Result {
  bool equal = false;
  // first violating pair (divisor-major scan in B(X) order)
  std::optional<std::pair<DivisorId, CurveClass>> certificate;
};

// Nef^1(X) = Psef^1(X) iff every generator of the effective cone pairs >= 0
// with every curve-family class. Requires projectivity (the families
// generate the curve cone only then).
Nef1Result nef1_eq_psef1(const HorosphericalEmbedding& emb);

struct Positivity {
  bool nef = false;    // >= 0 against every curve class
  bool ample = false;  // > 0 against every curve class
};

Positivity positivity(const HorosphericalEmbedding& emb, const BDivisor& d);

// True iff some divisor pairs strictly positively with every curve class:
// no class is zero and the cone they span is strictly convex.
bool projective(const HorosphericalEmbedding& emb);

}  // namespace fanlab

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "fanlab/colored_fan.hpp"
#include "fanlab/diagram.hpp"

// Homogeneous horospherical data and their fan embeddings. A datum fixes the
// group via its Dynkin diagram, the parabolic P_I, and an ordered basis of
// the character lattice M; N = Z^r is the literal dual, and all fan data
// lives in that coordinate system.

namespace fanlab {

struct HorosphericalDatum {
  DynkinDiagram diagram;
  NodeSet parabolic;            // the subset I of simple nodes
  std::vector<Weight> m_basis;  // ordered basis of M, fundamental coordinates

  std::size_t rank() const { return m_basis.size(); }
};

// The torus case: empty diagram, I = S = {}, and r formal basis characters
// (all pairings vanish vacuously).
HorosphericalDatum toric_datum(std::size_t r);

// Basis weights must restrict to characters of P_I, i.e. pair to zero with
// every node of I. Basis elements may agree in fundamental coordinates (they
// can differ by a central character), so independence is formal and r is
// always m_basis.size().
ValidationReport validate_datum(const HorosphericalDatum& datum);
void require_valid_datum(const HorosphericalDatum& datum);  // throws InvalidDatum

// The colors of G/H are indexed by S \ I; rho(alpha) is the vector of
// pairings of the basis characters with alpha's coroot. D0 collects the
// colors with rho = 0 (never attachable to a cone).
struct ColorData {
  std::map<ColorId, IntVec> rho;
  std::set<ColorId> d0;
};

ColorData color_rho(const HorosphericalDatum& datum);

struct HorosphericalEmbedding {
  HorosphericalDatum datum;
  ColoredFan fan;
};

// Datum validity, lattice-rank agreement, full-space valuation cone, color
// table equal to color_rho(datum), and fan validity.
ValidationReport validate_embedding(const HorosphericalEmbedding& emb);
void require_valid_embedding(const HorosphericalEmbedding& emb);

// Dimension of the orbit attached to a cone of the fan:
// (r - dim cone) + dim G/P_{I + colors of the cone}. At the zero cone this
// is dim X itself.
std::size_t orbit_dimension(const HorosphericalEmbedding& emb, const RatCone& cone);

// For complete Q-factorial X: #rays - r + #(colors of G/H not attached).
std::size_t picard_number(const HorosphericalEmbedding& emb);

}  // namespace fanlab

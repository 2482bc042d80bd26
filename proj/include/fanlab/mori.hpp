#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fanlab/colored_fan.hpp"
#include "fanlab/divisors.hpp"
#include "fanlab/horospherical.hpp"
#include "fanlab/linalg.hpp"

namespace fanlab {

// The unique relation carried by a wall mu of a complete Q-factorial fan:
// sum a_i e_i = 0 over the primitive generators e_1..e_{r-1} of mu together
// with e_r in mu_plus and e_{r+1} in mu_minus, normalized by a_{r+1} = 1
// (which forces a_r > 0). The wall generators are reordered so the
// coefficient signs read negatives, zeros, positives:
//   a_i < 0 for i < alpha,  a_i = 0 for alpha <= i < beta,  a_i > 0 after.
struct WallData {
  std::size_t wall_id = 0;
  RatCone mu;
  std::size_t plus_index = 0;
  std::size_t minus_index = 0;
  std::vector<IntVec> generators;  // e_1..e_{r+1}
  RatVec coefficients;             // a_1..a_{r+1}
  std::size_t alpha = 0;           // number of negative coefficients
  std::size_t beta = 0;            // alpha + number of zero coefficients
};

// wall_id indexes into support_and_walls(emb.fan).walls. Throws NotAWall for
// an out-of-range id.
WallData wall_data(const HorosphericalEmbedding& emb, std::size_t wall_id);

// An extreme ray of the cone of curves, with every curve family whose
// numerical class lies on it.
struct ExtremalRay {
  IntVec numclass;  // primitive, in the coordinates of picard_basis
  std::vector<CurveClass> curves;
};

std::vector<ExtremalRay> extremal_rays(const HorosphericalEmbedding& emb);

enum class ContractionKind { Fiber, Divisorial, Small, Unsupported };

// Result of contracting one extremal ray. Birational contractions (wall
// relations with alpha >= 1, or a color curve) carry the surgered fan over
// the same lattice; fiber contractions (alpha = 0) carry the image fan over
// the quotient lattice together with the projection and the colors that
// dominate the base. `report` records validation of the result fan, which is
// reported as-is rather than repaired.
struct ContractionResult {
  ContractionKind kind = ContractionKind::Unsupported;
  std::optional<RatCone> exceptional_cone;  // locus contracted (birational)
  std::optional<RatCone> image_cone;        // its image, per the wall relation
  std::optional<ColoredFan> fan;
  std::optional<IntMatrix> projection;      // fiber: rows give N -> N'
  std::vector<ColorId> dominant_colors;     // fiber: colors with zero image
  ValidationReport report;
  std::string note;  // Unsupported: what blocked the surgery
};

// `ray` is matched (up to positive scale) against extremal_rays(emb); throws
// NotExtremal otherwise. Contracting a ray carried only by zero-image color
// curves returns kind = Unsupported: the target changes its generic isotropy
// and is out of scope here (horo_reduce covers the related reduction).
ContractionResult contract(const HorosphericalEmbedding& emb, const IntVec& ray);

}  // namespace fanlab

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fanlab/divisors.hpp"
#include "fanlab/horospherical.hpp"

// Structure detection on complete embeddings: recognizing products of
// projective spaces among toric fans, splitting a colored fan into a product
// of factor embeddings, reducing away zero-image colors, and the pipeline
// that chains these behind the Nef^1 = Psef^1 test.

namespace fanlab {

// A complete Q-factorial toric fan carries a product-of-projective-spaces
// structure when its rays split into groups, each group supporting one
// positive relation summing to zero, with every maximal cone omitting
// exactly one ray per group. `exact` means the fan is the product fan on
// the nose (all relation coefficients one and the fan smooth); otherwise
// the structure only witnesses a finite surjective toric cover by the
// product, and `cover` is set.
struct ProjectiveSpaceProduct {
  bool found = false;
  std::vector<std::size_t> dims;                 // one d_i per group
  std::vector<std::vector<std::size_t>> groups;  // ray indices, each ascending
  std::vector<IntVec> circuit_coefficients;      // positive relation per group
  bool exact = false;
  bool cover = false;
};

// Groups are ordered by their smallest ray index. Throws Unsupported on
// colored input, NotComplete / NotQFactorial when the preconditions fail.
ProjectiveSpaceProduct detect_product_of_projective_spaces(const ColoredFan& fan);

struct ProductFactor {
  std::vector<std::size_t> ray_indices;  // into the input fan, ascending
  std::vector<IntVec> lattice_basis;     // rows spanning N_i inside Z^n
  std::vector<IntVec> character_basis;   // rows spanning M_i = (sum of other N_j)^perp
  std::vector<ColorId> colors;           // sorted
  HorosphericalEmbedding embedding;      // the factor in its own coordinates
};

struct ProductDecomposition {
  std::vector<ProductFactor> factors;  // empty for the point, one entry when indecomposable
  bool coarsened = false;  // the circuit partition had to be merged to verify
  std::size_t attempts = 0;
  bool indecomposable() const { return factors.size() <= 1; }
};

// Finest verified splitting of the embedding as a product. The candidate
// partition groups rays connected through positive circuits; if it fails
// verification, adjacent groups are merged pairwise (breadth-first, finest
// first) until a partition verifies or the attempt budget is spent, in
// which case the trivial single-factor answer is returned. Every color must
// be attached to the fan (PreconditionFailed otherwise); colors of distinct
// factors must sit in distinct diagram components or the split is rejected.
ProductDecomposition decompose_fan_product(const HorosphericalEmbedding& emb,
                                           std::size_t merge_budget = 64);

// Restriction to a fiber of the morphism contracting a set of zero-image
// colors: the group shrinks to the Levi on the surviving nodes, the lattice
// and the fan are untouched, and the remaining colors are relabeled into
// the sub-diagram.
struct HoroReduction {
  NodeSet target_parabolic;          // surviving nodes, input labels
  std::size_t target_dimension = 0;  // dimension of the homogeneous target
  std::map<std::string, std::string> node_map;  // surviving node -> fiber node
  HorosphericalEmbedding fiber;
  ValidationReport report;  // fiber revalidation, reported as-is
};

// d1 must consist of zero-image colors (NotInD0 otherwise); emb must be
// valid and complete. d1 = {} returns the identity reduction.
HoroReduction horo_reduce(const HorosphericalEmbedding& emb, const std::set<ColorId>& d1);

struct ClassifyReport {
  Nef1Result nef1;

  // Which factoriality profile of the input was verified ("locally
  // factorial, associated toric fan smooth" is the stand-in for smoothness).
  std::string profile;

  // Toric branch: set when the datum has an empty diagram and nef1 holds.
  std::optional<ProjectiveSpaceProduct> toric_product;

  // Horospherical branch: set when the diagram is nonempty and nef1 holds.
  bool toroidal = false;               // no colors attached to the fan
  bool rational_homogeneous = false;   // toroidal + equal + smooth profile
  std::optional<bool> unattached_equals_d0;
  std::optional<HoroReduction> reduction;  // over the zero-image colors
  std::optional<ProductDecomposition> fiber_decomposition;
  std::vector<std::size_t> factor_picard_numbers;
  std::optional<bool> factors_all_picard_one;  // set under the smooth profile

  std::vector<std::string> notes;
};

// Requires valid + complete + Q-factorial + projective input.
ClassifyReport classify_pipeline(const HorosphericalEmbedding& emb);

}  // namespace fanlab

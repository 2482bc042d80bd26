#pragma once

#include <cstddef>
#include <vector>

#include "fanlab/numeric.hpp"

// Integer/rational linear algebra over lattices: Smith normal form, lattice
// indices, primitivity, kernels and exact linear solves. This is the layer the
// geometric modules stand on; it has no geometry of its own.

namespace fanlab {

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> entries;  // row-major, rows*cols

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, Int(0)) {}

  Int& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows_in);

  IntVec row(std::size_t r) const;
  IntVec col(std::size_t c) const;
  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;
};

struct SNFResult {
  IntMatrix U;  // rows x rows, |det| = 1
  IntMatrix S;  // rows x cols, diagonal, d_1 | d_2 | ..., all >= 0
  IntMatrix V;  // cols x cols, |det| = 1
};

// U*A*V = S with the divisibility chain on the diagonal. Pivot selection is
// the minimal nonzero |entry|, ties broken by lowest row then lowest column,
// so results are reproducible.
SNFResult smith_normal_form(const IntMatrix& A);

// True iff the vectors are linearly independent and extend to a Z-basis of
// Z^n (equivalently: every Smith invariant factor is 1).
bool is_z_basis_extendable(const std::vector<IntVec>& vectors);

// Index of the sublattice generated by the vectors inside the lattice of all
// integer points of their rational span; equals the gcd of the maximal
// minors. Throws DependentInput if the vectors are dependent.
Int sublattice_index(const std::vector<IntVec>& vectors);

// The primitive integer vector on the ray Q+ * v. Throws ZeroVector.
IntVec primitive_generator(const RatVec& v);
IntVec primitive_generator(const IntVec& v);

Int det(const IntMatrix& A);  // square only

std::size_t rank(const std::vector<RatVec>& rows);
std::size_t rank(const std::vector<IntVec>& rows);

// Saturated basis of {x in Z^n : A x = 0} (columns of the SNF's V past the
// rank). Being a block of a unimodular matrix, the basis is primitive.
std::vector<IntVec> integer_kernel(const IntMatrix& A);

// Basis of {x in Q^n : row . x = 0 for every row}. The ambient dimension is
// explicit so an empty system is well defined.
std::vector<RatVec> rational_kernel(const std::vector<RatVec>& rows, std::size_t n_cols);

struct LinearSolve {
  bool consistent = false;
  RatVec solution;                  // one solution (free variables set to 0)
  std::vector<RatVec> kernel;       // basis of the homogeneous solutions
};

// Solve rows * x = rhs over Q (any shape, including zero rows).
LinearSolve solve(const std::vector<RatVec>& rows, const RatVec& rhs, std::size_t n_cols);

// Canonical row Hermite form: zero rows dropped, pivot columns strictly
// increasing, pivots positive, entries above a pivot reduced into [0, pivot).
// Two row-equivalent (over Z) full-rank inputs yield identical output, which
// is what makes lattice bases canonical.
std::vector<IntVec> hermite_rows(const std::vector<IntVec>& rows_in);

// Rows spanning the same lattice as the saturation of span(rows) in Z^n.
std::vector<IntVec> saturate_lattice(const std::vector<IntVec>& rows, std::size_t n);

}  // namespace fanlab

#include "fanlab/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "fanlab/errors.hpp"

namespace fanlab {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows_in) {
  IntMatrix m(rows_in.size(), rows_in.empty() ? 0 : rows_in[0].size());
  for (std::size_t i = 0; i < rows_in.size(); ++i) {
    if (rows_in[i].size() != m.cols) fail(ErrorCode::Internal, "ragged row list");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
  }
  return m;
}

IntVec IntMatrix::row(std::size_t r) const {
  IntVec v(cols);
  for (std::size_t j = 0; j < cols; ++j) v[j] = at(r, j);
  return v;
}

IntVec IntMatrix::col(std::size_t c) const {
  IntVec v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, c);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix m(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols != other.rows) fail(ErrorCode::Internal, "matrix shape mismatch");
  IntMatrix m(rows, other.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols; ++j)
        m.at(i, j) += at(i, k) * other.at(k, j);
    }
  return m;
}

namespace {

// Places a pivot at (t, t) and clears the rest of row t and column t using
// unimodular row ops (mirrored into U) and column ops (mirrored into V).
// Pivot selection: minimal nonzero |entry| in the trailing submatrix, ties
// broken by lowest row index, then lowest column index. Returns false when
// the trailing submatrix is zero.
bool snf_clear_at(std::size_t t, IntMatrix& S, IntMatrix& U, IntMatrix& V) {
  const std::size_t m = S.rows, n = S.cols;
  while (true) {
    std::size_t pi = m, pj = n;
    Int best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (S.at(i, j) == 0) continue;
        Int a = abs(S.at(i, j));
        if (pi == m || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (pi == m) return false;

    if (pi != t) {
      for (std::size_t j = 0; j < n; ++j) std::swap(S.at(t, j), S.at(pi, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(U.at(t, j), U.at(pi, j));
    }
    if (pj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(S.at(i, t), S.at(i, pj));
      for (std::size_t i = 0; i < n; ++i) std::swap(V.at(i, t), V.at(i, pj));
    }

    // One Euclidean pass down the column, then along the row. mpz division
    // truncates, so leftovers are strictly smaller than the pivot and the
    // outer loop makes progress.
    bool leftovers = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (S.at(i, t) == 0) continue;
      Int q = S.at(i, t) / S.at(t, t);
      if (q != 0) {
        for (std::size_t j = 0; j < n; ++j) S.at(i, j) -= q * S.at(t, j);
        for (std::size_t j = 0; j < m; ++j) U.at(i, j) -= q * U.at(t, j);
      }
      if (S.at(i, t) != 0) leftovers = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (S.at(t, j) == 0) continue;
      Int q = S.at(t, j) / S.at(t, t);
      if (q != 0) {
        for (std::size_t i = 0; i < m; ++i) S.at(i, j) -= q * S.at(i, t);
        for (std::size_t i = 0; i < n; ++i) V.at(i, j) -= q * V.at(i, t);
      }
      if (S.at(t, j) != 0) leftovers = true;
    }
    if (leftovers) continue;

    // For the divisibility chain: if the pivot misses an entry of the
    // trailing submatrix, pull that row up and take another Euclidean pass,
    // which strictly shrinks the pivot. On exit the pivot divides everything
    // that follows, so d_1 | d_2 | ... holds with no separate fix-up.
    bool divides_rest = true;
    for (std::size_t i = t + 1; i < m && divides_rest; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (S.at(i, j) % S.at(t, t) != 0) {
          for (std::size_t jj = 0; jj < n; ++jj) S.at(t, jj) += S.at(i, jj);
          for (std::size_t jj = 0; jj < m; ++jj) U.at(t, jj) += U.at(i, jj);
          divides_rest = false;
          break;
        }
    if (divides_rest) break;
  }

  if (S.at(t, t) < 0) {
    for (std::size_t j = 0; j < S.cols; ++j) S.at(t, j) = -S.at(t, j);
    for (std::size_t j = 0; j < S.rows; ++j) U.at(t, j) = -U.at(t, j);
  }
  return true;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& A) {
  SNFResult res;
  res.U = IntMatrix::identity(A.rows);
  res.V = IntMatrix::identity(A.cols);
  res.S = A;
  IntMatrix& S = res.S;

  std::size_t r = 0;
  const std::size_t bound = std::min(A.rows, A.cols);
  while (r < bound && snf_clear_at(r, S, res.U, res.V)) ++r;
  return res;
}

bool is_z_basis_extendable(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return true;
  IntMatrix A = IntMatrix::from_rows(vectors);
  SNFResult snf = smith_normal_form(A);
  std::size_t r = 0;
  for (std::size_t t = 0; t < std::min(A.rows, A.cols); ++t)
    if (snf.S.at(t, t) != 0) ++r;
  if (r < vectors.size()) return false;
  for (std::size_t t = 0; t < r; ++t)
    if (snf.S.at(t, t) != 1) return false;
  return true;
}

Int sublattice_index(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return 1;
  IntMatrix A = IntMatrix::from_rows(vectors);
  SNFResult snf = smith_normal_form(A);
  Int idx = 1;
  std::size_t r = 0;
  for (std::size_t t = 0; t < std::min(A.rows, A.cols); ++t) {
    if (snf.S.at(t, t) == 0) break;
    idx *= snf.S.at(t, t);
    ++r;
  }
  if (r < vectors.size())
    fail(ErrorCode::DependentInput, "sublattice_index requires independent vectors");
  return idx;
}

IntVec primitive_generator(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) fail(ErrorCode::ZeroVector, "primitive_generator of zero vector");
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVec primitive_generator(const RatVec& v) {
  Int l = 1;
  for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  IntVec scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat t = v[i] * Rat(l);
    scaled[i] = t.get_num();  // denominator is 1 by construction
  }
  return primitive_generator(scaled);
}

Int det(const IntMatrix& A) {
  if (A.rows != A.cols) fail(ErrorCode::Internal, "det of non-square matrix");
  const std::size_t n = A.rows;
  if (n == 0) return 1;
  IntMatrix M = A;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (M.at(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
      sign = -sign;
    }
    // Bareiss update: divisions are exact.
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
        mpz_divexact(M.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M.at(i, k) = 0;
    }
    prev = M.at(k, k);
  }
  return sign * M.at(n - 1, n - 1);
}

namespace {

// Row-reduces in place to reduced echelon form; returns the pivot columns.
std::vector<std::size_t> gauss_jordan(std::vector<RatVec>& M, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < M.size(); ++c) {
    std::size_t sel = M.size();
    for (std::size_t i = r; i < M.size(); ++i)
      if (M[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == M.size()) continue;
    std::swap(M[sel], M[r]);
    Rat inv = 1 / M[r][c];
    for (std::size_t j = 0; j < M[r].size(); ++j) M[r][j] *= inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rat f = M[i][c];
      for (std::size_t j = 0; j < M[i].size(); ++j) M[i][j] -= f * M[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  std::vector<RatVec> M = rows;
  return gauss_jordan(M, rows[0].size()).size();
}

std::size_t rank(const std::vector<IntVec>& rows) {
  std::vector<RatVec> M;
  M.reserve(rows.size());
  for (const IntVec& r : rows) M.push_back(to_rat(r));
  return rank(M);
}

std::vector<IntVec> integer_kernel(const IntMatrix& A) {
  SNFResult snf = smith_normal_form(A);
  std::size_t r = 0;
  for (std::size_t t = 0; t < std::min(A.rows, A.cols); ++t)
    if (snf.S.at(t, t) != 0) ++r;
  std::vector<IntVec> basis;
  for (std::size_t c = r; c < A.cols; ++c) basis.push_back(snf.V.col(c));
  return basis;
}

LinearSolve solve(const std::vector<RatVec>& rows, const RatVec& rhs, std::size_t n_cols) {
  if (rows.size() != rhs.size()) fail(ErrorCode::Internal, "solve shape mismatch");
  LinearSolve out;
  std::vector<RatVec> M(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n_cols) fail(ErrorCode::Internal, "solve shape mismatch");
    M[i] = rows[i];
    M[i].push_back(rhs[i]);
  }
  std::vector<std::size_t> pivots = gauss_jordan(M, n_cols);
  for (std::size_t i = pivots.size(); i < M.size(); ++i)
    if (M[i][n_cols] != 0) return out;  // 0 = nonzero: inconsistent

  out.consistent = true;
  out.solution.assign(n_cols, Rat(0));
  for (std::size_t p = 0; p < pivots.size(); ++p) out.solution[pivots[p]] = M[p][n_cols];

  std::vector<bool> is_pivot(n_cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < n_cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(n_cols, Rat(0));
    v[f] = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -M[p][f];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::vector<RatVec> rational_kernel(const std::vector<RatVec>& rows, std::size_t n_cols) {
  return solve(rows, RatVec(rows.size(), Rat(0)), n_cols).kernel;
}

std::vector<IntVec> hermite_rows(const std::vector<IntVec>& rows_in) {
  std::vector<IntVec> M;
  for (const IntVec& v : rows_in)
    if (!is_zero(v)) M.push_back(v);
  if (M.empty()) return M;
  const std::size_t n = M[0].size();

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < M.size(); ++c) {
    // Euclidean passes until only row r has a nonzero entry in column c.
    while (true) {
      std::size_t sel = M.size();
      Int best;
      for (std::size_t i = r; i < M.size(); ++i) {
        if (M[i][c] == 0) continue;
        Int a = abs(M[i][c]);
        if (sel == M.size() || a < best) {
          best = a;
          sel = i;
        }
      }
      if (sel == M.size()) break;
      std::swap(M[sel], M[r]);
      bool leftovers = false;
      for (std::size_t i = r + 1; i < M.size(); ++i) {
        if (M[i][c] == 0) continue;
        Int q = M[i][c] / M[r][c];
        if (q != 0)
          for (std::size_t j = 0; j < n; ++j) M[i][j] -= q * M[r][j];
        if (M[i][c] != 0) leftovers = true;
      }
      if (!leftovers) break;
    }
    if (M[r][c] == 0) continue;
    if (M[r][c] < 0)
      for (std::size_t j = 0; j < n; ++j) M[r][j] = -M[r][j];
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), M[i][c].get_mpz_t(), M[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) M[i][j] -= q * M[r][j];
    }
    ++r;
  }
  M.resize(r);
  return M;
}

std::vector<IntVec> saturate_lattice(const std::vector<IntVec>& rows, std::size_t n) {
  IntMatrix A(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) fail(ErrorCode::Internal, "saturate_lattice shape mismatch");
    for (std::size_t j = 0; j < n; ++j) A.at(i, j) = rows[i][j];
  }
  std::vector<IntVec> ker = integer_kernel(A);
  IntMatrix K(ker.size(), n);
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) K.at(i, j) = ker[i][j];
  return hermite_rows(integer_kernel(K));
}

}  // namespace fanlab

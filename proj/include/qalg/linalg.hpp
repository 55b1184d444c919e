#pragma once

#include <gmpxx.h>

#include <vector>

#include "qalg/scalar.hpp"

namespace qalg {

// Solution of A x = b over the rational-function field: a particular solution
// plus a basis of the homogeneous kernel.
struct GaussResult {
  bool consistent = true;
  std::vector<RationalFunction> particular;
  std::vector<std::vector<RationalFunction>> kernel;
};

inline GaussResult solveLinear(std::vector<std::vector<RationalFunction>> a,
                               std::vector<RationalFunction> b, size_t cols) {
  size_t rows = a.size();
  for (const auto& row : a)
    if (row.size() != cols) fail(ErrorCode::InvalidArgument, "ragged linear system");
  if (b.size() != rows) fail(ErrorCode::InvalidArgument, "rhs size mismatch");

  std::vector<long> pivotRowOfCol(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c].isZero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    RationalFunction inv = a[r][c].inverse();
    for (size_t cc = c; cc < cols; ++cc) a[r][cc] = a[r][cc] * inv;
    b[r] = b[r] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].isZero()) continue;
      RationalFunction f = a[i][c];
      for (size_t cc = c; cc < cols; ++cc) a[i][cc] = a[i][cc] - f * a[r][cc];
      b[i] = b[i] - f * b[r];
    }
    pivotRowOfCol[c] = static_cast<long>(r);
    ++r;
  }
  GaussResult out;
  for (size_t i = r; i < rows; ++i)
    if (!b[i].isZero()) {
      out.consistent = false;
      return out;
    }
  out.particular.assign(cols, RationalFunction());
  for (size_t c = 0; c < cols; ++c)
    if (pivotRowOfCol[c] >= 0) out.particular[c] = b[static_cast<size_t>(pivotRowOfCol[c])];
  for (size_t f = 0; f < cols; ++f) {
    if (pivotRowOfCol[f] >= 0) continue;
    std::vector<RationalFunction> v(cols, RationalFunction());
    v[f] = RationalFunction(1);
    for (size_t c = 0; c < cols; ++c)
      if (pivotRowOfCol[c] >= 0) v[c] = -a[static_cast<size_t>(pivotRowOfCol[c])][f];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// Independent generating set of the integer column lattice, in echelon form.
inline std::vector<std::vector<mpz_class>> latticeBasis(std::vector<std::vector<mpz_class>> cols) {
  if (cols.empty()) return {};
  size_t k = cols[0].size();
  for (const auto& c : cols)
    if (c.size() != k) fail(ErrorCode::InvalidArgument, "ragged lattice generators");
  size_t t = 0;
  for (size_t p = 0; p < k && t < cols.size(); ++p) {
    size_t j0 = t;
    while (j0 < cols.size() && cols[j0][p] == 0) ++j0;
    if (j0 == cols.size()) continue;
    std::swap(cols[t], cols[j0]);
    for (size_t j = t + 1; j < cols.size(); ++j) {
      if (cols[j][p] == 0) continue;
      mpz_class g, u, v;
      mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), cols[t][p].get_mpz_t(),
                 cols[j][p].get_mpz_t());
      mpz_class at = cols[t][p] / g, aj = cols[j][p] / g;
      for (size_t rr = 0; rr < k; ++rr) {
        mpz_class nt = u * cols[t][rr] + v * cols[j][rr];
        mpz_class nj = at * cols[j][rr] - aj * cols[t][rr];
        cols[t][rr] = nt;
        cols[j][rr] = nj;
      }
    }
    ++t;
  }
  cols.resize(t);
  return cols;
}

// Does the column lattice equal all of Z^k?
inline bool latticeCoversZk(const std::vector<std::vector<mpz_class>>& cols, size_t k) {
  if (k == 0) return true;
  auto basis = latticeBasis(cols);
  if (basis.size() != k) return false;
  mpz_class det = 1;
  size_t p = 0;
  for (size_t i = 0; i < k; ++i) {
    while (p < k && basis[i][p] == 0) ++p;
    if (p == k) return false;
    det *= basis[i][p];
    ++p;
  }
  return det == 1 || det == -1;
}

inline size_t rationalRank(std::vector<std::vector<mpq_class>> m) {
  size_t rows = m.size();
  if (rows == 0) return 0;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (size_t cc = c; cc < cols; ++cc) m[i][cc] -= f * m[r][cc];
    }
    ++r;
  }
  return r;
}

// Solve A x = b over the rationals; reports whether the solution is unique.
struct RatSolve {
  bool consistent = true;
  bool unique = true;
  std::vector<mpq_class> particular;
};

inline RatSolve solveRationalSystem(std::vector<std::vector<mpq_class>> a,
                                    std::vector<mpq_class> b, size_t cols) {
  size_t rows = a.size();
  std::vector<long> pivotRowOfCol(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    mpq_class inv = 1 / a[r][c];
    for (size_t cc = c; cc < cols; ++cc) a[r][cc] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t cc = c; cc < cols; ++cc) a[i][cc] -= f * a[r][cc];
      b[i] -= f * b[r];
    }
    pivotRowOfCol[c] = static_cast<long>(r);
    ++r;
  }
  RatSolve out;
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) {
      out.consistent = false;
      return out;
    }
  out.particular.assign(cols, 0);
  for (size_t c = 0; c < cols; ++c) {
    if (pivotRowOfCol[c] >= 0)
      out.particular[c] = b[static_cast<size_t>(pivotRowOfCol[c])];
    else
      out.unique = false;
  }
  return out;
}

}  // namespace qalg

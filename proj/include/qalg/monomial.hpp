#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qalg/error.hpp"

namespace qalg {

// Canonical ordered monomial: one integer exponent per generator, in
// declaration order. Negative exponents are only meaningful for variables the
// owning rewrite system flags invertible; the engine enforces that.
struct QMonomial {
  std::vector<int> e;

  QMonomial() = default;
  explicit QMonomial(std::vector<int> exps) : e(std::move(exps)) {}

  static QMonomial one(size_t nvars) { return QMonomial(std::vector<int>(nvars, 0)); }

  static QMonomial var(size_t nvars, size_t index, int exp = 1) {
    QMonomial m = one(nvars);
    m.e.at(index) = exp;
    return m;
  }

  size_t nvars() const { return e.size(); }

  bool isOne() const {
    for (int x : e)
      if (x != 0) return false;
    return true;
  }

  long totalDegree() const { return std::accumulate(e.begin(), e.end(), 0L); }

  long weightedDegree(const std::vector<int>& weights) const {
    long d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * weights[i];
    return d;
  }

  QMonomial inverse() const {
    QMonomial m = *this;
    for (int& x : m.e) x = -x;
    return m;
  }

  // Exponentwise sum: the canonical monomial carrying the product's support.
  // Scalar bookkeeping for the actual product lives in the rewrite system.
  friend QMonomial merged(const QMonomial& a, const QMonomial& b) {
    if (a.e.size() != b.e.size())
      fail(ErrorCode::InvalidArgument, "monomial arity mismatch");
    QMonomial m = a;
    for (size_t i = 0; i < m.e.size(); ++i) m.e[i] += b.e[i];
    return m;
  }

  friend bool operator==(const QMonomial& a, const QMonomial& b) { return a.e == b.e; }
  friend bool operator!=(const QMonomial& a, const QMonomial& b) { return !(a == b); }
  // Container order only; display order is the rewrite system's business.
  friend bool operator<(const QMonomial& a, const QMonomial& b) { return a.e < b.e; }
};

}  // namespace qalg

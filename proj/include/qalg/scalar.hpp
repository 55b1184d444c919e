#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qalg/error.hpp"

namespace qalg {

// Univariate polynomial in q with arbitrary-precision integer coefficients.
// Dense ascending storage; invariant: empty vector means zero, otherwise the
// highest entry is nonzero.
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(long v) {
    if (v != 0) c_.emplace_back(v);
  }
  explicit ZPoly(const mpz_class& v) {
    if (v != 0) c_.push_back(v);
  }
  explicit ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

  // The monomial q^k, k >= 0.
  static ZPoly qpow(int k) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "ZPoly::qpow needs k >= 0");
    std::vector<mpz_class> c(static_cast<size_t>(k) + 1);
    c.back() = 1;
    return ZPoly(std::move(c));
  }

  bool isZero() const { return c_.empty(); }
  bool isOne() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

  const mpz_class& coeff(int k) const {
    static const mpz_class kZero = 0;
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
  }

  const mpz_class& leading() const {
    if (isZero()) fail(ErrorCode::InvalidArgument, "leading coefficient of zero polynomial");
    return c_.back();
  }

  // q^k with unit coefficient and no other terms.
  bool isUnitMonomial() const {
    if (isZero() || c_.back() != 1) return false;
    for (size_t i = 0; i + 1 < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return ZPoly(std::move(c));
  }
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return ZPoly(std::move(c));
  }
  ZPoly operator-() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return ZPoly(std::move(c));
  }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.isZero() || b.isZero()) return {};
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return ZPoly(std::move(c));
  }
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

  ZPoly pow(unsigned e) const {
    ZPoly out(1);
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  // Positive gcd of the coefficients; 0 for the zero polynomial.
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
  }

  // Exact division; fails if the divisor does not divide exactly over Z[q].
  ZPoly divExact(const ZPoly& d) const {
    if (d.isZero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (isZero()) return {};
    int qd = degree() - d.degree();
    if (qd < 0) fail(ErrorCode::InvalidArgument, "divExact: degree too small");
    std::vector<mpz_class> rem = c_;
    std::vector<mpz_class> quot(static_cast<size_t>(qd) + 1);
    for (int k = qd; k >= 0; --k) {
      mpz_class& top = rem[static_cast<size_t>(k + d.degree())];
      if (top % d.leading() != 0) fail(ErrorCode::InvalidArgument, "divExact: not divisible");
      mpz_class qc = top / d.leading();
      for (int i = 0; i <= d.degree(); ++i) rem[static_cast<size_t>(k + i)] -= qc * d.c_[static_cast<size_t>(i)];
      quot[static_cast<size_t>(k)] = std::move(qc);
    }
    for (const auto& r : rem)
      if (r != 0) fail(ErrorCode::InvalidArgument, "divExact: nonzero remainder");
    return ZPoly(std::move(quot));
  }

  // Gcd over Z[q] (content times primitive part), normalized to positive
  // leading coefficient. gcd(0, 0) = 0.
  static ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.isZero()) return b.positive();
    if (b.isZero()) return a.positive();
    mpz_class cont;
    mpz_class ca = a.content(), cb = b.content();
    mpz_gcd(cont.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    // Euclid over Q on the primitive parts, then rescale to a primitive
    // integer polynomial.
    std::vector<mpq_class> r0 = a.toQ(), r1 = b.toQ();
    while (!r1.empty()) {
      std::vector<mpq_class> r2 = qMod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r2);
    }
    ZPoly g = fromQPrimitive(r0);
    return g * ZPoly(cont);
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Rendered in descending powers: "q^2 + q + 1", "-2*q + 1", "0".
  std::string str() const {
    if (isZero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const mpz_class& c = coeff(k);
      if (c == 0) continue;
      bool neg = c < 0;
      mpz_class a = abs(c);
      std::string piece;
      if (k == 0) {
        piece = a.get_str();
      } else {
        std::string var = (k == 1) ? "q" : "q^" + std::to_string(k);
        piece = (a == 1) ? var : a.get_str() + "*" + var;
      }
      if (out.empty())
        out = neg ? "-" + piece : piece;
      else
        out += (neg ? " - " : " + ") + piece;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  ZPoly positive() const { return (!isZero() && leading() < 0) ? -*this : *this; }

  std::vector<mpq_class> toQ() const {
    std::vector<mpq_class> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    return out;
  }

  // Remainder of a by b over Q; b nonzero. Trailing zeros are trimmed.
  static std::vector<mpq_class> qMod(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
    const mpq_class& lead = b.back();
    while (a.size() >= b.size()) {
      mpq_class f = a.back() / lead;
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    return a;
  }

  // Scale a rational polynomial to a primitive integer polynomial with
  // positive leading coefficient.
  static ZPoly fromQPrimitive(const std::vector<mpq_class>& a) {
    if (a.empty()) return {};
    mpz_class lcm = 1;
    for (const auto& c : a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> z(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
      mpq_class scaled = a[i] * lcm;
      z[i] = scaled.get_num();
    }
    ZPoly p{std::move(z)};
    mpz_class cont = p.content();
    p = p.divExact(ZPoly(cont));
    return p.positive();
  }

  std::vector<mpz_class> c_;
};

// Exact element of Q(q): quotient of two integer-coefficient polynomials,
// kept coprime over Z[q] with a positive-leading-coefficient denominator, so
// equal values have identical representations.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(1) {}
  RationalFunction(long v) : num_(v), den_(1) {}
  explicit RationalFunction(const mpz_class& v) : num_(v), den_(1) {}
  explicit RationalFunction(ZPoly n) : num_(std::move(n)), den_(1) {}
  RationalFunction(ZPoly n, ZPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.isZero()) fail(ErrorCode::DivisionByZero, "zero denominator");
    canonicalize();
  }

  // q^k for any integer k (negative k gives 1/q^|k|).
  static RationalFunction q(int k = 1) {
    if (k >= 0) return RationalFunction(ZPoly::qpow(k));
    return RationalFunction(ZPoly(1), ZPoly::qpow(-k));
  }

  static RationalFunction fromRational(long num, long den) {
    return RationalFunction(ZPoly(num), ZPoly(den));
  }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_.isOne() && den_.isOne(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.isZero()) fail(ErrorCode::DivisionByZero, "division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction inverse() const {
    if (isZero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return RationalFunction(den_, num_);
  }

  RationalFunction pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction out(1);
    RationalFunction base = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
      if (u & 1u) out *= base;
      base *= base;
      u >>= 1;
    }
    return out;
  }

  // Sign used when rendering inside larger expressions.
  bool isNegativeLeading() const { return !num_.isZero() && num_.leading() < 0; }

  // If the value equals q^k for some integer k, return k.
  std::optional<int> asQPower() const {
    if (num_.isUnitMonomial() && den_.isUnitMonomial()) return num_.degree() - den_.degree();
    return std::nullopt;
  }

  // Multiplicative torsion in Q(q)*: only 1 and -1 have finite order.
  std::optional<int> torsionOrder() const {
    if (isOne()) return 1;
    if (num_ == ZPoly(-1) && den_.isOne()) return 2;
    return std::nullopt;
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class d = den_.eval(x);
    if (d == 0) fail(ErrorCode::DivisionByZero, "evaluation at a pole");
    return num_.eval(x) / d;
  }

  std::string str() const {
    if (den_.isOne()) return num_.str();
    auto wrap = [](const std::string& s) {
      return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(num_.str()) + "/" + wrap(den_.str());
  }

 private:
  void canonicalize() {
    if (num_.isZero()) {
      den_ = ZPoly(1);
      return;
    }
    ZPoly g = ZPoly::gcd(num_, den_);
    num_ = num_.divExact(g);
    den_ = den_.divExact(g);
    if (den_.leading() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  ZPoly num_, den_;
};

enum class QDir { Ascending, Descending };

// Ascending: 1 + q + ... + q^(n-1). Descending: 1 + q^-1 + ... + q^-(n-1).
inline RationalFunction q_int(int n, QDir dir) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "q_int needs n >= 1");
  std::vector<mpz_class> ones(static_cast<size_t>(n), mpz_class(1));
  ZPoly sum{std::move(ones)};
  if (dir == QDir::Ascending) return RationalFunction(std::move(sum));
  return RationalFunction(std::move(sum), ZPoly::qpow(n - 1));
}

}  // namespace qalg

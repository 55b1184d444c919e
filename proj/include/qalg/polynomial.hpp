#pragma once

#include <map>
#include <optional>
#include <utility>

#include "qalg/monomial.hpp"
#include "qalg/scalar.hpp"

namespace qalg {

// Finite scalar combination of canonical monomials. Purely coefficientwise
// operations live here; ring multiplication needs the relations and is a
// rewrite-system operation.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(size_t nvars) : nvars_(nvars) {}

  static QPolynomial constant(size_t nvars, RationalFunction c) {
    QPolynomial p(nvars);
    p.addTerm(QMonomial::one(nvars), c);
    return p;
  }

  static QPolynomial monomial(QMonomial m, RationalFunction c = RationalFunction(1)) {
    QPolynomial p(m.nvars());
    p.addTerm(std::move(m), std::move(c));
    return p;
  }

  size_t nvars() const { return nvars_; }
  bool isZero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<QMonomial, RationalFunction>& terms() const { return terms_; }

  void addTerm(QMonomial m, const RationalFunction& c) {
    if (m.nvars() != nvars_) fail(ErrorCode::InvalidArgument, "term arity mismatch");
    if (c.isZero()) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  const RationalFunction& coeff(const QMonomial& m) const {
    static const RationalFunction kZero;
    auto it = terms_.find(m);
    return it == terms_.end() ? kZero : it->second;
  }

  // The value as a scalar, if the support is contained in {1}.
  std::optional<RationalFunction> asConstant() const {
    if (terms_.empty()) return RationalFunction();
    if (terms_.size() == 1 && terms_.begin()->first.isOne()) return terms_.begin()->second;
    return std::nullopt;
  }

  // The single (coefficient, monomial) term, if there is exactly one.
  std::optional<std::pair<RationalFunction, QMonomial>> asSingleTerm() const {
    if (terms_.size() != 1) return std::nullopt;
    return std::make_pair(terms_.begin()->second, terms_.begin()->first);
  }

  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorCode::InvalidArgument, "polynomial arity mismatch");
    QPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.addTerm(m, c);
    return out;
  }
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorCode::InvalidArgument, "polynomial arity mismatch");
    QPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.addTerm(m, -c);
    return out;
  }
  QPolynomial operator-() const {
    QPolynomial out(nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  QPolynomial scaled(const RationalFunction& s) const {
    QPolynomial out(nvars_);
    if (s.isZero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
  }

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }

 private:
  size_t nvars_ = 0;
  std::map<QMonomial, RationalFunction> terms_;
};

}  // namespace qalg

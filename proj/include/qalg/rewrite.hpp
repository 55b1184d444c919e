#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qalg/expr.hpp"
#include "qalg/polynomial.hpp"

namespace qalg {

// A word letter: a generator or its formal inverse.
struct WLetter {
  int var;
  bool inv;
};
using Word = std::vector<WLetter>;

// One solvable rule x_hi * x_lo -> q * x_lo * x_hi + tail, for hi > lo.
struct RuleSpec {
  int hi = 0, lo = 0;
  RationalFunction q;
  QPolynomial tail;
};

struct ConfluenceFailure {
  int k, j, i;              // the overlap word x_k x_j x_i
  QPolynomial left, right;  // normal forms after reducing the left pair / right pair first
};

struct ConfluenceReport {
  bool pass = true;
  std::vector<ConfluenceFailure> failures;
};

// The common rewrite frame all presentation kinds compile to: for every pair
// j > i a rule x_j x_i -> q_ji x_i x_j + p_ji. Canonical words are ascending
// in declaration order with signed exponents on invertible variables.
// Normalization repeatedly rewrites the leftmost reducible adjacent pair;
// inverse letters use the rule forms obtained by conjugating the defining
// relation, so tau/delta data extends to Laurent monomials automatically.
class RewriteSystem {
 public:
  RewriteSystem(std::vector<std::string> names, std::vector<int> weights,
                std::vector<RuleSpec> rules, std::set<int> invertible = {},
                size_t budget = defaultBudget())
      : names_(std::move(names)), weights_(std::move(weights)), budget_(budget) {
    n_ = names_.size();
    if (weights_.size() != n_) fail(ErrorCode::InvalidArgument, "weights/names size mismatch");
    for (int w : weights_)
      if (w < 1) fail(ErrorCode::InvalidArgument, "assigned degrees must be >= 1");
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = a + 1; b < n_; ++b)
        if (names_[a] == names_[b]) fail(ErrorCode::DuplicateGenerator, names_[a]);
    q_.assign(n_, std::vector<RationalFunction>(n_, RationalFunction(1)));
    tails_.assign(n_, std::vector<QPolynomial>(n_, QPolynomial(n_)));
    for (const RuleSpec& r : rules) {
      if (r.hi <= r.lo || r.lo < 0 || static_cast<size_t>(r.hi) >= n_)
        fail(ErrorCode::InvalidArgument, "rule indices must satisfy hi > lo within range");
      if (r.tail.nvars() != n_) fail(ErrorCode::InvalidArgument, "rule tail arity mismatch");
      q_[r.hi][r.lo] = r.q;
      q_[r.lo][r.hi] = r.q.isZero() ? RationalFunction() : r.q.inverse();
      tails_[r.hi][r.lo] = r.tail;
    }
    inv_.assign(n_, false);
    for (int v : invertible) {
      if (v < 0 || static_cast<size_t>(v) >= n_)
        fail(ErrorCode::InvalidArgument, "invertible index out of range");
      inv_[v] = true;
    }
  }

  static size_t defaultBudget() {
    if (const char* s = std::getenv("QALG_STEP_BUDGET")) {
      long v = std::atol(s);
      if (v > 0) return static_cast<size_t>(v);
    }
    return 1000000;
  }

  size_t nvars() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int i) const { return weights_.at(i); }
  bool isInvertible(int i) const { return inv_.at(i); }
  size_t budget() const { return budget_; }

  std::optional<int> indexOf(const std::string& name) const {
    for (size_t i = 0; i < n_; ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }

  // q_{ji} for any ordered pair; q_{ii} = 1 and q_{ij} = q_{ji}^{-1}.
  const RationalFunction& qScalar(int j, int i) const { return q_.at(j).at(i); }

  // Lower-order terms of the rule for j > i.
  const QPolynomial& tail(int j, int i) const {
    if (j <= i) fail(ErrorCode::InvalidArgument, "tail is stored for j > i only");
    return tails_.at(j).at(i);
  }

  bool scalarClosed() const {
    for (size_t j = 0; j < n_; ++j)
      for (size_t i = 0; i < j; ++i)
        if (!tails_[j][i].isZero()) return false;
    return true;
  }

  RewriteSystem withBudget(size_t budget) const {
    RewriteSystem s = *this;
    s.budget_ = budget;
    return s;
  }

  // --- polynomial constructors tied to this arity -------------------------

  QPolynomial zero() const { return QPolynomial(n_); }
  QPolynomial one() const { return constPoly(RationalFunction(1)); }
  QPolynomial constPoly(const RationalFunction& c) const { return QPolynomial::constant(n_, c); }
  QPolynomial varPoly(int i, int exp = 1) const {
    return QPolynomial::monomial(QMonomial::var(n_, static_cast<size_t>(i), exp));
  }

  // --- engine --------------------------------------------------------------

  QPolynomial nfWord(const RationalFunction& coeff, Word start) const {
    QPolynomial out(n_);
    std::vector<std::pair<RationalFunction, Word>> work;
    work.emplace_back(coeff, std::move(start));
    size_t steps = budget_;
    while (!work.empty()) {
      auto item = std::move(work.back());
      work.pop_back();
      RationalFunction& c = item.first;
      Word& w = item.second;
      if (c.isZero()) continue;
      size_t pos = 0;
      bool found = false;
      for (; pos + 1 < w.size(); ++pos) {
        if (reducible(w[pos], w[pos + 1])) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.addTerm(wordToMono(w), c);
        continue;
      }
      if (steps == 0)
        fail(ErrorCode::StepBudgetExceeded,
             "rewriting exceeded " + std::to_string(budget_) + " steps");
      --steps;
      reduceAt(w, pos, c, work);
    }
    return out;
  }

  // Re-normalize a polynomial (identity on canonical input).
  QPolynomial nf(const QPolynomial& p) const {
    QPolynomial out(n_);
    for (const auto& [m, c] : p.terms()) out = out + nfWord(c, monoWord(m));
    return out;
  }

  QPolynomial mul(const QPolynomial& a, const QPolynomial& b) const {
    QPolynomial out(n_);
    for (const auto& [ma, ca] : a.terms()) {
      Word wa = monoWord(ma);
      for (const auto& [mb, cb] : b.terms()) {
        Word w = wa;
        Word wb = monoWord(mb);
        w.insert(w.end(), wb.begin(), wb.end());
        out = out + nfWord(ca * cb, std::move(w));
      }
    }
    return out;
  }

  QPolynomial mul(const QPolynomial& a, const QPolynomial& b, const QPolynomial& c) const {
    return mul(mul(a, b), c);
  }

  // Integer power; negative exponents require a single invertible term.
  QPolynomial pow(const QPolynomial& a, int k) const {
    if (k < 0) return pow(invertSingleTerm(a), -k);
    QPolynomial out = one();
    for (int i = 0; i < k; ++i) out = mul(out, a);
    return out;
  }

  // Product of two canonical monomials in a scalar-closed (quantum space /
  // torus) system: always a scalar times a canonical monomial.
  std::pair<RationalFunction, QMonomial> monoMul(const QMonomial& a, const QMonomial& b) const {
    if (!scalarClosed())
      fail(ErrorCode::NotScalarClosed, "monomial product needs a lower-order-free system");
    Word w = monoWord(a);
    Word wb = monoWord(b);
    w.insert(w.end(), wb.begin(), wb.end());
    QPolynomial p = nfWord(RationalFunction(1), std::move(w));
    auto single = p.asSingleTerm();
    if (!single) fail(ErrorCode::InternalDisagreement, "scalar-closed product was not a monomial");
    return *single;
  }

  // True multiplicative inverse of an invertible monomial, as a canonical
  // scalar * monomial term. Plain exponent negation is off by the product of
  // the commutation scalars, so normalize the reversed word of inverse
  // letters instead.
  QPolynomial monoInverse(const QMonomial& m) const {
    for (size_t i = 0; i < n_; ++i)
      if (m.e[i] != 0 && !inv_[i])
        fail(ErrorCode::NegativePowerOfNonInvertible, names_[i] + " is not invertible");
    Word w = monoWord(m);
    std::reverse(w.begin(), w.end());
    for (WLetter& l : w) l.inv = !l.inv;
    return nfWord(RationalFunction(1), std::move(w));
  }

  // normal_form(v^-1 * r * v) for a Laurent monomial v.
  QPolynomial conjugate(const QMonomial& v, const QPolynomial& r) const {
    return mul(mul(monoInverse(v), r), QPolynomial::monomial(v));
  }

  QPolynomial evalExpr(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Const:
        return constPoly(e.value);
      case Expr::Kind::Gen: {
        if (e.name == "q") return constPoly(RationalFunction::q());
        auto idx = indexOf(e.name);
        if (!idx) fail(ErrorCode::UnknownSymbol, "unknown generator '" + e.name + "'");
        return varPoly(*idx);
      }
      case Expr::Kind::Add:
        return evalExpr(*e.lhs) + evalExpr(*e.rhs);
      case Expr::Kind::Sub:
        return evalExpr(*e.lhs) - evalExpr(*e.rhs);
      case Expr::Kind::Neg:
        return -evalExpr(*e.lhs);
      case Expr::Kind::Mul:
        return mul(evalExpr(*e.lhs), evalExpr(*e.rhs));
      case Expr::Kind::Div: {
        QPolynomial den = evalExpr(*e.rhs);
        auto c = den.asConstant();
        if (!c) fail(ErrorCode::InvalidArgument, "division by a non-scalar");
        if (c->isZero()) fail(ErrorCode::DivisionByZero, "division by zero");
        return evalExpr(*e.lhs).scaled(c->inverse());
      }
      case Expr::Kind::Pow:
        return pow(evalExpr(*e.lhs), e.exponent);
    }
    fail(ErrorCode::InvalidArgument, "corrupt expression node");
  }

  QPolynomial nf(const Expr::Ptr& e) const { return evalExpr(*e); }
  QPolynomial nf(const std::string& src) const { return evalExpr(*parseExpr(src)); }

  // --- Laurent extension ----------------------------------------------------

  // Flags the given variables invertible. A variable qualifies if every rule
  // it participates in is scalar (tail 0) or has every tail monomial divisible
  // by it (a normal generator, e.g. xy - yx = y). The presentation layer may
  // whitelist further variables it can justify structurally (Ore base
  // variables) via `structurallyJustified`.
  RewriteSystem laurentExtend(const std::set<int>& vars,
                              const std::set<int>& structurallyJustified = {}) const {
    for (int v : vars) {
      if (v < 0 || static_cast<size_t>(v) >= n_)
        fail(ErrorCode::InvalidArgument, "invertible index out of range");
      if (structurallyJustified.count(v)) continue;
      for (size_t j = 0; j < n_; ++j) {
        for (size_t i = 0; i < j; ++i) {
          if (i != static_cast<size_t>(v) && j != static_cast<size_t>(v)) continue;
          const QPolynomial& t = tails_[j][i];
          for (const auto& [m, c] : t.terms()) {
            (void)c;
            if (m.e[static_cast<size_t>(v)] < 1)
              fail(ErrorCode::NotInvertible,
                   "cannot invert " + names_[static_cast<size_t>(v)] +
                       ": lower-order term not divisible by it in rule " + names_[j] + "*" +
                       names_[i]);
          }
        }
      }
    }
    RewriteSystem s = *this;
    for (int v : vars) s.inv_[static_cast<size_t>(v)] = true;
    return s;
  }

  // --- confluence ------------------------------------------------------------

  // Critical-pair diamond on every triple x_k x_j x_i, k > j > i: reduce the
  // left pair first vs the right pair first, then normalize fully.
  ConfluenceReport confluenceCheck() const {
    ConfluenceReport rep;
    for (int k = static_cast<int>(n_) - 1; k >= 2; --k) {
      for (int j = k - 1; j >= 1; --j) {
        for (int i = j - 1; i >= 0; --i) {
          Word w{{k, false}, {j, false}, {i, false}};
          std::vector<std::pair<RationalFunction, Word>> r1, r2;
          reduceAt(w, 0, RationalFunction(1), r1);
          reduceAt(w, 1, RationalFunction(1), r2);
          QPolynomial left(n_), right(n_);
          for (auto& [c, word] : r1) left = left + nfWord(c, word);
          for (auto& [c, word] : r2) right = right + nfWord(c, word);
          if (left != right) {
            rep.pass = false;
            rep.failures.push_back({k, j, i, left, right});
          }
        }
      }
    }
    return rep;
  }

  // --- rendering --------------------------------------------------------------

  // Display order: weighted degree descending, then exponents compared from
  // the last declared variable down, larger first.
  bool displayLess(const QMonomial& a, const QMonomial& b) const {
    long da = a.weightedDegree(weights_), db = b.weightedDegree(weights_);
    if (da != db) return da > db;
    for (int k = static_cast<int>(n_) - 1; k >= 0; --k)
      if (a.e[k] != b.e[k]) return a.e[k] > b.e[k];
    return false;
  }

  std::string monoStr(const QMonomial& m) const {
    if (m.isOne()) return "1";
    std::string out;
    for (size_t i = 0; i < n_; ++i) {
      if (m.e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += names_[i];
      if (m.e[i] != 1) out += "^" + std::to_string(m.e[i]);
    }
    return out;
  }

  std::string polyStr(const QPolynomial& p) const {
    if (p.isZero()) return "0";
    std::vector<const std::pair<const QMonomial, RationalFunction>*> ts;
    for (const auto& t : p.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(),
              [this](auto* a, auto* b) { return displayLess(a->first, b->first); });
    std::string out;
    for (auto* t : ts) {
      bool neg = t->second.isNegativeLeading();
      RationalFunction abs = neg ? -t->second : t->second;
      std::string piece = termStr(abs, t->first);
      if (out.empty())
        out = neg ? "-" + piece : piece;
      else
        out += (neg ? " - " : " + ") + piece;
    }
    return out;
  }

 private:
  static std::string wrapIfSpaced(const std::string& s) {
    return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
  }

  std::string termStr(const RationalFunction& c, const QMonomial& m) const {
    if (m.isOne()) return wrapIfSpaced(c.str());
    if (c.isOne()) return monoStr(m);
    return wrapIfSpaced(c.str()) + "*" + monoStr(m);
  }

  static bool reducible(const WLetter& a, const WLetter& b) {
    if (a.var == b.var) return a.inv != b.inv;
    return a.var > b.var;
  }

  Word monoWord(const QMonomial& m) const {
    if (m.nvars() != n_) fail(ErrorCode::InvalidArgument, "monomial arity mismatch");
    Word w;
    for (size_t i = 0; i < n_; ++i) {
      int e = m.e[i];
      if (e < 0 && !inv_[i])
        fail(ErrorCode::NegativePowerOfNonInvertible,
             names_[i] + "^" + std::to_string(e) + " is not available");
      for (int r = 0; r < std::abs(e); ++r) w.push_back({static_cast<int>(i), e < 0});
    }
    return w;
  }

  QMonomial wordToMono(const Word& w) const {
    QMonomial m = QMonomial::one(n_);
    for (const WLetter& l : w) m.e[static_cast<size_t>(l.var)] += l.inv ? -1 : 1;
    return m;
  }

  static Word spliced(const Word& w, size_t pos, const Word& replacement) {
    Word out;
    out.reserve(w.size() - 2 + replacement.size());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(pos));
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
    return out;
  }

  const RationalFunction& invertibleScalar(int j, int i) const {
    if (q_[j][i].isZero())
      fail(ErrorCode::DivisionByZero,
           "degenerate commutation scalar between " + names_[j] + " and " + names_[i]);
    return q_[i][j];  // already the inverse of q_[j][i]
  }

  // Expand one reduction of the adjacent pair at `pos` into `work`.
  void reduceAt(const Word& w, size_t pos, const RationalFunction& c,
                std::vector<std::pair<RationalFunction, Word>>& work) const {
    const WLetter L = w[pos], R = w[pos + 1];
    if (L.var == R.var) {
      work.emplace_back(c, spliced(w, pos, {}));
      return;
    }
    const int j = L.var, i = R.var;
    const RationalFunction& Q = q_[j][i];
    const QPolynomial& T = tails_[j][i];
    auto pushSwapped = [&](const RationalFunction& s) {
      work.emplace_back(c * s, spliced(w, pos, {R, L}));
    };
    if (!L.inv && !R.inv) {
      // x_j x_i = Q x_i x_j + T
      pushSwapped(Q);
      for (const auto& [m, tc] : T.terms()) work.emplace_back(c * tc, spliced(w, pos, monoWord(m)));
    } else if (!L.inv && R.inv) {
      // x_j x_i^-1 = Q^-1 x_i^-1 x_j - Q^-1 x_i^-1 T x_i^-1
      const RationalFunction& Qi = invertibleScalar(j, i);
      pushSwapped(Qi);
      for (const auto& [m, tc] : T.terms()) {
        Word mid{{i, true}};
        Word wm = monoWord(m);
        mid.insert(mid.end(), wm.begin(), wm.end());
        mid.push_back({i, true});
        work.emplace_back(-(c * Qi * tc), spliced(w, pos, mid));
      }
    } else if (L.inv && !R.inv) {
      // x_j^-1 x_i = Q^-1 x_i x_j^-1 - Q^-1 x_j^-1 T x_j^-1
      const RationalFunction& Qi = invertibleScalar(j, i);
      pushSwapped(Qi);
      for (const auto& [m, tc] : T.terms()) {
        Word mid{{j, true}};
        Word wm = monoWord(m);
        mid.insert(mid.end(), wm.begin(), wm.end());
        mid.push_back({j, true});
        work.emplace_back(-(c * Qi * tc), spliced(w, pos, mid));
      }
    } else {
      // x_j^-1 x_i^-1 = Q x_i^-1 x_j^-1, only valid without lower-order terms
      if (!T.isZero())
        fail(ErrorCode::NotInvertible, "inverse pair " + names_[j] + "^-1*" + names_[i] +
                                           "^-1 blocked by lower-order terms");
      pushSwapped(Q);
    }
  }

  QPolynomial invertSingleTerm(const QPolynomial& a) const {
    auto single = a.asSingleTerm();
    if (!single)
      fail(ErrorCode::NegativePowerOfNonInvertible, "negative power of a non-monomial element");
    const auto& [c, m] = *single;
    if (c.isZero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return monoInverse(m).scaled(c.inverse());
  }

  size_t n_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<char> inv_;
  std::vector<std::vector<RationalFunction>> q_;
  std::vector<std::vector<QPolynomial>> tails_;
  size_t budget_;
};

}  // namespace qalg

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qalg/linalg.hpp"
#include "qalg/presentation.hpp"

namespace qalg {

// The conjugation character of a Laurent monomial D: D*x_k*D^-1 = pi(x_k)*x_k.
struct PiMap {
  std::vector<RationalFunction> values;  // indexed by generator

  friend bool operator==(const PiMap& a, const PiMap& b) {
    if (a.values.size() != b.values.size()) return false;
    for (size_t i = 0; i < a.values.size(); ++i)
      if (!(a.values[i] == b.values[i])) return false;
    return true;
  }
  friend bool operator!=(const PiMap& a, const PiMap& b) { return !(a == b); }
};

struct MonotoneReport {
  bool isMonotone = false;
  std::optional<PiMap> pi;
  std::optional<std::pair<QMonomial, QMonomial>> witness;  // differing support pair
};

// An algebra endomorphism recorded by its generator images.
struct Automorphism {
  std::vector<QPolynomial> images;
};

struct ShapeReport {
  bool pass = true;
  std::vector<RationalFunction> leading;  // alpha_g per generator, when pass
  std::string detail;
};

struct Thm25Shape {
  bool ok = false;
  std::vector<long> h;
  std::map<int, RationalFunction> translations;  // identity-grade generators
  std::string detail;
};

struct SemiInvariantReport {
  bool homogeneous = false;
  bool semiInvariant = false;
  std::optional<std::vector<long>> grade;
  std::optional<std::vector<RationalFunction>> weights;  // per generator
};

namespace detail {

inline void requireKind(const CompiledAlgebra& alg, PresentationKind kind, const char* what) {
  if (alg.pres.kind != kind)
    fail(ErrorCode::WrongKind, std::string(what) + " requires a " + kindName(kind) +
                                   " presentation, got " + kindName(alg.pres.kind));
}

// x_i*x_k = Q(i,k)*x_k*x_i for arbitrary i, k.
inline RationalFunction qBetween(const RewriteSystem& sys, int i, int k) {
  if (i == k) return RationalFunction(1);
  if (i > k) return sys.qScalar(i, k);
  return sys.qScalar(k, i).inverse();
}

inline long weightedDegree(const RewriteSystem& sys, const QMonomial& m) {
  long deg = 0;
  for (size_t v = 0; v < m.nvars(); ++v) deg += static_cast<long>(m.e[v]) * sys.weight(v);
  return deg;
}

// Graded-lex with the first declared variable most significant; used to pick
// deterministic representatives out of supports.
inline bool gradedLexLess(const RewriteSystem& sys, const QMonomial& a, const QMonomial& b) {
  long da = weightedDegree(sys, a), db = weightedDegree(sys, b);
  if (da != db) return da < db;
  return a.e < b.e;
}

inline bool isPolynomial(const QPolynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    (void)c;
    for (int e : m.e)
      if (e < 0) return false;
  }
  return true;
}

// All monomials over nonneg exponents with weighted degree <= bound.
inline std::vector<QMonomial> monomialsUpTo(const RewriteSystem& sys, long bound) {
  std::vector<QMonomial> out;
  QMonomial cur = QMonomial::one(sys.nvars());
  std::function<void(size_t, long)> rec = [&](size_t v, long left) {
    if (v == sys.nvars()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e * sys.weight(v) <= left; ++e) {
      cur.e[v] = e;
      rec(v + 1, left - e * sys.weight(v));
    }
    cur.e[v] = 0;
  };
  rec(0, bound);
  return out;
}

// Solve sum_j c_j * basis_j == target over Q(q); returns the coefficients.
inline std::optional<std::vector<RationalFunction>> matchLinear(
    const std::vector<QPolynomial>& basis, const QPolynomial& target) {
  std::map<QMonomial, size_t> rows;
  auto rowOf = [&rows](const QMonomial& m) {
    return rows.emplace(m, rows.size()).first->second;
  };
  for (const auto& b : basis)
    for (const auto& [m, c] : b.terms()) {
      (void)c;
      rowOf(m);
    }
  for (const auto& [m, c] : target.terms()) {
    (void)c;
    rowOf(m);
  }
  std::vector<std::vector<RationalFunction>> a(rows.size(),
                                               std::vector<RationalFunction>(basis.size()));
  std::vector<RationalFunction> rhs(rows.size());
  for (size_t j = 0; j < basis.size(); ++j)
    for (const auto& [m, c] : basis[j].terms()) a[rowOf(m)][j] = c;
  for (const auto& [m, c] : target.terms()) rhs[rowOf(m)] = c;
  GaussResult g = solveLinear(a, rhs, basis.size());
  if (!g.consistent) return std::nullopt;
  return g.particular;
}

}  // namespace detail

inline long filtrationDegree(const RewriteSystem& sys, const QPolynomial& r) {
  if (r.isZero()) fail(ErrorCode::ZeroElement, "the zero element has no filtration degree");
  long best = 0;
  bool first = true;
  for (const auto& [m, c] : r.terms()) {
    (void)c;
    long d = detail::weightedDegree(sys, m);
    if (first || d > best) best = d;
    first = false;
  }
  return best;
}

inline long filtrationDegree(const CompiledAlgebra& alg, const QPolynomial& r) {
  return filtrationDegree(alg.sys, r);
}

inline PiMap piMap(const CompiledAlgebra& alg, const QMonomial& d) {
  detail::requireKind(alg, PresentationKind::QuantumSpace, "pi_map");
  const RewriteSystem& sys = alg.sys;
  PiMap out;
  out.values.assign(sys.nvars(), RationalFunction(1));
  for (size_t k = 0; k < sys.nvars(); ++k)
    for (size_t v = 0; v < sys.nvars(); ++v)
      if (d.e[v] != 0)
        out.values[k] =
            out.values[k] *
            detail::qBetween(sys, static_cast<int>(v), static_cast<int>(k)).pow(d.e[v]);
  return out;
}

inline MonotoneReport isMonotone(const CompiledAlgebra& alg, const QPolynomial& w) {
  detail::requireKind(alg, PresentationKind::QuantumSpace, "is_monotone");
  if (w.isZero()) fail(ErrorCode::ZeroElement, "the zero element is not monotone");
  MonotoneReport rep;
  const QMonomial* firstMono = nullptr;
  PiMap firstPi;
  for (const auto& [m, c] : w.terms()) {
    (void)c;
    PiMap pi = piMap(alg, m);
    if (!firstMono) {
      firstMono = &m;
      firstPi = std::move(pi);
      continue;
    }
    if (pi != firstPi) {
      rep.isMonotone = false;
      rep.witness = {*firstMono, m};
      return rep;
    }
  }
  rep.isMonotone = true;
  rep.pi = std::move(firstPi);
  return rep;
}

// Monotone reduction: while w is not monotone, replace it with
// v = pi_{D1}(x)*x*w - w*x, which cancels the leading monomial's x-term and
// strictly shrinks the support while staying inside the two-sided ideal.
inline QPolynomial extractMonotone(const CompiledAlgebra& alg, QPolynomial w) {
  detail::requireKind(alg, PresentationKind::QuantumSpace, "extract_monotone");
  if (w.isZero()) fail(ErrorCode::ZeroElement, "cannot extract from the zero element");
  const RewriteSystem& sys = alg.sys;
  while (true) {
    MonotoneReport rep = isMonotone(alg, w);
    if (rep.isMonotone) return w;
    const QMonomial* lead = nullptr;
    for (const auto& [m, c] : w.terms()) {
      (void)c;
      if (!lead || detail::gradedLexLess(sys, *lead, m)) lead = &m;
    }
    PiMap leadPi = piMap(alg, *lead);
    // Scan generators from the last declared downward for a differing value.
    int x = -1;
    for (int g = static_cast<int>(sys.nvars()) - 1; g >= 0 && x < 0; --g)
      for (const auto& [m, c] : w.terms()) {
        (void)c;
        if (!(piMap(alg, m).values[static_cast<size_t>(g)] ==
              leadPi.values[static_cast<size_t>(g)])) {
          x = g;
          break;
        }
      }
    if (x < 0) fail(ErrorCode::InternalDisagreement, "non-monotone element with uniform pi");
    QPolynomial xp = sys.varPoly(x);
    QPolynomial next =
        sys.mul(xp, w).scaled(leadPi.values[static_cast<size_t>(x)]) - sys.mul(w, xp);
    if (next.isZero() || next.terms().size() >= w.terms().size())
      fail(ErrorCode::InternalDisagreement, "support did not shrink during extraction");
    w = std::move(next);
  }
}

// A monotone w factors as D*f with D a support monomial and f central in the
// Laurent extension.
inline std::pair<QMonomial, QPolynomial> centralFactor(const CompiledAlgebra& alg,
                                                       const QPolynomial& w) {
  detail::requireKind(alg, PresentationKind::QuantumSpace, "central_factor");
  MonotoneReport rep = isMonotone(alg, w);
  if (!rep.isMonotone) fail(ErrorCode::NotMonotone, "central_factor requires a monotone element");
  const RewriteSystem& sys = alg.sys;
  const QMonomial* delta = nullptr;
  for (const auto& [m, c] : w.terms()) {
    (void)c;
    if (!delta || detail::gradedLexLess(sys, m, *delta)) delta = &m;
  }
  std::set<int> all;
  for (size_t v = 0; v < sys.nvars(); ++v) all.insert(static_cast<int>(v));
  RewriteSystem torus = sys.laurentExtend(all);
  QPolynomial f = torus.mul(torus.monoInverse(*delta), w);
  // Sanity: the factorization is exact and f has trivial pi on every monomial.
  QPolynomial dPoly(sys.nvars());
  dPoly.addTerm(*delta, RationalFunction(1));
  if (!(torus.mul(dPoly, f) - w).isZero())
    fail(ErrorCode::InternalDisagreement, "central factorization does not multiply back");
  for (const auto& [m, c] : f.terms()) {
    (void)c;
    for (const RationalFunction& v : piMap(alg, m).values)
      if (!v.isOne())
        fail(ErrorCode::InternalDisagreement, "central factor has a nontrivial character");
  }
  return {*delta, f};
}

// Decide bR = Rb by bounded-degree linear solves: for every generator g there
// must be p, p' with p*b = b*g and b*p' = g*b.
inline bool normalizingBySolve(const CompiledAlgebra& alg, const QPolynomial& b) {
  const RewriteSystem& sys = alg.sys;
  for (size_t g = 0; g < sys.nvars(); ++g) {
    std::vector<QMonomial> cand = detail::monomialsUpTo(sys, sys.weight(g));
    std::vector<QPolynomial> left, right;
    for (const QMonomial& m : cand) {
      QPolynomial mp(sys.nvars());
      mp.addTerm(m, RationalFunction(1));
      left.push_back(sys.mul(mp, b));
      right.push_back(sys.mul(b, mp));
    }
    QPolynomial gp = sys.varPoly(static_cast<int>(g));
    if (!detail::matchLinear(left, sys.mul(b, gp))) return false;
    if (!detail::matchLinear(right, sys.mul(gp, b))) return false;
  }
  return true;
}

inline bool isNormalizing(const CompiledAlgebra& alg, const QPolynomial& b) {
  if (b.isZero()) fail(ErrorCode::ZeroElement, "the zero element is not normalizing");
  if (!detail::isPolynomial(b))
    fail(ErrorCode::InvalidArgument, "is_normalizing expects an element without negative powers");
  bool bySolve = normalizingBySolve(alg, b);
  if (alg.pres.kind == PresentationKind::QuantumSpace) {
    bool byMonotone = isMonotone(alg, b).isMonotone;
    if (byMonotone != bySolve)
      fail(ErrorCode::InternalDisagreement,
           "monotone test and linear solve disagree on a normalizing query");
  }
  return bySolve;
}

// sigma(r) = d^-1 * r * d. Images must stay inside R: a negative exponent in
// any image means conjugation does not stabilize the algebra.
inline Automorphism conjugationAutomorphism(const CompiledAlgebra& alg, const QMonomial& d) {
  const RewriteSystem& sys = alg.sys;
  Automorphism aut;
  for (size_t g = 0; g < sys.nvars(); ++g) {
    QPolynomial img = sys.conjugate(d, sys.varPoly(static_cast<int>(g)));
    if (!detail::isPolynomial(img))
      fail(ErrorCode::NotStabilizing, "conjugation maps " + sys.name(g) + " to " +
                                          sys.polyStr(img) + ", which lies outside the algebra");
    aut.images.push_back(std::move(img));
  }
  return aut;
}

// Apply the endomorphism to an arbitrary element. Negative powers are pushed
// through only when the relevant image is a unit times a monomial.
inline QPolynomial autApply(const CompiledAlgebra& alg, const Automorphism& aut,
                            const QPolynomial& r) {
  const RewriteSystem& sys = alg.sys;
  QPolynomial out = sys.zero();
  for (const auto& [m, c] : r.terms()) {
    QPolynomial acc = sys.constPoly(c);
    for (size_t v = 0; v < m.nvars(); ++v) {
      if (m.e[v] == 0) continue;
      const QPolynomial& img = aut.images[v];
      if (m.e[v] > 0) {
        acc = sys.mul(acc, sys.pow(img, m.e[v]));
        continue;
      }
      if (img.terms().size() != 1)
        fail(ErrorCode::NotInvertibleShape,
             "cannot invert the image of " + sys.name(v) + ": " + sys.polyStr(img));
      const auto& [im, ic] = *img.terms().begin();
      QPolynomial inv = sys.monoInverse(im).scaled(ic.inverse());
      acc = sys.mul(acc, sys.pow(inv, -m.e[v]));
    }
    out = out + acc;
  }
  return sys.nf(out);
}

inline Automorphism identityAutomorphism(const CompiledAlgebra& alg) {
  Automorphism aut;
  for (size_t g = 0; g < alg.sys.nvars(); ++g) aut.images.push_back(alg.sys.varPoly(static_cast<int>(g)));
  return aut;
}

// Check that the endomorphism respects every defining relation.
inline bool autRespectsRelations(const CompiledAlgebra& alg, const Automorphism& aut) {
  const RewriteSystem& sys = alg.sys;
  for (const RuleSpec& r : alg.pres.rules) {
    QPolynomial lhs = sys.mul(aut.images[static_cast<size_t>(r.hi)],
                              aut.images[static_cast<size_t>(r.lo)]);
    QPolynomial rhs = sys.mul(aut.images[static_cast<size_t>(r.lo)],
                              aut.images[static_cast<size_t>(r.hi)])
                          .scaled(r.q) +
                      autApply(alg, aut, r.tail);
    if (!(lhs - rhs).isZero()) return false;
  }
  return true;
}

// compose(a, b) applies b first: (a o b)(r) = a(b(r)).
inline Automorphism autCompose(const CompiledAlgebra& alg, const Automorphism& a,
                               const Automorphism& b) {
  Automorphism out;
  for (const QPolynomial& img : b.images) out.images.push_back(autApply(alg, a, img));
  return out;
}

inline bool autEqual(const Automorphism& a, const Automorphism& b) {
  if (a.images.size() != b.images.size()) return false;
  for (size_t i = 0; i < a.images.size(); ++i)
    if (!(a.images[i] - b.images[i]).isZero()) return false;
  return true;
}

// Leading scalars of a triangular endomorphism: sigma(g) = alpha_g*g + lower
// weighted degree. NotTriangular if any image lacks that shape.
inline std::vector<RationalFunction> triangularScalars(const CompiledAlgebra& alg,
                                                       const Automorphism& aut) {
  const RewriteSystem& sys = alg.sys;
  std::vector<RationalFunction> out;
  for (size_t g = 0; g < sys.nvars(); ++g) {
    const QPolynomial& img = aut.images[g];
    QMonomial gen = QMonomial::var(sys.nvars(), g);
    long dg = sys.weight(g);
    RationalFunction alpha;
    for (const auto& [m, c] : img.terms()) {
      if (m == gen) {
        alpha = c;
        continue;
      }
      if (detail::weightedDegree(sys, m) >= dg)
        fail(ErrorCode::NotTriangular, "image of " + sys.name(g) +
                                           " has a non-leading term of full degree: " +
                                           sys.polyStr(img));
    }
    if (alpha.isZero())
      fail(ErrorCode::NotTriangular, "image of " + sys.name(g) + " has no leading " +
                                         sys.name(g) + " term: " + sys.polyStr(img));
    out.push_back(alpha);
  }
  return out;
}

// Invert a triangular endomorphism by solving sigma(h_g) = x_g with a
// bounded-degree ansatz per generator.
inline Automorphism autInvert(const CompiledAlgebra& alg, const Automorphism& aut) {
  const RewriteSystem& sys = alg.sys;
  triangularScalars(alg, aut);  // shape gate
  Automorphism out;
  for (size_t g = 0; g < sys.nvars(); ++g) {
    std::vector<QMonomial> cand = detail::monomialsUpTo(sys, sys.weight(g));
    std::vector<QPolynomial> imgs;
    for (const QMonomial& m : cand) {
      QPolynomial mp(sys.nvars());
      mp.addTerm(m, RationalFunction(1));
      imgs.push_back(autApply(alg, aut, mp));
    }
    auto sol = detail::matchLinear(imgs, sys.varPoly(static_cast<int>(g)));
    if (!sol)
      fail(ErrorCode::NotInvertibleShape, "no preimage of " + sys.name(g) + " in degree " +
                                              std::to_string(sys.weight(g)));
    QPolynomial h(sys.nvars());
    for (size_t i = 0; i < cand.size(); ++i) h.addTerm(cand[i], (*sol)[i]);
    out.images.push_back(sys.nf(h));
  }
  return out;
}

// Order of a triangular automorphism: infinite once any leading scalar has
// infinite multiplicative order; otherwise the lcm of the scalar orders,
// confirmed by explicit composition (translations make it infinite).
inline std::optional<long> autOrder(const CompiledAlgebra& alg, const Automorphism& aut) {
  std::vector<RationalFunction> scalars = triangularScalars(alg, aut);
  long n = 1;
  for (const RationalFunction& a : scalars) {
    std::optional<int> ord = a.torsionOrder();
    if (!ord) return std::nullopt;
    n = std::lcm(n, static_cast<long>(*ord));
  }
  Automorphism power = identityAutomorphism(alg);
  for (long i = 0; i < n; ++i) power = autCompose(alg, power, aut);
  if (autEqual(power, identityAutomorphism(alg))) return n;
  return std::nullopt;
}

inline ShapeReport thm23Check(const CompiledAlgebra& alg, const Automorphism& aut) {
  ShapeReport rep;
  try {
    rep.leading = triangularScalars(alg, aut);
  } catch (const QalgError& e) {
    rep.pass = false;
    rep.detail = e.what();
    return rep;
  }
  // Degree preservation on a deterministic sample of products of generators.
  const RewriteSystem& sys = alg.sys;
  for (size_t a = 0; a < sys.nvars(); ++a)
    for (size_t b = 0; b < sys.nvars(); ++b) {
      QPolynomial prod = sys.mul(sys.varPoly(static_cast<int>(a)), sys.varPoly(static_cast<int>(b)));
      if (prod.isZero()) continue;
      if (filtrationDegree(sys, autApply(alg, aut, prod)) != filtrationDegree(sys, prod)) {
        rep.pass = false;
        rep.detail = "degree not preserved on " + sys.name(a) + "*" + sys.name(b);
        return rep;
      }
    }
  rep.detail = "filtration preserved; leading scalars recorded";
  return rep;
}

namespace detail {

inline std::optional<std::vector<long>> monomialGrade(const AlgebraPresentation& p,
                                                      const QMonomial& m) {
  std::vector<long> g(p.gradeRank(), 0);
  for (size_t v = 0; v < m.nvars(); ++v)
    for (size_t j = 0; j < p.gradeRank(); ++j) g[j] += static_cast<long>(m.e[v]) * p.grades[v][j];
  return g;
}

inline std::optional<std::vector<long>> polyGrade(const AlgebraPresentation& p,
                                                  const QPolynomial& r) {
  std::optional<std::vector<long>> grade;
  for (const auto& [m, c] : r.terms()) {
    (void)c;
    auto g = monomialGrade(p, m);
    if (!grade)
      grade = g;
    else if (!(*grade == *g))
      return std::nullopt;
  }
  return grade;
}

}  // namespace detail

// adjoint_x(r) = x*r - eps(grade(x), grade(r))*r*x for homogeneous r.
inline QPolynomial adjointApply(const CompiledAlgebra& alg, int x, const QPolynomial& r) {
  detail::requireKind(alg, PresentationKind::ColorEnveloping, "adjoint_apply");
  if (r.isZero()) return alg.sys.zero();
  auto grade = detail::polyGrade(alg.pres, r);
  if (!grade)
    fail(ErrorCode::NotHomogeneous, "adjoint_apply requires a homogeneous element");
  RationalFunction eps =
      epsilonScalar(alg.pres.epsilonE, alg.pres.grades[static_cast<size_t>(x)], *grade);
  const RewriteSystem& sys = alg.sys;
  QPolynomial xp = sys.varPoly(x);
  return sys.mul(xp, r) - sys.mul(r, xp).scaled(eps);
}

inline SemiInvariantReport isSemiInvariant(const CompiledAlgebra& alg, const QPolynomial& v) {
  detail::requireKind(alg, PresentationKind::ColorEnveloping, "is_semi_invariant");
  if (v.isZero()) fail(ErrorCode::ZeroElement, "the zero element is not a semi-invariant");
  SemiInvariantReport rep;
  auto grade = detail::polyGrade(alg.pres, v);
  if (!grade) return rep;
  rep.homogeneous = true;
  rep.grade = *grade;
  std::vector<RationalFunction> weights;
  for (size_t x = 0; x < alg.sys.nvars(); ++x) {
    QPolynomial a = adjointApply(alg, static_cast<int>(x), v);
    if (a.isZero()) {
      weights.emplace_back();
      continue;
    }
    // a must equal alpha*v: compare via the ratio on v's leading term.
    const auto& [vm, vc] = *v.terms().begin();
    auto it = a.terms().find(vm);
    if (it == a.terms().end()) return rep;
    RationalFunction alpha = it->second / vc;
    if (!(a - v.scaled(alpha)).isZero()) return rep;
    weights.push_back(alpha);
  }
  rep.semiInvariant = true;
  rep.weights = std::move(weights);
  return rep;
}

// Fit sigma to the graded shape: sigma(x) = eps(h, g)*x on nonidentity grades
// and sigma(x) = x + alpha_x on identity grades, solving for h.
inline Thm25Shape thm25Shape(const CompiledAlgebra& alg, const Automorphism& aut) {
  detail::requireKind(alg, PresentationKind::ColorEnveloping, "thm25_shape");
  const AlgebraPresentation& p = alg.pres;
  const RewriteSystem& sys = alg.sys;
  const size_t k = p.gradeRank();
  Thm25Shape out;
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  std::vector<bool> zeroGrade(sys.nvars(), false);
  for (size_t g = 0; g < sys.nvars(); ++g) {
    bool isZeroGrade =
        std::all_of(p.grades[g].begin(), p.grades[g].end(), [](long v) { return v == 0; });
    zeroGrade[g] = isZeroGrade;
    const QPolynomial& img = aut.images[g];
    QMonomial gen = QMonomial::var(sys.nvars(), g);
    if (isZeroGrade) {
      // Expect x + alpha_x with scalar alpha_x.
      QPolynomial rest = img;
      auto it = img.terms().find(gen);
      if (it == img.terms().end() || !it->second.isOne()) {
        out.detail = "image of " + sys.name(g) + " is not x + scalar";
        return out;
      }
      rest.addTerm(gen, RationalFunction(-1));
      if (!rest.isZero() && !(rest.terms().size() == 1 && rest.terms().begin()->first.isOne())) {
        out.detail = "image of " + sys.name(g) + " is not x + scalar";
        return out;
      }
      out.translations[static_cast<int>(g)] =
          rest.isZero() ? RationalFunction() : rest.terms().begin()->second;
      continue;
    }
    if (img.terms().size() != 1 || !(img.terms().begin()->first == gen)) {
      out.detail = "image of " + sys.name(g) + " is not scalar*" + sys.name(g);
      return out;
    }
    std::optional<int> d = img.terms().begin()->second.asQPower();
    if (!d) {
      out.detail = "scalar on " + sys.name(g) + " is not a power of q";
      return out;
    }
    // eps(h, grade_g) = q^(h^T E grade_g): one linear row (E*grade_g)^T h = d.
    std::vector<mpq_class> row(k, 0);
    for (size_t i = 0; i < k; ++i) {
      long acc = 0;
      for (size_t j = 0; j < k; ++j) acc += p.epsilonE[i][j] * p.grades[g][j];
      row[i] = acc;
    }
    rows.push_back(std::move(row));
    rhs.push_back(*d);
  }
  RatSolve sol = solveRationalSystem(rows, rhs, k);
  if (!sol.consistent) {
    out.detail = "no grading element h matches the observed scalars";
    return out;
  }
  std::vector<long> h(k, 0);
  if (sol.unique) {
    for (size_t i = 0; i < k; ++i) {
      mpq_class v = sol.particular[i];
      if (v.get_den() != 1) {
        out.detail = "the matching h is not integral";
        return out;
      }
      h[i] = static_cast<long>(v.get_num().get_si());
    }
  } else {
    // Underdetermined (cannot happen under a proper grading): box search.
    bool found = false;
    std::vector<long> cur(k, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (found) return;
      if (i == k) {
        for (size_t r = 0; r < rows.size(); ++r) {
          mpq_class acc = 0;
          for (size_t j = 0; j < k; ++j) acc += rows[r][j] * cur[j];
          if (acc != rhs[r]) return;
        }
        h = cur;
        found = true;
        return;
      }
      for (long v = -4; v <= 4 && !found; ++v) {
        cur[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    if (!found) {
      out.detail = "no integral h in the search box";
      return out;
    }
  }
  out.ok = true;
  out.h = std::move(h);
  out.detail = "shape matched";
  return out;
}

}  // namespace qalg

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qalg/auto.hpp"
#include "qalg/linalg.hpp"

namespace qalg {

// Witness of an X-inner skew derivation: delta(r) = c*r - tau(r)*c for every
// base generator r, together with a basis of the homogeneous solution space
// found inside the same search box.
struct InnerWitness {
  QPolynomial c;
  std::vector<QPolynomial> kernel;
};

// Outcome of the boxed witness search.  An empty witness is the NoneInBox
// certificate: no Laurent element with support in [-box, box]^n works.
struct DerSolveResult {
  std::optional<InnerWitness> witness;
  int box = 0;
  bool noneInBox() const { return !witness.has_value(); }
};

struct ClosureCheck {
  std::string name;
  QPolynomial value;
  bool inR = false;
};

// Verdict of the two normalizing-element cases. `induced` is engaged exactly
// when every closure element lies in R; otherwise `detail` names the failure.
struct Thm32Report {
  int caseNumber = 1;
  QMonomial w;
  long m = 0;
  std::vector<ClosureCheck> closures;
  std::optional<Automorphism> induced;
  std::string detail;
  bool accepted() const { return induced.has_value(); }
};

// Coefficient identity extracted from the degree-(n-1) term of tau^n(s)v - vs.
struct Prop31Identity {
  QPolynomial engineCoefficient;
  QPolynomial formulaValue;
  RationalFunction factor;
  bool match = false;
};

namespace detail {

inline void requireOre(const CompiledAlgebra& alg, const char* what) {
  requireKind(alg, PresentationKind::OreExtension, what);
  if (!alg.ore) fail(ErrorCode::WrongKind, std::string(what) + " needs an Ore split");
}

inline std::vector<int> oreBaseVars(const CompiledAlgebra& alg) {
  std::vector<int> out;
  for (size_t v = 0; v < alg.sys.nvars(); ++v)
    if (static_cast<int>(v) != alg.ore->var) out.push_back(static_cast<int>(v));
  return out;
}

// Localize every base variable. The base of an Ore-kind presentation is a
// quantum space, so the extension is structurally justified even when carrier
// tails are not divisible by the inverted variable.
inline RewriteSystem oreTorus(const CompiledAlgebra& alg) {
  std::set<int> base;
  for (int v : oreBaseVars(alg)) base.insert(v);
  return alg.sys.laurentExtend(base, base);
}

inline QPolynomial tauPowApply(const CompiledAlgebra& alg, const QPolynomial& p, long k) {
  QPolynomial out(p.nvars());
  for (const auto& [m, c] : p.terms())
    out.addTerm(m, c * alg.tauScalarOf(m).pow(static_cast<int>(k)));
  return out;
}

// delta(p) = nf(x*p) - tau(p)*x, evaluated in the localized system.
inline QPolynomial deltaExt(const CompiledAlgebra& alg, const RewriteSystem& ext,
                            const QPolynomial& p) {
  QPolynomial x = ext.varPoly(alg.ore->var);
  return ext.mul(x, p) - ext.mul(alg.tauApply(p), x);
}

inline bool witnessHolds(const CompiledAlgebra& alg, const RewriteSystem& ext,
                         const QPolynomial& c) {
  for (int g : oreBaseVars(alg)) {
    QPolynomial r = ext.varPoly(g);
    QPolynomial lhs = alg.ore->delta[static_cast<size_t>(g)];
    QPolynomial rhs = ext.mul(c, r) - ext.mul(r.scaled(alg.ore->tau[static_cast<size_t>(g)]), c);
    if (!(lhs - rhs).isZero()) return false;
  }
  return true;
}

// Clears base denominators on the left: returns a monomial a with a*p free of
// negative exponents.
inline QMonomial clearingMonomial(const CompiledAlgebra& alg, const QPolynomial& p) {
  QMonomial a = QMonomial::one(alg.sys.nvars());
  for (int v : oreBaseVars(alg)) {
    int low = 0;
    for (const auto& [m, c] : p.terms()) {
      (void)c;
      low = std::min(low, m.e[static_cast<size_t>(v)]);
    }
    a.e[static_cast<size_t>(v)] = -low;
  }
  return a;
}

}  // namespace detail

// Searches for c = sum of Laurent monomials with exponents in [-box, box] over
// the base variables such that delta(r) = c*r - tau(r)*c for every base
// generator r. Returns the particular solution with free coordinates set to
// zero plus a kernel basis, or the NoneInBox certificate.
inline DerSolveResult xinnerDerivationSolve(const CompiledAlgebra& alg, int box) {
  detail::requireOre(alg, "xinner_derivation_solve");
  if (box < 1) fail(ErrorCode::InvalidArgument, "search box must be at least 1");
  std::vector<int> base = detail::oreBaseVars(alg);
  const size_t cap = 20000;
  size_t count = 1;
  for (size_t i = 0; i < base.size(); ++i) {
    count *= static_cast<size_t>(2 * box + 1);
    if (count > cap)
      fail(ErrorCode::BoxTooLarge, "witness search box exceeds " + std::to_string(cap) +
                                       " candidate monomials");
  }
  RewriteSystem ext = detail::oreTorus(alg);

  std::vector<QMonomial> cand;
  cand.reserve(count);
  std::vector<int> odo(base.size(), -box);
  while (true) {
    QMonomial m = QMonomial::one(ext.nvars());
    for (size_t i = 0; i < base.size(); ++i) m.e[static_cast<size_t>(base[i])] = odo[i];
    cand.push_back(m);
    size_t i = 0;
    while (i < odo.size() && odo[i] == box) odo[i++] = -box;
    if (i == odo.size()) break;
    ++odo[i];
  }

  // Rows are keyed by (generator, normal-form monomial).
  std::map<std::pair<int, QMonomial>, size_t> rowOf;
  std::vector<std::vector<RationalFunction>> a;
  std::vector<RationalFunction> rhs;
  auto row = [&](int g, const QMonomial& m) {
    auto it = rowOf.find({g, m});
    if (it != rowOf.end()) return it->second;
    size_t r = a.size();
    rowOf.emplace(std::make_pair(g, m), r);
    a.emplace_back(cand.size(), RationalFunction());
    rhs.emplace_back();
    return r;
  };
  for (int g : base) {
    QPolynomial r = ext.varPoly(g);
    QPolynomial taur = r.scaled(alg.ore->tau[static_cast<size_t>(g)]);
    for (size_t t = 0; t < cand.size(); ++t) {
      QPolynomial mt(ext.nvars());
      mt.addTerm(cand[t], RationalFunction(1));
      QPolynomial pt = ext.mul(mt, r) - ext.mul(taur, mt);
      for (const auto& [m, c] : pt.terms()) a[row(g, m)][t] = c;
    }
    for (const auto& [m, c] : alg.ore->delta[static_cast<size_t>(g)].terms()) rhs[row(g, m)] = c;
  }

  GaussResult sol = solveLinear(a, rhs, cand.size());
  DerSolveResult out;
  out.box = box;
  if (!sol.consistent) return out;

  InnerWitness w;
  w.c = QPolynomial(ext.nvars());
  for (size_t t = 0; t < cand.size(); ++t)
    if (!sol.particular[t].isZero()) w.c.addTerm(cand[t], sol.particular[t]);
  if (!detail::witnessHolds(alg, ext, w.c))
    fail(ErrorCode::InternalDisagreement, "solver witness fails its defining identity");
  for (const auto& v : sol.kernel) {
    QPolynomial k(ext.nvars());
    for (size_t t = 0; t < cand.size(); ++t)
      if (!v[t].isZero()) k.addTerm(cand[t], v[t]);
    // A kernel element satisfies the twisted relation k*r = tau(r)*k.
    for (int g : base) {
      QPolynomial r = ext.varPoly(g);
      QPolynomial diff =
          ext.mul(k, r) - ext.mul(r.scaled(alg.ore->tau[static_cast<size_t>(g)]), k);
      if (!diff.isZero())
        fail(ErrorCode::InternalDisagreement, "kernel element fails the homogeneous identity");
    }
    w.kernel.push_back(std::move(k));
  }
  out.witness = std::move(w);
  return out;
}

// Does a*sigma(r)*sigma(b) = b*r*a hold for every generator and for r = 1?
// When it does, sigma is the X-inner automorphism s |-> (a^-1 b) s (a^-1 b)^-1;
// equivalently it is induced on the right by b^-1 a.
inline bool verifyInducing(const CompiledAlgebra& alg, const QPolynomial& a, const QPolynomial& b,
                           const Automorphism& sigma) {
  if (a.isZero() || b.isZero())
    fail(ErrorCode::ZeroElement, "inducing pair must consist of nonzero elements");
  const RewriteSystem& sys = alg.sys;
  QPolynomial sb = autApply(alg, sigma, b);
  std::vector<QPolynomial> probes;
  probes.push_back(sys.one());
  for (size_t g = 0; g < sys.nvars(); ++g) probes.push_back(sys.varPoly(static_cast<int>(g)));
  for (const QPolynomial& r : probes) {
    QPolynomial lhs = sys.mul(sys.mul(a, autApply(alg, sigma, r)), sb);
    QPolynomial rhs = sys.mul(sys.mul(b, r), a);
    if (!(lhs - rhs).isZero()) return false;
  }
  return true;
}

// Materializes the candidate u = (x - c)^m * w as a left fraction a^-1 * b
// with a, b in R[x] (nonnegative-power factorization). The pair certifies the
// right conjugation by u through verifyInducing.
inline std::pair<QPolynomial, QPolynomial> inducingPair(const CompiledAlgebra& alg,
                                                        const QPolynomial& c, long m,
                                                        const QMonomial& w) {
  detail::requireOre(alg, "inducing_pair");
  RewriteSystem ext = detail::oreTorus(alg);
  QPolynomial p = ext.varPoly(alg.ore->var) - c;
  QPolynomial wPoly(ext.nvars());
  wPoly.addTerm(w, RationalFunction(1));
  if (m >= 0) {
    // u = P^m w itself; clear denominators on the left: u = aMono^-1 * (aMono u).
    QPolynomial u = ext.mul(ext.pow(p, static_cast<int>(m)), wPoly);
    QMonomial aMono = detail::clearingMonomial(alg, u);
    QPolynomial aPoly(ext.nvars());
    aPoly.addTerm(aMono, RationalFunction(1));
    return {ext.mul(aPoly, u), aPoly};
  }
  // u^-1 = w^-1 P^|m|; clear it instead: u = (aMono * u^-1)^-1 * aMono.
  QPolynomial uInv = ext.mul(ext.monoInverse(w), ext.pow(p, static_cast<int>(-m)));
  QMonomial aMono = detail::clearingMonomial(alg, uInv);
  QPolynomial aPoly(ext.nvars());
  aPoly.addTerm(aMono, RationalFunction(1));
  return {aPoly, ext.mul(aPoly, uInv)};
}

namespace detail {

inline Thm32Report closeReport(const CompiledAlgebra& alg, const RewriteSystem& ext,
                               Thm32Report rep, std::vector<QPolynomial> images) {
  for (const ClosureCheck& c : rep.closures) {
    if (c.inR) continue;
    rep.detail = c.name + " = " + ext.polyStr(c.value) + " is not in R";
    return rep;
  }
  for (size_t g = 0; g < images.size(); ++g) {
    if (detail::isPolynomial(images[g])) continue;
    rep.detail = "image of " + ext.name(static_cast<int>(g)) + " leaves R: " +
                 ext.polyStr(images[g]);
    return rep;
  }
  Automorphism aut;
  aut.images = std::move(images);
  if (!autRespectsRelations(alg, aut))
    fail(ErrorCode::InternalDisagreement,
         "closure checks passed but the induced map breaks a relation");
  rep.induced = std::move(aut);
  return rep;
}

}  // namespace detail

// Case 1: does the base monomial w itself induce an automorphism of R[x]?
// Closure elements: w^-1 tau(w), tau(w^-1) w, w^-1 delta(w); on success the
// base action is r |-> w^-1 r w and x maps to w^-1 tau(w) x + w^-1 delta(w).
inline Thm32Report thm32Case1(const CompiledAlgebra& alg, const QMonomial& w) {
  detail::requireOre(alg, "thm32_case1");
  if (w.e[static_cast<size_t>(alg.ore->var)] != 0)
    fail(ErrorCode::InvalidArgument, "w must be a Laurent monomial over the base");
  RewriteSystem ext = detail::oreTorus(alg);
  QPolynomial wPoly(ext.nvars());
  wPoly.addTerm(w, RationalFunction(1));
  QPolynomial wInv = ext.monoInverse(w);

  Thm32Report rep;
  rep.caseNumber = 1;
  rep.w = w;
  QPolynomial c1 = ext.mul(wInv, alg.tauApply(wPoly));
  QPolynomial c2 = ext.mul(alg.tauApply(wInv), wPoly);
  QPolynomial c3 = ext.mul(wInv, detail::deltaExt(alg, ext, wPoly));
  rep.closures.push_back({"w_inv_tau_w", c1, detail::isPolynomial(c1)});
  rep.closures.push_back({"tau_w_inv_w", c2, detail::isPolynomial(c2)});
  rep.closures.push_back({"w_inv_delta_w", c3, detail::isPolynomial(c3)});

  std::vector<QPolynomial> images(ext.nvars(), QPolynomial(ext.nvars()));
  for (size_t g = 0; g < ext.nvars(); ++g) {
    if (static_cast<int>(g) == alg.ore->var)
      images[g] = ext.mul(c1, ext.varPoly(alg.ore->var)) + c3;
    else
      images[g] = ext.conjugate(w, ext.varPoly(static_cast<int>(g)));
  }
  return detail::closeReport(alg, ext, std::move(rep), std::move(images));
}

// Case 2: does (x - c)^m w induce an automorphism of R[x]? Requires a verified
// witness c for delta. Closure elements: w^-1 tau(w), tau(w^-1) w, and
// tau^-m(c) - tau(w) c w^-1; on success the base action is
// r |-> w^-1 tau^-m(r) w and x maps to w^-1 tau(w) x + w^-1 (closure) w.
inline Thm32Report thm32Case2(const CompiledAlgebra& alg, const QMonomial& w, long m,
                              const QPolynomial& c) {
  detail::requireOre(alg, "thm32_case2");
  if (w.e[static_cast<size_t>(alg.ore->var)] != 0)
    fail(ErrorCode::InvalidArgument, "w must be a Laurent monomial over the base");
  RewriteSystem ext = detail::oreTorus(alg);
  if (!detail::witnessHolds(alg, ext, c))
    fail(ErrorCode::UnverifiedWitness,
         "c does not satisfy delta(r) = c*r - tau(r)*c on the base generators");
  QPolynomial wPoly(ext.nvars());
  wPoly.addTerm(w, RationalFunction(1));
  QPolynomial wInv = ext.monoInverse(w);

  Thm32Report rep;
  rep.caseNumber = 2;
  rep.w = w;
  rep.m = m;
  QPolynomial tw = alg.tauApply(wPoly);
  QPolynomial c1 = ext.mul(wInv, tw);
  QPolynomial c2 = ext.mul(alg.tauApply(wInv), wPoly);
  QPolynomial c3 = detail::tauPowApply(alg, c, -m) - ext.mul(ext.mul(tw, c), wInv);
  rep.closures.push_back({"w_inv_tau_w", c1, detail::isPolynomial(c1)});
  rep.closures.push_back({"tau_w_inv_w", c2, detail::isPolynomial(c2)});
  rep.closures.push_back({"c_closure", c3, detail::isPolynomial(c3)});

  std::vector<QPolynomial> images(ext.nvars(), QPolynomial(ext.nvars()));
  for (size_t g = 0; g < ext.nvars(); ++g) {
    if (static_cast<int>(g) == alg.ore->var)
      images[g] = ext.mul(c1, ext.varPoly(alg.ore->var)) + ext.conjugate(w, c3);
    else
      images[g] =
          ext.conjugate(w, detail::tauPowApply(alg, ext.varPoly(static_cast<int>(g)), -m));
  }
  Thm32Report out = detail::closeReport(alg, ext, std::move(rep), std::move(images));
  if (out.accepted()) {
    auto [a, b] = inducingPair(alg, c, m, w);
    if (!verifyInducing(alg, a, b, *out.induced))
      fail(ErrorCode::InternalDisagreement,
           "induced automorphism fails its own inducing-pair certificate");
  }
  return out;
}

// The q-Weyl landmark: (x - c)*y equals q(q-1)^-1 * (xy - yx) for the witness
// c of the Weyl fixture; returns the common value.
inline QPolynomial weylPzIdentity(const CompiledAlgebra& alg, const QPolynomial& c) {
  detail::requireOre(alg, "weyl_pz_identity");
  std::vector<int> base = detail::oreBaseVars(alg);
  if (base.size() != 1)
    fail(ErrorCode::InvalidArgument, "the identity needs a rank-one base");
  RewriteSystem ext = detail::oreTorus(alg);
  QPolynomial x = ext.varPoly(alg.ore->var);
  QPolynomial y = ext.varPoly(base[0]);
  QPolynomial lhs = ext.mul(x - c, y);
  RationalFunction factor =
      RationalFunction::q(1) / (RationalFunction::q(1) - RationalFunction(1));
  QPolynomial rhs = (ext.mul(x, y) - ext.mul(y, x)).scaled(factor);
  if (!(lhs - rhs).isZero())
    fail(ErrorCode::IdentityFails, "(x - c)*y = " + ext.polyStr(lhs) +
                                       " but q(q-1)^-1*(xy - yx) = " + ext.polyStr(rhs));
  return lhs;
}

// Degree-(n-1) coefficient of tau^n(s)*v - v*s for v = x^n + b*x^(n-1), where
// s is the base generator `gen`. The closed form carries the skew-scalar sum
// 1 + s^-1 + ... + s^-(n-1) in front of delta(tau^(n-1)(s)).
inline Prop31Identity prop31Coefficient(const CompiledAlgebra& alg, long n, const QPolynomial& b,
                                        int gen) {
  detail::requireOre(alg, "prop31_coefficient");
  if (n < 1) fail(ErrorCode::InvalidArgument, "degree must be at least 1");
  if (gen == alg.ore->var) fail(ErrorCode::InvalidArgument, "s must be a base generator");
  if (!alg.ore->skew)
    fail(ErrorCode::InvalidArgument, "the identity needs a uniform skew scalar");
  RewriteSystem ext = detail::oreTorus(alg);
  size_t xv = static_cast<size_t>(alg.ore->var);
  QPolynomial s = ext.varPoly(gen);
  QPolynomial v = ext.varPoly(alg.ore->var, static_cast<int>(n)) +
                  ext.mul(b, ext.varPoly(alg.ore->var, static_cast<int>(n - 1)));
  QPolynomial z = ext.mul(detail::tauPowApply(alg, s, n), v) - ext.mul(v, s);

  Prop31Identity out;
  out.engineCoefficient = QPolynomial(ext.nvars());
  for (const auto& [mono, coef] : z.terms()) {
    if (mono.e[xv] != static_cast<int>(n - 1)) continue;
    QMonomial stripped = mono;
    stripped.e[xv] = 0;
    out.engineCoefficient.addTerm(stripped, coef);
  }
  out.factor = RationalFunction();
  for (long i = 0; i < n; ++i)
    out.factor += alg.ore->skew->pow(static_cast<int>(-i));
  QPolynomial tn1 = detail::tauPowApply(alg, s, n - 1);
  out.formulaValue = ext.mul(detail::tauPowApply(alg, s, n), b) - ext.mul(b, tn1) -
                     detail::deltaExt(alg, ext, tn1).scaled(out.factor);
  out.match = (out.engineCoefficient - out.formulaValue).isZero();
  return out;
}

}  // namespace qalg

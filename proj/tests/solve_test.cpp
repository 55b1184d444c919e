#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qalg/solve.hpp"

using namespace qalg;

namespace {

std::string readFixture(const std::string& name) {
  std::ifstream in(std::string(QALG_FIXTURES_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CompiledAlgebra compileFixture(const std::string& name) {
  return compilePresentation(parsePresentation(readFixture(name)));
}

QMonomial mono(std::vector<int> exps) { return QMonomial(std::move(exps)); }

RationalFunction rfq(int k) { return RationalFunction::q(k); }
RationalFunction one() { return RationalFunction(1); }

// (1 - q)^-1
RationalFunction invOneMinusQ() { return (one() - rfq(1)).inverse(); }

QPolynomial weylWitness(const CompiledAlgebra& weyl) {
  // c = (1-q)^-1 * y^-1 in declaration order (y, x).
  QPolynomial c(weyl.sys.nvars());
  c.addTerm(mono({-1, 0}), invOneMinusQ());
  return c;
}

QPolynomial heisWitness(const CompiledAlgebra& alg) {
  // c = q(1-q^2)^-1 * y^-1 z in declaration order (y, z, x).
  QPolynomial c(alg.sys.nvars());
  c.addTerm(mono({-1, 1, 0}), rfq(1) / (one() - rfq(2)));
  return c;
}

}  // namespace

TEST_CASE("witness search recovers the Weyl inner-derivation element") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  DerSolveResult res = xinnerDerivationSolve(weyl, 1);
  REQUIRE_FALSE(res.noneInBox());
  REQUIRE((res.witness->c - weylWitness(weyl)).isZero());
  REQUIRE(res.witness->kernel.empty());
  // Still the same witness in a larger box.
  DerSolveResult res2 = xinnerDerivationSolve(weyl, 2);
  REQUIRE_FALSE(res2.noneInBox());
  REQUIRE((res2.witness->c - weylWitness(weyl)).isZero());
  REQUIRE(res2.witness->kernel.empty());
}

TEST_CASE("witness search on the second Heisenberg analog") {
  CompiledAlgebra alg = compileFixture("ex4_4.qalg");
  DerSolveResult res = xinnerDerivationSolve(alg, 1);
  REQUIRE_FALSE(res.noneInBox());
  REQUIRE((res.witness->c - heisWitness(alg)).isZero());
  REQUIRE(res.witness->kernel.size() == 1);
  // The kernel line is spanned by y^-1 z^-1 (up to a scalar).
  const QPolynomial& k = res.witness->kernel[0];
  REQUIRE(k.terms().size() == 1);
  REQUIRE(k.terms().begin()->first == mono({-1, -1, 0}));
  // It is twisted-central (k*r = tau(r)*k), but NOT central: conjugating x
  // by it shifts x by a y^-2 term, so plain centrality fails in R[x].
  RewriteSystem torus = alg.sys;
  QPolynomial x = torus.varPoly(2);
  QPolynomial comm = torus.mul(x, k) - torus.mul(k, x);
  REQUIRE_FALSE(comm.isZero());
}

TEST_CASE("witness search certifies NoneInBox and is monotone in the box") {
  CompiledAlgebra heis1 = compileFixture("ex4_3.qalg");
  REQUIRE(xinnerDerivationSolve(heis1, 3).noneInBox());
  REQUIRE(xinnerDerivationSolve(heis1, 2).noneInBox());
  REQUIRE(xinnerDerivationSolve(heis1, 1).noneInBox());
  CompiledAlgebra color = compileFixture("ex4_2_ore.qalg");
  REQUIRE(xinnerDerivationSolve(color, 3).noneInBox());
  REQUIRE(xinnerDerivationSolve(color, 1).noneInBox());
}

TEST_CASE("witness search box errors") {
  CompiledAlgebra alg = compileFixture("ex4_4.qalg");
  REQUIRE_THROWS_AS(xinnerDerivationSolve(alg, 0), QalgError);
  try {
    xinnerDerivationSolve(alg, 75);  // (2*75+1)^2 > 20000
    FAIL("expected BoxTooLarge");
  } catch (const QalgError& e) {
    REQUIRE(e.code() == ErrorCode::BoxTooLarge);
  }
  CompiledAlgebra color = compileFixture("ex2_6.qalg");
  REQUIRE_THROWS_AS(xinnerDerivationSolve(color, 1), QalgError);
}

TEST_CASE("witness search on the weighted extension") {
  CompiledAlgebra alg = compileFixture("ex2_4.qalg");
  DerSolveResult res = xinnerDerivationSolve(alg, 1);
  REQUIRE_FALSE(res.noneInBox());
  // c = (1-q)^-1 (z + y + 1) over the commutative base.
  QPolynomial expected(alg.sys.nvars());
  expected.addTerm(mono({0, 1, 0}), invOneMinusQ());
  expected.addTerm(mono({1, 0, 0}), invOneMinusQ());
  expected.addTerm(mono({0, 0, 0}), invOneMinusQ());
  REQUIRE((res.witness->c - expected).isZero());
  REQUIRE(res.witness->kernel.empty());
}

TEST_CASE("case 1 acceptance table for the first Heisenberg analog") {
  CompiledAlgebra alg = compileFixture("ex4_3.qalg");
  const RewriteSystem& sys = alg.sys;
  for (int m = -3; m <= 3; ++m) {
    Thm32Report rep = thm32Case1(alg, mono({0, m, 0}));
    INFO("m=" << m);
    REQUIRE(rep.accepted());
    REQUIRE((rep.induced->images[2] - sys.varPoly(2).scaled(rfq(m))).isZero());
    REQUIRE((rep.induced->images[0] - sys.varPoly(0).scaled(rfq(-m))).isZero());
    REQUIRE((rep.induced->images[1] - sys.varPoly(1)).isZero());
  }
  // w = y fails: w^-1 delta(w) = y^-1 z has a negative exponent.
  Thm32Report bad = thm32Case1(alg, mono({1, 0, 0}));
  REQUIRE_FALSE(bad.accepted());
  REQUIRE(bad.detail.find("w_inv_delta_w") != std::string::npos);
  QPolynomial yInvZ(sys.nvars());
  yInvZ.addTerm(mono({-1, 1, 0}), one());
  REQUIRE((bad.closures[2].value - yInvZ).isZero());
  // Any w = y^n z^m with n != 0 fails the same closure.
  for (int n = -2; n <= 2; ++n)
    for (int m = -2; m <= 2; ++m) {
      if (n == 0) continue;
      Thm32Report rep = thm32Case1(alg, mono({n, m, 0}));
      INFO("n=" << n << " m=" << m);
      REQUIRE_FALSE(rep.accepted());
      REQUIRE(rep.detail.find("w_inv_delta_w") != std::string::npos);
    }
}

TEST_CASE("case 1 on the Weyl algebra and the trivial monomial") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  Thm32Report rej = thm32Case1(weyl, mono({1, 0}));
  REQUIRE_FALSE(rej.accepted());
  REQUIRE(rej.detail.find("w_inv_delta_w") != std::string::npos);
  QPolynomial yInv(weyl.sys.nvars());
  yInv.addTerm(mono({-1, 0}), one());
  REQUIRE((rej.closures[2].value - yInv).isZero());
  Thm32Report id = thm32Case1(weyl, mono({0, 0}));
  REQUIRE(id.accepted());
  REQUIRE(autEqual(*id.induced, identityAutomorphism(weyl)));
}

TEST_CASE("case 1 matches direct conjugation where both apply") {
  CompiledAlgebra color = compileFixture("ex4_2_ore.qalg");
  for (int n = -2; n <= 2; ++n)
    for (int m = -2; m <= 2; ++m) {
      Thm32Report rep = thm32Case1(color, mono({n, m, 0}));
      INFO("n=" << n << " m=" << m);
      REQUIRE(rep.accepted());
      REQUIRE(autEqual(*rep.induced, conjugationAutomorphism(color, mono({n, m, 0}))));
    }
}

TEST_CASE("case 2 on the Weyl algebra accepts exactly the diagonal") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  QPolynomial c = weylWitness(weyl);
  for (int n = -3; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      Thm32Report rep = thm32Case2(weyl, mono({n, 0}), m, c);
      INFO("n=" << n << " m=" << m);
      REQUIRE(rep.accepted() == (m == n));
      if (m == n) {
        REQUIRE((rep.induced->images[1] - weyl.sys.varPoly(1).scaled(rfq(n))).isZero());
        REQUIRE((rep.induced->images[0] - weyl.sys.varPoly(0).scaled(rfq(-n))).isZero());
      } else {
        REQUIRE(rep.detail.find("c_closure") != std::string::npos);
      }
    }
  // The m = 0, w = y rejection value is exactly y^-1.
  Thm32Report rej = thm32Case2(weyl, mono({1, 0}), 0, c);
  QPolynomial yInv(weyl.sys.nvars());
  yInv.addTerm(mono({-1, 0}), one());
  REQUIRE((rej.closures[2].value - yInv).isZero());
  // A wrong witness is refused outright.
  QPolynomial fake(weyl.sys.nvars());
  fake.addTerm(mono({-1, 0}), one());
  try {
    thm32Case2(weyl, mono({1, 0}), 1, fake);
    FAIL("expected UnverifiedWitness");
  } catch (const QalgError& e) {
    REQUIRE(e.code() == ErrorCode::UnverifiedWitness);
  }
}

TEST_CASE("case 2 table for the second Heisenberg analog") {
  CompiledAlgebra alg = compileFixture("ex4_4.qalg");
  const RewriteSystem& sys = alg.sys;
  QPolynomial c = heisWitness(alg);
  for (int n = -2; n <= 2; ++n)
    for (int m = -2; m <= 2; ++m) {
      // u = (x - c)^m y^m z^n: the closure forces the y-exponent to equal m.
      Thm32Report rep = thm32Case2(alg, mono({m, n, 0}), m, c);
      INFO("n=" << n << " m=" << m);
      REQUIRE(rep.accepted());
      REQUIRE((rep.induced->images[2] - sys.varPoly(2).scaled(rfq(m - n))).isZero());
      REQUIRE((rep.induced->images[0] - sys.varPoly(0).scaled(rfq(n - m))).isZero());
      REQUIRE((rep.induced->images[1] - sys.varPoly(1)).isZero());
      // Mismatched power: rejected through the witness-closure element.
      if (m != 0) {
        Thm32Report off = thm32Case2(alg, mono({m, n, 0}), 0, c);
        REQUIRE_FALSE(off.accepted());
        REQUIRE(off.detail.find("c_closure") != std::string::npos);
      }
    }
  // Conjugating x by P(x) alone leaves R: closure value is -q y^-1 z.
  Thm32Report p1 = thm32Case2(alg, mono({0, 0, 0}), 1, c);
  REQUIRE_FALSE(p1.accepted());
  QPolynomial expect(sys.nvars());
  expect.addTerm(mono({-1, 1, 0}), -rfq(1));
  REQUIRE((p1.closures[2].value - expect).isZero());
}

TEST_CASE("case 2 composed table for the weighted extension") {
  CompiledAlgebra alg = compileFixture("ex2_4.qalg");
  const RewriteSystem& sys = alg.sys;
  QPolynomial c = xinnerDerivationSolve(alg, 1).witness->c;
  RationalFunction qm1inv = (rfq(1) - one()).inverse();
  for (int n = -2; n <= 2; ++n)
    for (int m = -2; m <= 2; ++m) {
      Thm32Report rep = thm32Case2(alg, mono({n, 0, 0}), m, c);
      INFO("n=" << n << " m=" << m);
      REQUIRE(rep.accepted());
      QPolynomial x(sys.nvars());
      x.addTerm(mono({0, 0, 1}), rfq(n));
      x.addTerm(mono({0, 1, 0}), (rfq(n) - one()) * qm1inv);
      x.addTerm(mono({1, 0, 0}), (rfq(n) - rfq(-m)) * qm1inv);
      x.addTerm(mono({0, 0, 0}), (rfq(n) - one()) * qm1inv);
      REQUIRE((rep.induced->images[2] - x).isZero());
      REQUIRE((rep.induced->images[0] - sys.varPoly(0).scaled(rfq(-m))).isZero());
      REQUIRE((rep.induced->images[1] - sys.varPoly(1)).isZero());
      REQUIRE(thm23Check(alg, *rep.induced).pass);
    }
  // Case 1 with w = y: sigma(x) = qx + z + y + 1.
  Thm32Report c1 = thm32Case1(alg, mono({1, 0, 0}));
  REQUIRE(c1.accepted());
  REQUIRE((c1.induced->images[2] - alg.sys.nf("q*x + z + y + 1")).isZero());
  // P(x) itself is accepted: sigma(x) = x + q^-1 y.
  Thm32Report c2 = thm32Case2(alg, mono({0, 0, 0}), 1, c);
  REQUIRE(c2.accepted());
  REQUIRE((c2.induced->images[2] - alg.sys.nf("x + q^-1*y")).isZero());
}

TEST_CASE("inducing certificate: identity, true pairs, and order of the pair") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  const RewriteSystem& sys = weyl.sys;
  REQUIRE(verifyInducing(weyl, sys.one(), sys.one(), identityAutomorphism(weyl)));
  QPolynomial theta = sys.nf("x*y - y*x");
  Automorphism s1;
  s1.images = {sys.varPoly(0).scaled(rfq(-1)), sys.varPoly(1).scaled(rfq(1))};
  // (a, b) = (theta, 1) certifies right conjugation by theta: x -> qx.
  REQUIRE(verifyInducing(weyl, theta, sys.one(), s1));
  REQUIRE_FALSE(verifyInducing(weyl, sys.one(), theta, s1));
  // Swapping the pair certifies the inverse automorphism.
  Automorphism sInv;
  sInv.images = {sys.varPoly(0).scaled(rfq(1)), sys.varPoly(1).scaled(rfq(-1))};
  REQUIRE(verifyInducing(weyl, sys.one(), theta, sInv));
  for (int n = 1; n <= 3; ++n) {
    Automorphism sn;
    sn.images = {sys.varPoly(0).scaled(rfq(-n)), sys.varPoly(1).scaled(rfq(n))};
    REQUIRE(verifyInducing(weyl, sys.pow(theta, n), sys.one(), sn));
  }
  // y alone does not induce x -> qx, y -> q^-1 y.
  REQUIRE_FALSE(verifyInducing(weyl, sys.one(), sys.varPoly(0), s1));
  REQUIRE_FALSE(verifyInducing(weyl, sys.varPoly(0), sys.one(), s1));
  REQUIRE_THROWS_AS(verifyInducing(weyl, sys.zero(), sys.one(), s1), QalgError);
}

TEST_CASE("inducing pairs materialize accepted candidates") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  QPolynomial c = weylWitness(weyl);
  for (int n = -2; n <= 2; ++n) {
    Thm32Report rep = thm32Case2(weyl, mono({n, 0}), n, c);
    REQUIRE(rep.accepted());
    auto [a, b] = inducingPair(weyl, c, n, mono({n, 0}));
    INFO("n=" << n);
    bool aPoly = qalg::detail::isPolynomial(a);
    bool bPoly = qalg::detail::isPolynomial(b);
    REQUIRE(aPoly);
    REQUIRE(bPoly);
    REQUIRE(verifyInducing(weyl, a, b, *rep.induced));
  }
  CompiledAlgebra heis = compileFixture("ex4_4.qalg");
  QPolynomial ch = heisWitness(heis);
  for (int m : {-2, -1, 1, 2}) {
    Thm32Report rep = thm32Case2(heis, mono({m, 1, 0}), m, ch);
    REQUIRE(rep.accepted());
    auto [a, b] = inducingPair(heis, ch, m, mono({m, 1, 0}));
    REQUIRE(verifyInducing(heis, a, b, *rep.induced));
  }
}

TEST_CASE("the Weyl landmark identity holds with the corrected factor") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  QPolynomial c = weylWitness(weyl);
  QPolynomial v = weylPzIdentity(weyl, c);
  // Common value q*y*x + q(q-1)^-1.
  QPolynomial expect(weyl.sys.nvars());
  expect.addTerm(mono({1, 1}), rfq(1));
  expect.addTerm(mono({0, 0}), rfq(1) / (rfq(1) - one()));
  REQUIRE((v - expect).isZero());
  // Specialize q -> 2: every coefficient agrees with the rational evaluation.
  for (const auto& [m, coef] : v.terms()) {
    (void)m;
    REQUIRE_NOTHROW(coef.eval(mpq_class(2)));
  }
  mpq_class lead = v.terms().rbegin()->second.eval(mpq_class(2));
  REQUIRE(lead == mpq_class(2));
  // A wrong witness trips the identity.
  QPolynomial fake(weyl.sys.nvars());
  fake.addTerm(mono({-1, 0}), one());
  try {
    weylPzIdentity(weyl, fake);
    FAIL("expected IdentityFails");
  } catch (const QalgError& e) {
    REQUIRE(e.code() == ErrorCode::IdentityFails);
  }
}

TEST_CASE("the bimodule coefficient identity at low degrees") {
  CompiledAlgebra weyl = compileFixture("ex4_1_weyl.qalg");
  QPolynomial b(weyl.sys.nvars());
  b.addTerm(mono({1, 0}), one());
  for (long n = 1; n <= 3; ++n) {
    Prop31Identity id = prop31Coefficient(weyl, n, b, 0);
    INFO("n=" << n);
    REQUIRE(id.match);
    REQUIRE(id.factor == q_int(static_cast<int>(n), QDir::Descending));
  }
  // Hand-expanded n = 2 value for b = y: (q^2 - q) y^2 - (q + 1).
  Prop31Identity two = prop31Coefficient(weyl, 2, b, 0);
  QPolynomial expect(weyl.sys.nvars());
  expect.addTerm(mono({2, 0}), rfq(2) - rfq(1));
  expect.addTerm(mono({0, 0}), -(rfq(1) + one()));
  REQUIRE((two.engineCoefficient - expect).isZero());
  // The ascending variant of the factor does not satisfy the identity.
  RewriteSystem torus = qalg::detail::oreTorus(weyl);
  QPolynomial s = torus.varPoly(0);
  QPolynomial tn1 = qalg::detail::tauPowApply(weyl, s, 1);
  QPolynomial wrong = torus.mul(qalg::detail::tauPowApply(weyl, s, 2), b) - torus.mul(b, tn1) -
                      qalg::detail::deltaExt(weyl, torus, tn1).scaled(q_int(2, QDir::Ascending));
  REQUIRE_FALSE((two.engineCoefficient - wrong).isZero());
  // Laurent b still works, and a nontrivial skew scalar does too.
  QPolynomial bl(weyl.sys.nvars());
  bl.addTerm(mono({-2, 0}), rfq(1) + one());
  bl.addTerm(mono({1, 0}), one());
  for (long n = 1; n <= 3; ++n) REQUIRE(prop31Coefficient(weyl, n, bl, 0).match);
  CompiledAlgebra heis = compileFixture("ex4_4.qalg");
  QPolynomial bz(heis.sys.nvars());
  bz.addTerm(mono({1, -1, 0}), one());
  bz.addTerm(mono({0, 1, 0}), one());
  for (long n = 1; n <= 3; ++n) {
    Prop31Identity id = prop31Coefficient(heis, n, bz, 0);
    INFO("n=" << n);
    REQUIRE(id.match);
  }
  REQUIRE(prop31Coefficient(heis, 2, bz, 0).factor == one() + rfq(-2));
}

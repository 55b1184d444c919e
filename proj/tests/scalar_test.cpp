#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qalg/scalar.hpp"

using qalg::QalgError;
using qalg::QDir;
using qalg::RationalFunction;
using qalg::ZPoly;

namespace {

const RationalFunction kQ = RationalFunction::q();
const RationalFunction kOne(1);

RationalFunction oneMinusQ() { return kOne - kQ; }

RationalFunction randomRF(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> deg(0, 3);
  auto poly = [&] {
    int d = deg(rng);
    std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = coeff(rng);
    return ZPoly(std::move(c));
  };
  ZPoly num = poly();
  ZPoly den;
  do {
    den = poly();
  } while (den.isZero());
  return RationalFunction(std::move(num), std::move(den));
}

}  // namespace

TEST_CASE("inverse law: (1-q)^-1 * (1-q) = 1", "[scalar]") {
  REQUIRE(oneMinusQ().inverse() * oneMinusQ() == kOne);
}

TEST_CASE("common denominator: q/(1-q) + 1/(1-q) = (q+1)/(1-q)", "[scalar]") {
  RationalFunction lhs = kQ / oneMinusQ() + kOne / oneMinusQ();
  RationalFunction rhs = (kQ + kOne) / oneMinusQ();
  REQUIRE(lhs == rhs);
}

TEST_CASE("round-trip: (1-q^2)^-1 * q * (1-q^2) = q", "[scalar]") {
  RationalFunction oneMinusQ2 = kOne - kQ * kQ;
  RationalFunction mid = oneMinusQ2.inverse() * kQ;
  REQUIRE(mid * oneMinusQ2 == kQ);
  // Independent big-rational check at q = 2, 3, 5 (no poles there).
  for (long pt : {2L, 3L, 5L}) {
    mpq_class x(pt);
    mpq_class expect = (mpq_class(1) / (1 - x * x)) * x * (1 - x * x);
    REQUIRE(mid.eval(x) * oneMinusQ2.eval(x) == expect);
  }
}

TEST_CASE("division by zero is rejected", "[scalar]") {
  RationalFunction zero;
  REQUIRE_THROWS_AS(kOne / zero, QalgError);
  REQUIRE_THROWS_AS(zero.inverse(), QalgError);
}

TEST_CASE("q_int values", "[scalar]") {
  REQUIRE(qalg::q_int(1, QDir::Ascending) == kOne);
  RationalFunction expect3 = kOne + kQ + kQ * kQ;
  REQUIRE(qalg::q_int(3, QDir::Ascending) == expect3);
  REQUIRE(qalg::q_int(3, QDir::Descending) == kOne + RationalFunction::q(-1) + RationalFunction::q(-2));
  // q_int(n, ascending) * (q - 1) = q^n - 1 for n in 1..6.
  for (int n = 1; n <= 6; ++n) {
    REQUIRE(qalg::q_int(n, QDir::Ascending) * (kQ - kOne) == RationalFunction::q(n) - kOne);
  }
  // Descending version is the ascending one scaled by q^-(n-1).
  for (int n = 1; n <= 6; ++n) {
    REQUIRE(qalg::q_int(n, QDir::Descending) ==
            qalg::q_int(n, QDir::Ascending) * RationalFunction::q(-(n - 1)));
  }
  REQUIRE_THROWS_AS(qalg::q_int(0, QDir::Ascending), QalgError);
  REQUIRE_THROWS_AS(qalg::q_int(-2, QDir::Descending), QalgError);
}

TEST_CASE("canonical form uniqueness: a/b == c/d iff ad == cb", "[scalar]") {
  std::mt19937 rng(20240915);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> deg(0, 3);
  auto poly = [&] {
    int d = deg(rng);
    std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = coeff(rng);
    return ZPoly(std::move(c));
  };
  int checked = 0;
  while (checked < 200) {
    ZPoly a = poly(), b = poly(), c = poly(), d = poly();
    if (b.isZero() || d.isZero()) continue;
    ++checked;
    bool crossEqual = (a * d == c * b);
    bool canonEqual = (RationalFunction(a, b) == RationalFunction(c, d));
    REQUIRE(crossEqual == canonEqual);
  }
}

TEST_CASE("field axioms on randomized values", "[scalar]") {
  std::mt19937 rng(7);
  for (int i = 0; i < 60; ++i) {
    RationalFunction a = randomRF(rng), b = randomRF(rng), c = randomRF(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(a - a == RationalFunction());
    if (!a.isZero()) REQUIRE(a * a.inverse() == kOne);
    // Evaluation homomorphism cross-check away from poles.
    for (long pt : {2L, 3L, 5L}) {
      mpq_class x(pt);
      bool pole = false;
      mpq_class va, vb;
      try {
        va = a.eval(x);
        vb = b.eval(x);
      } catch (const QalgError&) {
        pole = true;
      }
      if (pole) continue;
      REQUIRE((a + b).eval(x) == va + vb);
      REQUIRE((a * b).eval(x) == va * vb);
    }
  }
}

TEST_CASE("q has infinite multiplicative order", "[scalar]") {
  for (int k = -6; k <= 6; ++k) {
    bool isIdentity = (kQ.pow(k) == kOne);
    REQUIRE(isIdentity == (k == 0));
  }
  REQUIRE(kQ.torsionOrder() == std::nullopt);
  REQUIRE(kOne.torsionOrder() == 1);
  REQUIRE((-kOne).torsionOrder() == 2);
  REQUIRE((kQ + kOne).torsionOrder() == std::nullopt);
}

TEST_CASE("asQPower recognizes exactly the powers of q", "[scalar]") {
  for (int k = -5; k <= 5; ++k) {
    auto p = RationalFunction::q(k).asQPower();
    REQUIRE(p.has_value());
    REQUIRE(*p == k);
  }
  REQUIRE(!(kQ + kOne).asQPower().has_value());
  REQUIRE(!RationalFunction(2).asQPower().has_value());
  REQUIRE(!(RationalFunction(2) * kQ).asQPower().has_value());
}

TEST_CASE("canonical printing", "[scalar]") {
  REQUIRE(RationalFunction().str() == "0");
  REQUIRE(kOne.str() == "1");
  REQUIRE((kQ * kQ + kQ + kOne).str() == "q^2 + q + 1");
  REQUIRE(oneMinusQ().str() == "-q + 1");
  // 1/(1-q) canonicalizes to -1/(q-1): denominator leading coefficient positive.
  REQUIRE(oneMinusQ().inverse().str() == "-1/(q - 1)");
  REQUIRE(((kQ + kOne) / (kQ - kOne)).str() == "(q + 1)/(q - 1)");
  REQUIRE(RationalFunction::q(-2).str() == "1/q^2");
  REQUIRE(RationalFunction::fromRational(2, 3).str() == "2/3");
  REQUIRE((RationalFunction(-2) * kQ).str() == "-2*q");
}

TEST_CASE("canonical invariants: coprime, positive-leading denominator", "[scalar]") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    RationalFunction a = randomRF(rng);
    if (a.isZero()) {
      REQUIRE(a.den().isOne());
      continue;
    }
    REQUIRE(a.den().leading() > 0);
    REQUIRE(ZPoly::gcd(a.num(), a.den()).isOne());
  }
}

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qalg/linalg.hpp"
#include "qalg/presentation.hpp"

namespace qalg {

struct CheckResult {
  std::string check;
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.check == name) return &c;
    return nullptr;
  }
};

namespace detail {

// Directed bracket [x_a, x_b] read off the declared table, using
// [a,b] = -eps(g_a, g_b)[b,a] when only the reverse is declared.
inline QPolynomial bracketDirected(const AlgebraPresentation& p, int a, int b) {
  for (const auto& br : p.brackets)
    if (br.a == a && br.b == b) return br.value;
  for (const auto& br : p.brackets)
    if (br.a == b && br.b == a)
      return br.value.scaled(-epsilonScalar(p.epsilonE, p.grades[static_cast<size_t>(a)],
                                            p.grades[static_cast<size_t>(b)]));
  return QPolynomial(p.nvars());
}

inline std::optional<int> linearGenIndex(const QMonomial& m) {
  int found = -1;
  for (size_t v = 0; v < m.nvars(); ++v) {
    if (m.e[v] == 0) continue;
    if (m.e[v] != 1 || found >= 0) return std::nullopt;
    found = static_cast<int>(v);
  }
  if (found < 0) return std::nullopt;
  return found;
}

// [x_a, p] for a linear combination p of generators, by bilinearity.
inline std::optional<QPolynomial> bracketWithPoly(const AlgebraPresentation& p, int a,
                                                  const QPolynomial& poly) {
  QPolynomial out(p.nvars());
  for (const auto& [m, c] : poly.terms()) {
    auto g = linearGenIndex(m);
    if (!g) return std::nullopt;
    out = out + bracketDirected(p, a, *g).scaled(c);
  }
  return out;
}

// [p, x_c] for a linear combination p of generators.
inline std::optional<QPolynomial> bracketPolyWith(const AlgebraPresentation& p,
                                                  const QPolynomial& poly, int c) {
  QPolynomial out(p.nvars());
  for (const auto& [m, co] : poly.terms()) {
    auto g = linearGenIndex(m);
    if (!g) return std::nullopt;
    out = out + bracketDirected(p, *g, c).scaled(co);
  }
  return out;
}

inline std::vector<long> gradeSum(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace detail

inline ValidationReport validatePresentation(const AlgebraPresentation& p) {
  ValidationReport rep;
  auto add = [&rep](const std::string& check, bool pass, const std::string& detail) {
    rep.checks.push_back({check, pass, detail});
  };
  const std::vector<std::string> names = p.genNames();
  const size_t n = p.nvars();

  {
    bool ok = true;
    std::string detail = std::to_string(n) + " generator(s)";
    std::set<std::string> seen;
    for (const auto& g : p.gens) {
      if (!seen.insert(g.name).second) {
        ok = false;
        detail = "duplicate generator '" + g.name + "'";
        break;
      }
      if (g.deg < 1) {
        ok = false;
        detail = "generator '" + g.name + "' has degree " + std::to_string(g.deg) + " < 1";
        break;
      }
    }
    add("generators", ok, detail);
    if (!ok) return rep;
  }

  std::optional<CompiledAlgebra> alg;
  try {
    alg.emplace(compilePresentation(p));
    add("structure", true, std::string("kind ") + kindName(p.kind));
  } catch (const QalgError& e) {
    add("structure", false, e.what());
    return rep;
  }
  const RewriteSystem& sys = alg->sys;

  {
    bool ok = true;
    std::string detail;
    for (const auto& r : p.rules) {
      if (r.q.isZero()) {
        ok = false;
        detail = "commutation scalar for " + names[static_cast<size_t>(r.hi)] + "," +
                 names[static_cast<size_t>(r.lo)] + " is zero";
        break;
      }
    }
    if (ok) {
      detail = "q_ii = 1 and q_ij*q_ji = 1 hold on the derived matrix";
      for (const auto& r : p.rules) {
        RationalFunction prod = sys.qScalar(r.hi, r.lo) * r.q.inverse();
        if (!prod.isOne()) {
          ok = false;
          detail = "derived matrix disagrees with the rule for " +
                   names[static_cast<size_t>(r.hi)] + "," + names[static_cast<size_t>(r.lo)];
          break;
        }
      }
    }
    add("commutation-matrix", ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "every lower-order term has strictly smaller degree";
    for (const auto& r : p.rules) {
      int bound = p.gens[static_cast<size_t>(r.hi)].deg + p.gens[static_cast<size_t>(r.lo)].deg;
      for (const auto& [m, c] : r.tail.terms()) {
        (void)c;
        int deg = 0;
        for (size_t v = 0; v < n; ++v) deg += m.e[v] * p.gens[v].deg;
        if (deg >= bound) {
          ok = false;
          detail = "term " + detail::monoText(m, names) + " of the " +
                   names[static_cast<size_t>(r.hi)] + "*" + names[static_cast<size_t>(r.lo)] +
                   " relation has degree " + std::to_string(deg) + ", not below " +
                   std::to_string(bound);
          break;
        }
      }
      if (!ok) break;
    }
    add("termination-certificate", ok, detail);
  }

  try {
    ConfluenceReport cr = sys.confluenceCheck();
    if (cr.pass) {
      add("confluence", true, "all overlap ambiguities resolve");
    } else {
      const auto& f = cr.failures.front();
      add("confluence", false,
          "overlap " + names[static_cast<size_t>(f.k)] + "*" + names[static_cast<size_t>(f.j)] +
              "*" + names[static_cast<size_t>(f.i)] + " does not resolve");
    }
  } catch (const QalgError& e) {
    add("confluence", false, e.what());
  }

  if (p.kind == PresentationKind::OreExtension && alg->ore) {
    const OreSplit& ore = *alg->ore;
    {
      std::string detail = "x = " + names[static_cast<size_t>(ore.var)] + "; tau = (";
      for (int i = 0; i < ore.var; ++i)
        detail += (i ? ", " : "") + names[static_cast<size_t>(i)] + " -> (" +
                  ore.tau[static_cast<size_t>(i)].str() + ")*" + names[static_cast<size_t>(i)];
      detail += ")";
      add("ore-structure", true, detail);
    }
    {
      bool ok = true;
      std::string detail = "delta respects every base relation";
      for (int j = 1; j < ore.var && ok; ++j) {
        for (int i = 0; i < j; ++i) {
          // delta applied to x_j*x_i = q_ji*x_i*x_j via the twisted Leibniz rule.
          QPolynomial xi = sys.varPoly(i), xj = sys.varPoly(j);
          QPolynomial lhs = sys.mul(ore.delta[static_cast<size_t>(j)], xi) +
                            sys.mul(xj, ore.delta[static_cast<size_t>(i)])
                                .scaled(ore.tau[static_cast<size_t>(j)]);
          QPolynomial rhs = (sys.mul(ore.delta[static_cast<size_t>(i)], xj) +
                             sys.mul(xi, ore.delta[static_cast<size_t>(j)])
                                 .scaled(ore.tau[static_cast<size_t>(i)]))
                                .scaled(sys.qScalar(j, i));
          if (!(sys.nf(lhs) - sys.nf(rhs)).isZero()) {
            ok = false;
            detail = "Leibniz rule fails on the " + names[static_cast<size_t>(j)] + "," +
                     names[static_cast<size_t>(i)] + " relation";
            break;
          }
        }
      }
      add("ore-leibniz", ok, detail);
    }
    {
      if (ore.skew) {
        bool ok = true;
        std::string detail = "delta tau = s tau delta with s = " + ore.skew->str();
        for (int i = 0; i < ore.var; ++i) {
          QPolynomial lhs =
              ore.delta[static_cast<size_t>(i)].scaled(ore.tau[static_cast<size_t>(i)]);
          QPolynomial rhs = alg->tauApply(ore.delta[static_cast<size_t>(i)]).scaled(*ore.skew);
          if (!(lhs - rhs).isZero()) {
            ok = false;
            detail = "skew identity fails on " + names[static_cast<size_t>(i)];
            break;
          }
        }
        add("ore-skew-scalar", ok, detail);
      } else {
        add("ore-skew-scalar", true, "no uniform skew scalar; skew-gated results are disabled");
      }
    }
  }

  if (p.kind == PresentationKind::ColorEnveloping) {
    const size_t k = p.gradeRank();
    {
      bool ok = true;
      std::string detail = "E is antisymmetric and brackets satisfy [a,b] = -eps(a,b)[b,a]";
      for (size_t i = 0; i < k && ok; ++i)
        for (size_t j = 0; j < k; ++j)
          if (p.epsilonE[i][j] != -p.epsilonE[j][i]) {
            ok = false;
            detail = "E[" + std::to_string(i) + "][" + std::to_string(j) + "] != -E[" +
                     std::to_string(j) + "][" + std::to_string(i) + "]";
            break;
          }
      if (ok) {
        for (const auto& br : p.brackets) {
          QPolynomial reverse(n);
          bool haveReverse = false;
          for (const auto& other : p.brackets)
            if (other.a == br.b && other.b == br.a && &other != &br) {
              reverse = other.value;
              haveReverse = true;
            }
          if (br.a == br.b) {
            reverse = br.value;
            haveReverse = true;
          }
          if (!haveReverse) continue;
          RationalFunction eps = epsilonScalar(p.epsilonE, p.grades[static_cast<size_t>(br.a)],
                                               p.grades[static_cast<size_t>(br.b)]);
          if (!(br.value + reverse.scaled(eps)).isZero()) {
            ok = false;
            detail = "brackets for " + names[static_cast<size_t>(br.a)] + "," +
                     names[static_cast<size_t>(br.b)] + " violate eps-antisymmetry";
            break;
          }
        }
      }
      add("color-antisymmetry", ok, detail);
    }
    {
      bool ok = true;
      std::string detail = "every bracket lands in the product grade";
      for (const auto& br : p.brackets) {
        std::vector<long> want = detail::gradeSum(p.grades[static_cast<size_t>(br.a)],
                                                  p.grades[static_cast<size_t>(br.b)]);
        for (const auto& [m, c] : br.value.terms()) {
          (void)c;
          auto g = detail::linearGenIndex(m);
          if (!g) {
            ok = false;
            detail = "bracket " + names[static_cast<size_t>(br.a)] + "," +
                     names[static_cast<size_t>(br.b)] + " is not a linear combination of generators";
            break;
          }
          if (p.grades[static_cast<size_t>(*g)] != want) {
            ok = false;
            detail = "bracket " + names[static_cast<size_t>(br.a)] + "," +
                     names[static_cast<size_t>(br.b)] + " contains " +
                     names[static_cast<size_t>(*g)] + ", whose grade differs from the product grade";
            break;
          }
        }
        if (!ok) break;
      }
      add("color-grade-compatibility", ok, detail);
    }
    {
      bool ok = true;
      std::string detail = "eps-Jacobi holds on all generator triples";
      for (int a = 0; a < static_cast<int>(n) && ok; ++a)
        for (int b = 0; b < static_cast<int>(n) && ok; ++b)
          for (int c = 0; c < static_cast<int>(n); ++c) {
            auto lhs = detail::bracketPolyWith(p, detail::bracketDirected(p, a, b), c);
            auto t1 = detail::bracketWithPoly(p, a, detail::bracketDirected(p, b, c));
            auto t2 = detail::bracketWithPoly(p, b, detail::bracketDirected(p, a, c));
            if (!lhs || !t1 || !t2) {
              ok = false;
              detail = "bracket values are not linear combinations of generators";
              break;
            }
            RationalFunction eps = epsilonScalar(p.epsilonE, p.grades[static_cast<size_t>(a)],
                                                 p.grades[static_cast<size_t>(b)]);
            if (!(*lhs - (*t1 - t2->scaled(eps))).isZero()) {
              ok = false;
              detail = "eps-Jacobi fails on the triple (" + names[static_cast<size_t>(a)] + ", " +
                       names[static_cast<size_t>(b)] + ", " + names[static_cast<size_t>(c)] + ")";
              break;
            }
          }
      add("color-jacobi", ok, detail);
    }
    {
      std::vector<std::vector<mpz_class>> cols;
      for (size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> col(k);
        for (size_t j = 0; j < k; ++j) col[j] = p.grades[i][j];
        cols.push_back(std::move(col));
      }
      bool generated = latticeCoversZk(cols, k);
      std::vector<std::vector<mpz_class>> basis = latticeBasis(cols);
      const size_t r = basis.size();
      // Pairing matrix M = B^T E B on the subgroup generated by the grades;
      // the grading is faithful iff M has full rational rank.
      std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(r, 0));
      for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) {
          mpz_class acc = 0;
          for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) acc += basis[a][i] * p.epsilonE[i][j] * basis[b][j];
          m[a][b] = acc;
        }
      bool faithful = rationalRank(m) == r;
      bool ok = generated && faithful;
      std::string detail;
      if (ok)
        detail = "grades span Z^" + std::to_string(k) + " and the pairing is nondegenerate";
      else if (!generated)
        detail = "generator grades do not span Z^" + std::to_string(k);
      else
        detail = "the pairing is degenerate on the subgroup generated by the grades";
      add("proper-grading", ok, detail);
    }
  }

  return rep;
}

}  // namespace qalg

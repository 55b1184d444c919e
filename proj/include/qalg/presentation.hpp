#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qalg/rewrite.hpp"

namespace qalg {

enum class PresentationKind { QuantumSpace, OreExtension, ColorEnveloping };

inline const char* kindName(PresentationKind k) {
  switch (k) {
    case PresentationKind::QuantumSpace:
      return "QuantumSpace";
    case PresentationKind::OreExtension:
      return "OreExtension";
    case PresentationKind::ColorEnveloping:
      return "ColorEnveloping";
  }
  return "?";
}

struct GenDecl {
  std::string name;
  int deg = 1;
};

// A declared bracket [gen a, gen b] = linear combination of generators.
struct BracketDecl {
  int a = 0, b = 0;
  QPolynomial value;
};

struct AlgebraPresentation {
  std::string name;
  PresentationKind kind = PresentationKind::QuantumSpace;
  std::vector<GenDecl> gens;
  std::vector<RuleSpec> rules;              // solvable rules; derived for the color kind
  std::vector<std::vector<long>> epsilonE;  // color: k x k integer exponent matrix
  std::vector<std::vector<long>> grades;    // color: one length-k vector per generator
  std::vector<BracketDecl> brackets;        // color: brackets as declared
  std::set<int> inverts;
  int oreVar = -1;  // OreExtension: index of the extension variable

  size_t nvars() const { return gens.size(); }
  size_t gradeRank() const { return epsilonE.size(); }

  std::vector<std::string> genNames() const {
    std::vector<std::string> out;
    for (const auto& g : gens) out.push_back(g.name);
    return out;
  }
  std::vector<int> genDegs() const {
    std::vector<int> out;
    for (const auto& g : gens) out.push_back(g.deg);
    return out;
  }
  std::optional<int> indexOf(const std::string& n) const {
    for (size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == n) return static_cast<int>(i);
    return std::nullopt;
  }
};

// epsilon(g, h) = q^(g^T E h) for grade vectors g, h.
inline RationalFunction epsilonScalar(const std::vector<std::vector<long>>& E,
                                      const std::vector<long>& g, const std::vector<long>& h) {
  long e = 0;
  for (size_t i = 0; i < E.size(); ++i)
    for (size_t j = 0; j < E.size(); ++j) e += g[i] * E[i][j] * h[j];
  return RationalFunction::q(static_cast<int>(e));
}

namespace detail {

// Minimal free-algebra layer used only to interpret relation statements:
// a polynomial keyed by words in the generator indices.
using FreeWord = std::vector<int>;
using FreePoly = std::map<FreeWord, RationalFunction>;

inline void freeAdd(FreePoly& p, const FreeWord& w, const RationalFunction& c) {
  if (c.isZero()) return;
  auto it = p.find(w);
  if (it == p.end()) {
    p.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.isZero()) p.erase(it);
}

inline FreePoly freeMul(const FreePoly& a, const FreePoly& b) {
  FreePoly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      FreeWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      freeAdd(out, w, ca * cb);
    }
  return out;
}

inline std::optional<RationalFunction> freeAsScalar(const FreePoly& p) {
  if (p.empty()) return RationalFunction();
  if (p.size() == 1 && p.begin()->first.empty()) return p.begin()->second;
  return std::nullopt;
}

inline FreePoly freeEval(const Expr& e, const std::map<std::string, int>& gens) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return e.value.isZero() ? FreePoly{} : FreePoly{{{}, e.value}};
    case Expr::Kind::Gen: {
      if (e.name == "q") return {{{}, RationalFunction::q()}};
      auto it = gens.find(e.name);
      if (it == gens.end()) fail(ErrorCode::UnknownSymbol, "unknown generator '" + e.name + "'");
      return {{{it->second}, RationalFunction(1)}};
    }
    case Expr::Kind::Add: {
      FreePoly out = freeEval(*e.lhs, gens);
      for (const auto& [w, c] : freeEval(*e.rhs, gens)) freeAdd(out, w, c);
      return out;
    }
    case Expr::Kind::Sub: {
      FreePoly out = freeEval(*e.lhs, gens);
      for (const auto& [w, c] : freeEval(*e.rhs, gens)) freeAdd(out, w, -c);
      return out;
    }
    case Expr::Kind::Neg: {
      FreePoly out;
      for (const auto& [w, c] : freeEval(*e.lhs, gens)) out.emplace(w, -c);
      return out;
    }
    case Expr::Kind::Mul:
      return freeMul(freeEval(*e.lhs, gens), freeEval(*e.rhs, gens));
    case Expr::Kind::Div: {
      auto d = freeAsScalar(freeEval(*e.rhs, gens));
      if (!d) fail(ErrorCode::InvalidArgument, "division by a non-scalar in a relation");
      if (d->isZero()) fail(ErrorCode::DivisionByZero, "division by zero in a relation");
      FreePoly out;
      RationalFunction inv = d->inverse();
      for (const auto& [w, c] : freeEval(*e.lhs, gens)) out.emplace(w, c * inv);
      return out;
    }
    case Expr::Kind::Pow: {
      FreePoly base = freeEval(*e.lhs, gens);
      if (e.exponent < 0) {
        auto s = freeAsScalar(base);
        if (!s || s->isZero())
          fail(ErrorCode::InvalidArgument, "negative powers in relations apply to scalars only");
        return {{{}, s->pow(e.exponent)}};
      }
      FreePoly out{{{}, RationalFunction(1)}};
      for (int i = 0; i < e.exponent; ++i) out = freeMul(out, base);
      return out;
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt expression node");
}

inline QMonomial wordMonomial(const FreeWord& w, size_t nvars) {
  QMonomial m = QMonomial::one(nvars);
  for (int v : w) m.e[static_cast<size_t>(v)] += 1;
  return m;
}

inline std::string wordText(const FreeWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (int v : w) {
    if (!out.empty()) out += "*";
    out += names[static_cast<size_t>(v)];
  }
  return out;
}

// Bring `lhs - rhs = 0` into the solvable form x_hi*x_lo = q*x_lo*x_hi + tail.
inline RuleSpec extractRule(FreePoly rel, size_t nvars, const std::vector<std::string>& names) {
  int hi = -1, lo = -1;
  RationalFunction c1;
  for (const auto& [w, c] : rel) {
    if (w.size() == 2 && w[0] > w[1]) {
      if (hi >= 0)
        fail(ErrorCode::InvalidArgument, "relation involves more than one disordered pair");
      hi = w[0];
      lo = w[1];
      c1 = c;
    } else if (!std::is_sorted(w.begin(), w.end())) {
      fail(ErrorCode::InvalidArgument,
           "relation term '" + wordText(w, names) + "' is neither the disordered pair nor an ordered monomial");
    }
  }
  if (hi < 0)
    fail(ErrorCode::InvalidArgument, "relation does not contain a disordered generator pair");
  rel.erase(FreeWord{hi, lo});
  RationalFunction c2;
  if (auto it = rel.find(FreeWord{lo, hi}); it != rel.end()) {
    c2 = it->second;
    rel.erase(it);
  }
  RationalFunction qrule = -(c2 / c1);
  if (qrule.isZero())
    fail(ErrorCode::InvalidArgument,
         "relation for " + names[hi] + "," + names[lo] + " has a zero commutation scalar");
  RuleSpec out;
  out.hi = hi;
  out.lo = lo;
  out.q = qrule;
  out.tail = QPolynomial(nvars);
  RationalFunction scale = -(c1.inverse());
  for (const auto& [w, c] : rel) out.tail.addTerm(wordMonomial(w, nvars), c * scale);
  return out;
}

[[noreturn]] inline void failAt(ErrorCode code, const Token& t, const std::string& msg) {
  fail(code, "line " + std::to_string(t.line) + " col " + std::to_string(t.col) + ": " + msg);
}

}  // namespace detail

inline AlgebraPresentation parsePresentation(const std::string& text) {
  Lexer lx(text);
  if (lx.peek().kind != Token::Kind::Ident || lx.peek().text != "algebra")
    lx.error("expected 'algebra'");
  lx.next();
  AlgebraPresentation p;
  p.name = lx.expectIdent().text;
  lx.expectSym('{');

  std::map<std::string, int> genIdx;
  struct RawRel {
    Expr::Ptr lhs, rhs;
    Token at;
  };
  std::vector<RawRel> rels;
  struct RawBracket {
    Token a, b;
    Expr::Ptr value;
  };
  std::vector<RawBracket> rawBrackets;
  std::map<std::string, std::vector<long>> rawGrades;
  std::vector<Token> rawInverts;
  bool sawEpsilon = false;

  auto parseSignedInt = [&lx]() -> long {
    bool neg = false;
    if (lx.peek().isSym('-')) {
      lx.next();
      neg = true;
    }
    long v = std::stol(lx.expectInt().text);
    return neg ? -v : v;
  };

  while (true) {
    Token t = lx.peek();
    if (t.isSym('}')) {
      lx.next();
      break;
    }
    if (t.kind != Token::Kind::Ident) lx.error("expected a declaration or '}'");
    if (t.text == "gen") {
      lx.next();
      Token name = lx.expectIdent();
      if (name.text == "q")
        detail::failAt(ErrorCode::SyntaxError, name, "'q' is reserved for the scalar parameter");
      if (genIdx.count(name.text))
        detail::failAt(ErrorCode::DuplicateGenerator, name,
                       "duplicate generator '" + name.text + "'");
      Token degKw = lx.expectIdent();
      if (degKw.text != "deg") detail::failAt(ErrorCode::SyntaxError, degKw, "expected 'deg'");
      int deg = static_cast<int>(std::stol(lx.expectInt().text));
      lx.expectSym(';');
      genIdx[name.text] = static_cast<int>(p.gens.size());
      p.gens.push_back({name.text, deg});
    } else if (t.text == "rel") {
      lx.next();
      Expr::Ptr lhs = parseExprTokens(lx);
      lx.expectSym('=');
      Expr::Ptr rhs = parseExprTokens(lx);
      lx.expectSym(';');
      rels.push_back({std::move(lhs), std::move(rhs), t});
    } else if (t.text == "grade") {
      lx.next();
      Token name = lx.expectIdent();
      if (!genIdx.count(name.text))
        detail::failAt(ErrorCode::UnknownSymbol, name, "unknown generator '" + name.text + "'");
      if (rawGrades.count(name.text))
        detail::failAt(ErrorCode::SyntaxError, name, "duplicate grade for '" + name.text + "'");
      lx.expectSym('=');
      lx.expectSym('(');
      std::vector<long> v;
      v.push_back(parseSignedInt());
      while (lx.peek().isSym(',')) {
        lx.next();
        v.push_back(parseSignedInt());
      }
      lx.expectSym(')');
      lx.expectSym(';');
      rawGrades.emplace(name.text, std::move(v));
    } else if (t.text == "epsilon") {
      lx.next();
      if (sawEpsilon) detail::failAt(ErrorCode::SyntaxError, t, "duplicate epsilon matrix");
      sawEpsilon = true;
      lx.expectSym('[');
      while (true) {
        lx.expectSym('[');
        std::vector<long> row;
        row.push_back(parseSignedInt());
        while (lx.peek().isSym(',')) {
          lx.next();
          row.push_back(parseSignedInt());
        }
        lx.expectSym(']');
        p.epsilonE.push_back(std::move(row));
        if (lx.peek().isSym(',')) {
          lx.next();
          continue;
        }
        break;
      }
      lx.expectSym(']');
      lx.expectSym(';');
      for (const auto& row : p.epsilonE)
        if (row.size() != p.epsilonE.size())
          detail::failAt(ErrorCode::SyntaxError, t, "epsilon matrix must be square");
    } else if (t.text == "bracket") {
      lx.next();
      Token a = lx.expectIdent();
      Token b = lx.expectIdent();
      for (const Token* g : {&a, &b})
        if (!genIdx.count(g->text))
          detail::failAt(ErrorCode::UnknownSymbol, *g, "unknown generator '" + g->text + "'");
      lx.expectSym('=');
      Expr::Ptr value = parseExprTokens(lx);
      lx.expectSym(';');
      rawBrackets.push_back({a, b, std::move(value)});
    } else if (t.text == "invert") {
      lx.next();
      Token name = lx.expectIdent();
      if (!genIdx.count(name.text))
        detail::failAt(ErrorCode::UnknownSymbol, name, "unknown generator '" + name.text + "'");
      lx.expectSym(';');
      rawInverts.push_back(name);
    } else {
      lx.error("unknown declaration '" + t.text + "'");
    }
  }
  if (lx.peek().kind != Token::Kind::End) lx.error("trailing input after presentation");

  for (const Token& t : rawInverts) p.inverts.insert(genIdx.at(t.text));

  const size_t n = p.gens.size();
  const std::vector<std::string> names = p.genNames();
  const bool colorish = sawEpsilon || !rawGrades.empty() || !rawBrackets.empty();

  if (colorish) {
    p.kind = PresentationKind::ColorEnveloping;
    if (!rels.empty())
      detail::failAt(ErrorCode::SyntaxError, rels.front().at,
                     "color presentations derive their relations from brackets; 'rel' is not allowed");
    if (!sawEpsilon)
      fail(ErrorCode::SyntaxError, "color presentation requires an epsilon matrix");
    const size_t k = p.epsilonE.size();
    p.grades.assign(n, {});
    for (size_t i = 0; i < n; ++i) {
      auto it = rawGrades.find(names[i]);
      if (it == rawGrades.end())
        fail(ErrorCode::SyntaxError, "generator '" + names[i] + "' lacks a grade");
      if (it->second.size() != k)
        fail(ErrorCode::SyntaxError,
             "grade of '" + names[i] + "' must have " + std::to_string(k) + " entries");
      p.grades[i] = it->second;
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& rb : rawBrackets) {
      int a = genIdx.at(rb.a.text), b = genIdx.at(rb.b.text);
      if (!seen.insert({a, b}).second)
        detail::failAt(ErrorCode::SyntaxError, rb.a,
                       "duplicate bracket for " + rb.a.text + "," + rb.b.text);
      detail::FreePoly fp = detail::freeEval(*rb.value, genIdx);
      QPolynomial value(n);
      for (const auto& [w, c] : fp) {
        if (w.size() != 1)
          detail::failAt(ErrorCode::SyntaxError, rb.a,
                         "bracket must be a linear combination of generators");
        value.addTerm(detail::wordMonomial(w, n), c);
      }
      p.brackets.push_back({a, b, std::move(value)});
    }
    // Relations x_hi*x_lo = eps(g_hi, g_lo)*x_lo*x_hi + [x_hi, x_lo].
    auto declared = [&](int a, int b) -> const BracketDecl* {
      for (const auto& br : p.brackets)
        if (br.a == a && br.b == b) return &br;
      return nullptr;
    };
    for (int hi = 1; hi < static_cast<int>(n); ++hi) {
      for (int lo = 0; lo < hi; ++lo) {
        RuleSpec r;
        r.hi = hi;
        r.lo = lo;
        r.q = epsilonScalar(p.epsilonE, p.grades[hi], p.grades[lo]);
        if (const BracketDecl* d = declared(hi, lo))
          r.tail = d->value;
        else if (const BracketDecl* d2 = declared(lo, hi))
          r.tail = d2->value.scaled(-r.q);
        else
          r.tail = QPolynomial(n);
        p.rules.push_back(std::move(r));
      }
    }
    return p;
  }

  // Quantum-space / Ore route: interpret each rel statement.
  std::set<std::pair<int, int>> seenPairs;
  for (const auto& rr : rels) {
    detail::FreePoly rel;
    try {
      rel = detail::freeEval(*rr.lhs, genIdx);
      for (const auto& [w, c] : detail::freeEval(*rr.rhs, genIdx)) detail::freeAdd(rel, w, -c);
      RuleSpec r = detail::extractRule(std::move(rel), n, names);
      if (!seenPairs.insert({r.hi, r.lo}).second)
        fail(ErrorCode::InvalidArgument,
             "duplicate relation for the pair " + names[r.hi] + "," + names[r.lo]);
      p.rules.push_back(std::move(r));
    } catch (const QalgError& e) {
      if (e.code() == ErrorCode::UnknownSymbol || e.code() == ErrorCode::DivisionByZero) throw;
      detail::failAt(ErrorCode::SyntaxError, rr.at, e.what());
    }
  }
  std::set<int> carriers;
  for (const auto& r : p.rules)
    if (!r.tail.isZero()) carriers.insert(r.hi);
  if (carriers.empty()) {
    p.kind = PresentationKind::QuantumSpace;
    return p;
  }
  if (carriers.size() > 1)
    fail(ErrorCode::SyntaxError,
         "lower-order terms appear on more than one generator; the presentation is not an "
         "extension of a quantum space by one variable");
  p.kind = PresentationKind::OreExtension;
  p.oreVar = *carriers.begin();
  if (p.oreVar != static_cast<int>(n) - 1)
    fail(ErrorCode::SyntaxError, "the extension variable '" + names[p.oreVar] +
                                     "' must be declared after the base generators");
  for (const auto& r : p.rules) {
    if (r.hi != p.oreVar || r.tail.isZero()) continue;
    for (const auto& [m, c] : r.tail.terms()) {
      (void)c;
      if (m.e[static_cast<size_t>(p.oreVar)] != 0)
        fail(ErrorCode::SyntaxError, "lower-order terms of " + names[r.hi] + "*" + names[r.lo] +
                                         " must lie in the base algebra");
    }
  }
  return p;
}

namespace detail {

inline std::string monoText(const QMonomial& m, const std::vector<std::string>& names) {
  if (m.isOne()) return "1";
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m.e[i] != 1) out += "^" + std::to_string(m.e[i]);
  }
  return out;
}

inline std::string polyText(const QPolynomial& p, const std::vector<std::string>& names) {
  if (p.isZero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (c.isOne())
      out += monoText(m, names);
    else if (m.isOne())
      out += "(" + c.str() + ")";
    else
      out += "(" + c.str() + ")*" + monoText(m, names);
  }
  return out;
}

}  // namespace detail

inline std::string printPresentation(const AlgebraPresentation& p) {
  const std::vector<std::string> names = p.genNames();
  std::string out = "algebra " + p.name + " {\n";
  for (const auto& g : p.gens)
    out += "  gen " + g.name + " deg " + std::to_string(g.deg) + ";\n";
  if (p.kind == PresentationKind::ColorEnveloping) {
    out += "  epsilon [";
    for (size_t i = 0; i < p.epsilonE.size(); ++i) {
      out += i ? ", [" : "[";
      for (size_t j = 0; j < p.epsilonE[i].size(); ++j)
        out += (j ? ", " : "") + std::to_string(p.epsilonE[i][j]);
      out += "]";
    }
    out += "];\n";
    for (size_t i = 0; i < p.gens.size(); ++i) {
      out += "  grade " + names[i] + " = (";
      for (size_t j = 0; j < p.grades[i].size(); ++j)
        out += (j ? ", " : "") + std::to_string(p.grades[i][j]);
      out += ");\n";
    }
    for (const auto& b : p.brackets)
      out += "  bracket " + names[static_cast<size_t>(b.a)] + " " +
             names[static_cast<size_t>(b.b)] + " = " + detail::polyText(b.value, names) + ";\n";
  } else {
    for (const auto& r : p.rules) {
      const std::string& hi = names[static_cast<size_t>(r.hi)];
      const std::string& lo = names[static_cast<size_t>(r.lo)];
      out += "  rel " + hi + "*" + lo + " - ";
      if (!r.q.isOne()) out += "(" + r.q.str() + ")*";
      out += lo + "*" + hi + " = " + detail::polyText(r.tail, names) + ";\n";
    }
  }
  for (int v : p.inverts) out += "  invert " + names[static_cast<size_t>(v)] + ";\n";
  out += "}\n";
  return out;
}

// The skew structure of an Ore-kind presentation: x*r = tau(r)*x + delta(r).
struct OreSplit {
  int var = -1;
  std::vector<RationalFunction> tau;  // diagonal scalars, indexed by generator
  std::vector<QPolynomial> delta;     // base-valued, indexed by generator
  std::optional<RationalFunction> skew;  // s with delta(tau(r)) = s*tau(delta(r)), if uniform
};

struct CompiledAlgebra {
  AlgebraPresentation pres;
  RewriteSystem sys;
  std::optional<OreSplit> ore;

  RationalFunction tauScalarOf(const QMonomial& m) const {
    RationalFunction out(1);
    for (size_t v = 0; v < m.nvars(); ++v)
      if (m.e[v] != 0) out = out * ore->tau[v].pow(m.e[v]);
    return out;
  }

  QPolynomial tauApply(const QPolynomial& p) const {
    QPolynomial out(p.nvars());
    for (const auto& [m, c] : p.terms()) out.addTerm(m, c * tauScalarOf(m));
    return out;
  }

  // delta(p) = nf(x*p) - tau(p)*x for base-valued p.
  QPolynomial deltaApply(const QPolynomial& p) const {
    if (!ore) fail(ErrorCode::WrongKind, "delta requires an Ore-kind presentation");
    QPolynomial x = sys.varPoly(ore->var);
    return sys.mul(x, p) - sys.mul(tauApply(p), x);
  }
};

inline CompiledAlgebra compilePresentation(const AlgebraPresentation& p) {
  RewriteSystem base(p.genNames(), p.genDegs(), p.rules);
  std::set<int> justified;
  if (p.kind == PresentationKind::OreExtension)
    for (int v : p.inverts)
      if (v != p.oreVar) justified.insert(v);
  RewriteSystem sys = base.laurentExtend(p.inverts, justified);
  std::optional<OreSplit> ore;
  if (p.kind == PresentationKind::OreExtension) {
    OreSplit o;
    o.var = p.oreVar;
    o.tau.assign(p.nvars(), RationalFunction(1));
    o.delta.assign(p.nvars(), QPolynomial(p.nvars()));
    for (int i = 0; i < p.oreVar; ++i) {
      o.tau[static_cast<size_t>(i)] = sys.qScalar(p.oreVar, i);
      o.delta[static_cast<size_t>(i)] = sys.tail(p.oreVar, i);
    }
    // A uniform s with delta(tau(r)) = s*tau(delta(r)) across all base
    // generators and all monomials of their delta values.
    std::optional<RationalFunction> skew;
    bool uniform = true;
    for (int i = 0; i < p.oreVar && uniform; ++i) {
      const QPolynomial& d = o.delta[static_cast<size_t>(i)];
      for (const auto& [m, c] : d.terms()) {
        (void)c;
        RationalFunction tm(1);
        for (size_t v = 0; v < m.nvars(); ++v)
          if (m.e[v] != 0) tm = tm * o.tau[v].pow(m.e[v]);
        RationalFunction ratio = o.tau[static_cast<size_t>(i)] / tm;
        if (!skew)
          skew = ratio;
        else if (!(*skew == ratio)) {
          uniform = false;
          break;
        }
      }
    }
    if (!skew) skew = RationalFunction(1);  // zero derivation: any scalar works
    o.skew = uniform ? skew : std::nullopt;
    ore = std::move(o);
  }
  return {p, std::move(sys), std::move(ore)};
}

}  // namespace qalg

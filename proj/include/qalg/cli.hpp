#pragma once

// Command-line driver. Exit codes: 0 on success, 1 when the mathematics
// rejects the request (non-monotone input, no witness in the box, a failed
// closure, ...), 2 on usage or parse errors, so scripts can tell "provably no"
// from "malformed input".

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qalg/auto.hpp"
#include "qalg/fixtures.hpp"
#include "qalg/solve.hpp"
#include "qalg/validate.hpp"

namespace qalg {

using Json = nlohmann::ordered_json;

namespace cli {

inline int exitCodeFor(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::DuplicateGenerator:
      return 2;
    default:
      return 1;
  }
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) fail(ErrorCode::InvalidArgument, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses, validates, and compiles; rejects presentations whose certificate has
// a failing check so no downstream command computes with an inconsistent set
// of relations.
inline CompiledAlgebra loadAlgebra(const std::string& path) {
  AlgebraPresentation p = parsePresentation(readFile(path));
  ValidationReport rep = validatePresentation(p);
  for (const auto& c : rep.checks)
    if (!c.pass)
      fail(ErrorCode::ValidationFailed, "check '" + c.check + "' failed: " + c.detail);
  return compilePresentation(p);
}

// A single-term element names a monomial; the scalar is irrelevant for
// conjugation and is discarded.
inline QMonomial parseMono(const CompiledAlgebra& alg, const std::string& src) {
  QPolynomial p = alg.sys.nf(src);
  if (p.terms().size() != 1)
    fail(ErrorCode::InvalidArgument, "expected a monomial, got '" + alg.sys.polyStr(p) + "'");
  return p.terms().begin()->first;
}

// gen=EXPR pairs; unmapped generators stay fixed. The map is checked against
// every relation before it is used, so a bad map fails with the offending
// relation named rather than deep inside a later computation.
inline Automorphism parseSigma(const CompiledAlgebra& alg, const std::vector<std::string>& pairs) {
  const RewriteSystem& sys = alg.sys;
  Automorphism aut = identityAutomorphism(alg);
  for (const std::string& s : pairs) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(ErrorCode::InvalidArgument, "--sigma wants gen=EXPR, got '" + s + "'");
    std::string g = s.substr(0, eq);
    auto idx = alg.pres.indexOf(g);
    if (!idx) fail(ErrorCode::UnknownSymbol, "unknown generator '" + g + "' in --sigma");
    aut.images[static_cast<size_t>(*idx)] = sys.nf(s.substr(eq + 1));
  }
  for (const auto& r : alg.pres.rules) {
    const QPolynomial& hi = aut.images[static_cast<size_t>(r.hi)];
    const QPolynomial& lo = aut.images[static_cast<size_t>(r.lo)];
    QPolynomial residue =
        sys.mul(hi, lo) - sys.mul(lo, hi).scaled(r.q) - autApply(alg, aut, r.tail);
    if (!residue.isZero())
      fail(ErrorCode::ValidationFailed,
           "the map breaks the " + sys.name(static_cast<size_t>(r.hi)) + "," +
               sys.name(static_cast<size_t>(r.lo)) + " relation; residue " + sys.polyStr(residue));
  }
  return aut;
}

struct Ctx {
  std::ostream& out;
  bool json = false;
};

inline Json jsonHeader(const char* command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

inline void emit(Ctx& ctx, const Json& j) { ctx.out << j.dump(2) << "\n"; }

inline Json imagesJson(const CompiledAlgebra& alg, const Automorphism& aut) {
  Json m = Json::object();
  for (size_t g = 0; g < alg.sys.nvars(); ++g)
    m[alg.sys.name(g)] = alg.sys.polyStr(aut.images[g]);
  return m;
}

inline void printImages(Ctx& ctx, const CompiledAlgebra& alg, const Automorphism& aut) {
  for (size_t g = 0; g < alg.sys.nvars(); ++g)
    ctx.out << alg.sys.name(g) << " -> " << alg.sys.polyStr(aut.images[g]) << "\n";
}

inline int cmdValidate(Ctx& ctx, const std::string& file) {
  AlgebraPresentation p = parsePresentation(readFile(file));
  ValidationReport rep = validatePresentation(p);
  if (ctx.json) {
    Json j = jsonHeader("validate");
    j["algebra"] = p.name;
    j["kind"] = kindName(p.kind);
    Json gens = Json::array();
    for (const auto& g : p.gens) gens.push_back({{"name", g.name}, {"deg", g.deg}});
    j["gens"] = gens;
    j["ok"] = rep.ok();
    Json checks = Json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    emit(ctx, j);
  } else {
    ctx.out << "algebra " << p.name << " (" << kindName(p.kind) << "); gens:";
    for (const auto& g : p.gens) ctx.out << " " << g.name << "(" << g.deg << ")";
    ctx.out << "\n";
    for (const auto& c : rep.checks)
      ctx.out << (c.pass ? "[ok] " : "[FAIL] ") << c.check << ": " << c.detail << "\n";
    ctx.out << (rep.ok() ? "valid" : "invalid") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

inline int cmdNf(Ctx& ctx, const std::string& file, const std::string& expr) {
  CompiledAlgebra alg = loadAlgebra(file);
  QPolynomial p = alg.sys.nf(expr);
  if (ctx.json) {
    Json j = jsonHeader("nf");
    j["input"] = expr;
    j["normal_form"] = alg.sys.polyStr(p);
    emit(ctx, j);
  } else {
    ctx.out << alg.sys.polyStr(p) << "\n";
  }
  return 0;
}

inline int cmdConj(Ctx& ctx, const std::string& file, const std::string& mono,
                   const std::optional<std::string>& expr) {
  CompiledAlgebra alg = loadAlgebra(file);
  QMonomial d = parseMono(alg, mono);
  Automorphism aut = conjugationAutomorphism(alg, d);
  if (ctx.json) {
    Json j = jsonHeader("conj");
    j["monomial"] = alg.sys.monoStr(d);
    j["images"] = imagesJson(alg, aut);
    if (expr) j["image"] = alg.sys.polyStr(autApply(alg, aut, alg.sys.nf(*expr)));
    emit(ctx, j);
  } else if (expr) {
    ctx.out << alg.sys.polyStr(autApply(alg, aut, alg.sys.nf(*expr))) << "\n";
  } else {
    printImages(ctx, alg, aut);
  }
  return 0;
}

inline int cmdMonotone(Ctx& ctx, const std::string& file, const std::string& expr) {
  CompiledAlgebra alg = loadAlgebra(file);
  QPolynomial w = alg.sys.nf(expr);
  MonotoneReport rep = isMonotone(alg, w);
  QPolynomial extracted = extractMonotone(alg, w);
  if (ctx.json) {
    Json j = jsonHeader("monotone");
    j["monotone"] = rep.isMonotone;
    if (rep.pi) {
      Json pi = Json::object();
      for (size_t g = 0; g < alg.sys.nvars(); ++g) pi[alg.sys.name(g)] = rep.pi->values[g].str();
      j["pi"] = pi;
    } else {
      j["pi"] = nullptr;
    }
    if (rep.witness)
      j["witness"] = {alg.sys.monoStr(rep.witness->first), alg.sys.monoStr(rep.witness->second)};
    else
      j["witness"] = nullptr;
    j["extracted"] = alg.sys.polyStr(extracted);
    emit(ctx, j);
  } else {
    ctx.out << "monotone: " << (rep.isMonotone ? "yes" : "no") << "\n";
    if (rep.pi)
      for (size_t g = 0; g < alg.sys.nvars(); ++g)
        ctx.out << "pi[" << alg.sys.name(g) << "] = " << rep.pi->values[g].str() << "\n";
    if (rep.witness)
      ctx.out << "witness: " << alg.sys.monoStr(rep.witness->first) << " vs "
              << alg.sys.monoStr(rep.witness->second) << "\n";
    ctx.out << "extracted: " << alg.sys.polyStr(extracted) << "\n";
  }
  return rep.isMonotone ? 0 : 1;
}

inline int cmdCentralFactor(Ctx& ctx, const std::string& file, const std::string& expr) {
  CompiledAlgebra alg = loadAlgebra(file);
  auto [delta, f] = centralFactor(alg, alg.sys.nf(expr));
  if (ctx.json) {
    Json j = jsonHeader("central-factor");
    j["delta"] = alg.sys.monoStr(delta);
    j["factor"] = alg.sys.polyStr(f);
    emit(ctx, j);
  } else {
    ctx.out << "delta: " << alg.sys.monoStr(delta) << "\n";
    ctx.out << "factor: " << alg.sys.polyStr(f) << "\n";
  }
  return 0;
}

inline int cmdSemiinv(Ctx& ctx, const std::string& file, const std::string& expr) {
  CompiledAlgebra alg = loadAlgebra(file);
  SemiInvariantReport rep = isSemiInvariant(alg, alg.sys.nf(expr));
  if (ctx.json) {
    Json j = jsonHeader("semiinv");
    j["homogeneous"] = rep.homogeneous;
    j["semi_invariant"] = rep.semiInvariant;
    if (rep.grade) {
      Json g = Json::array();
      for (long v : *rep.grade) g.push_back(v);
      j["grade"] = g;
    } else {
      j["grade"] = nullptr;
    }
    if (rep.weights) {
      Json w = Json::object();
      for (size_t g = 0; g < alg.sys.nvars(); ++g)
        w[alg.sys.name(g)] = (*rep.weights)[g].str();
      j["weights"] = w;
    } else {
      j["weights"] = nullptr;
    }
    emit(ctx, j);
  } else {
    ctx.out << "homogeneous: " << (rep.homogeneous ? "yes" : "no") << "\n";
    ctx.out << "semi-invariant: " << (rep.semiInvariant ? "yes" : "no") << "\n";
    if (rep.grade) {
      ctx.out << "grade: (";
      for (size_t i = 0; i < rep.grade->size(); ++i)
        ctx.out << (i ? ", " : "") << (*rep.grade)[i];
      ctx.out << ")\n";
    }
    if (rep.weights)
      for (size_t g = 0; g < alg.sys.nvars(); ++g)
        ctx.out << "weight[" << alg.sys.name(g) << "] = " << (*rep.weights)[g].str() << "\n";
  }
  return rep.semiInvariant ? 0 : 1;
}

inline int cmdDerSolve(Ctx& ctx, const std::string& file, int box) {
  CompiledAlgebra alg = loadAlgebra(file);
  DerSolveResult res = xinnerDerivationSolve(alg, box);
  if (ctx.json) {
    Json j = jsonHeader("der-solve");
    j["box"] = box;
    j["found"] = !res.noneInBox();
    if (res.witness) {
      j["witness"] = alg.sys.polyStr(res.witness->c);
      Json k = Json::array();
      for (const QPolynomial& p : res.witness->kernel) k.push_back(alg.sys.polyStr(p));
      j["kernel"] = k;
    } else {
      j["witness"] = nullptr;
      j["kernel"] = Json::array();
    }
    emit(ctx, j);
  } else {
    ctx.out << "box: " << box << "\n";
    if (res.witness) {
      ctx.out << "witness: " << alg.sys.polyStr(res.witness->c) << "\n";
      if (res.witness->kernel.empty()) {
        ctx.out << "kernel: (empty)\n";
      } else {
        for (size_t i = 0; i < res.witness->kernel.size(); ++i)
          ctx.out << "kernel[" << i << "]: " << alg.sys.polyStr(res.witness->kernel[i]) << "\n";
      }
    } else {
      ctx.out << "no witness in box\n";
    }
  }
  return res.noneInBox() ? 1 : 0;
}

inline int cmdThm32(Ctx& ctx, const std::string& file, int caseNo, const std::string& wArg,
                    std::optional<long> m, int box) {
  CompiledAlgebra alg = loadAlgebra(file);
  QMonomial w = parseMono(alg, wArg);
  std::optional<QPolynomial> witness;
  Thm32Report rep;
  if (caseNo == 1) {
    if (m) fail(ErrorCode::InvalidArgument, "--m applies to case 2 only");
    rep = thm32Case1(alg, w);
  } else {
    if (!m) fail(ErrorCode::InvalidArgument, "case 2 needs --m");
    DerSolveResult ds = xinnerDerivationSolve(alg, box);
    if (ds.noneInBox())
      fail(ErrorCode::UnverifiedWitness,
           "no inner-derivation witness in box " + std::to_string(box) +
               "; case 2 has no candidate c");
    witness = ds.witness->c;
    rep = thm32Case2(alg, w, *m, *witness);
  }
  if (ctx.json) {
    Json j = jsonHeader("thm32");
    j["case"] = caseNo;
    j["w"] = alg.sys.monoStr(w);
    if (m) j["m"] = *m;
    if (witness) j["witness"] = alg.sys.polyStr(*witness);
    Json closures = Json::object();
    Json values = Json::object();
    for (const ClosureCheck& c : rep.closures) {
      closures[c.name] = c.inR;
      values[c.name] = alg.sys.polyStr(c.value);
    }
    j["closures"] = closures;
    j["closure_values"] = values;
    j["accepted"] = rep.accepted();
    j["images"] = rep.accepted() ? imagesJson(alg, *rep.induced) : Json(nullptr);
    j["detail"] = rep.detail;
    emit(ctx, j);
  } else {
    ctx.out << "case: " << caseNo << "\n";
    ctx.out << "w: " << alg.sys.monoStr(w) << "\n";
    if (m) ctx.out << "m: " << *m << "\n";
    if (witness) ctx.out << "witness: " << alg.sys.polyStr(*witness) << "\n";
    for (const ClosureCheck& c : rep.closures)
      ctx.out << (c.inR ? "[ok] " : "[FAIL] ") << c.name << " = " << alg.sys.polyStr(c.value)
              << "\n";
    if (rep.accepted()) {
      ctx.out << "accepted\n";
      printImages(ctx, alg, *rep.induced);
    } else {
      ctx.out << "rejected: " << rep.detail << "\n";
    }
  }
  return rep.accepted() ? 0 : 1;
}

inline int cmdVerify(Ctx& ctx, const std::string& file, const std::string& aExpr,
                     const std::string& bExpr, const std::vector<std::string>& sigmaPairs) {
  CompiledAlgebra alg = loadAlgebra(file);
  Automorphism sigma = parseSigma(alg, sigmaPairs);
  bool ok = verifyInducing(alg, alg.sys.nf(aExpr), alg.sys.nf(bExpr), sigma);
  if (ctx.json) {
    Json j = jsonHeader("verify");
    j["inducing"] = ok;
    emit(ctx, j);
  } else {
    ctx.out << "inducing: " << (ok ? "true" : "false") << "\n";
  }
  return ok ? 0 : 1;
}

inline int cmdOrder(Ctx& ctx, const std::string& file, const std::vector<std::string>& sigmaPairs) {
  CompiledAlgebra alg = loadAlgebra(file);
  Automorphism sigma = parseSigma(alg, sigmaPairs);
  std::optional<long> ord = autOrder(alg, sigma);
  if (ctx.json) {
    Json j = jsonHeader("order");
    if (ord)
      j["order"] = *ord;
    else
      j["order"] = "infinite";
    emit(ctx, j);
  } else {
    if (ord)
      ctx.out << "order: " << *ord << "\n";
    else
      ctx.out << "order: infinite\n";
  }
  return 0;
}

inline int cmdFixtures(Ctx& ctx, const std::vector<std::string>& filter,
                       const DispatchFn& dispatch) {
  FixtureSummary sum = runFixtures(filter, dispatch);
  if (ctx.json) {
    Json j = jsonHeader("fixtures");
    j["total"] = sum.total;
    j["passed"] = sum.passed;
    j["failed"] = sum.total - sum.passed;
    Json checks = Json::array();
    for (const FixtureOutcome& o : sum.outcomes) {
      Json c;
      c["fixture"] = o.fixtureId;
      c["check"] = o.checkName;
      c["tag"] = o.tag;
      c["command"] = o.command;
      c["pass"] = o.pass;
      if (!o.pass) {
        c["expected"] = o.expected;
        c["computed"] = o.computed;
        c["exit"] = o.exitCode;
      }
      checks.push_back(std::move(c));
    }
    j["checks"] = checks;
    emit(ctx, j);
  } else {
    printFixtureSummary(ctx.out, sum);
  }
  return sum.allPass() ? 0 : 1;
}

}  // namespace cli

// Entry point shared by the binary and the in-process tests: argv without the
// program name.
inline int cmdDispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"exact computation with quantum algebras presented by generators and relations"};
  app.name("qalg");
  app.require_subcommand(1);
  bool json = false;

  std::string file, expr, mono, wArg, aExpr, bExpr;
  std::optional<std::string> conjExpr;
  std::vector<std::string> sigmaPairs, filter;
  int box = 2;
  int caseNo = 1;
  std::optional<long> mOpt;

  auto addJson = [&json](CLI::App* sub) {
    sub->add_flag("--json", json, "structured output");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a presentation file");
  validate->add_option("file", file, "presentation file")->required();
  addJson(validate);

  CLI::App* nf = app.add_subcommand("nf", "normal form of an expression");
  nf->add_option("file", file, "presentation file")->required();
  nf->add_option("expr", expr, "expression")->required();
  addJson(nf);

  CLI::App* conj = app.add_subcommand("conj", "conjugation automorphism by a monomial");
  conj->add_option("file", file, "presentation file")->required();
  conj->add_option("mono", mono, "conjugating monomial")->required();
  conj->add_option("expr", conjExpr, "optional element to map");
  addJson(conj);

  CLI::App* monotone = app.add_subcommand("monotone", "monotone report and extraction");
  monotone->add_option("file", file, "presentation file")->required();
  monotone->add_option("expr", expr, "expression")->required();
  addJson(monotone);

  CLI::App* central = app.add_subcommand("central-factor", "split w = delta*f");
  central->add_option("file", file, "presentation file")->required();
  central->add_option("expr", expr, "expression")->required();
  addJson(central);

  CLI::App* semiinv = app.add_subcommand("semiinv", "semi-invariant report");
  semiinv->add_option("file", file, "presentation file")->required();
  semiinv->add_option("expr", expr, "expression")->required();
  addJson(semiinv);

  CLI::App* der = app.add_subcommand("der-solve", "inner-derivation witness search");
  der->add_option("file", file, "presentation file")->required();
  der->add_option("--box", box, "Laurent exponent box bound")->capture_default_str();
  addJson(der);

  CLI::App* thm32 = app.add_subcommand("thm32", "candidate closure checks and induced map");
  thm32->add_option("file", file, "presentation file")->required();
  thm32->add_option("--case", caseNo, "1: u = w; 2: u = (x-c)^m w")
      ->required()
      ->check(CLI::Range(1, 2));
  thm32->add_option("--w", wArg, "base monomial w")->required();
  thm32->add_option("--m", mOpt, "case-2 power of x - c");
  thm32->add_option("--box", box, "witness search box for case 2")->capture_default_str();
  addJson(thm32);

  CLI::App* verify = app.add_subcommand("verify", "check that (a, b) induces sigma");
  verify->add_option("file", file, "presentation file")->required();
  verify->add_option("--a", aExpr, "left element")->required();
  verify->add_option("--b", bExpr, "right element")->required();
  verify->add_option("--sigma", sigmaPairs, "gen=EXPR pairs; unmapped generators stay fixed")
      ->required();
  addJson(verify);

  CLI::App* order = app.add_subcommand("order", "order of an automorphism");
  order->add_option("file", file, "presentation file")->required();
  order->add_option("--sigma", sigmaPairs, "gen=EXPR pairs; unmapped generators stay fixed")
      ->required();
  addJson(order);

  CLI::App* fixtures = app.add_subcommand("fixtures", "bundled regression fixtures");
  fixtures->require_subcommand(1);
  CLI::App* fixturesRun = fixtures->add_subcommand("run", "run expected-value checks");
  fixturesRun->add_option("filter", filter, "fixture ids (default: all)");
  addJson(fixturesRun);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  cli::Ctx ctx{out, json};
  try {
    if (*validate) return cli::cmdValidate(ctx, file);
    if (*nf) return cli::cmdNf(ctx, file, expr);
    if (*conj) return cli::cmdConj(ctx, file, mono, conjExpr);
    if (*monotone) return cli::cmdMonotone(ctx, file, expr);
    if (*central) return cli::cmdCentralFactor(ctx, file, expr);
    if (*semiinv) return cli::cmdSemiinv(ctx, file, expr);
    if (*der) return cli::cmdDerSolve(ctx, file, box);
    if (*thm32) return cli::cmdThm32(ctx, file, caseNo, wArg, mOpt, box);
    if (*verify) return cli::cmdVerify(ctx, file, aExpr, bExpr, sigmaPairs);
    if (*order) return cli::cmdOrder(ctx, file, sigmaPairs);
    if (*fixturesRun)
      return cli::cmdFixtures(ctx, filter, [](const std::vector<std::string>& a, std::ostream& o,
                                              std::ostream& e) { return cmdDispatch(a, o, e); });
  } catch (const QalgError& e) {
    int code = cli::exitCodeFor(e.code());
    if (json) {
      Json j;
      j["schema"] = 1;
      j["error"] = {{"code", errorName(e.code())}, {"message", e.what()}};
      out << j.dump(2) << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return code;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace qalg

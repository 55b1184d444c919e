#pragma once

// Bundled regression fixtures: each carries its presentation source and a list
// of expected command outputs, every one reproducible in isolation by feeding
// the echoed command line back to the dispatcher.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qalg/error.hpp"

namespace qalg {

struct FixtureCheck {
  std::string name;               // unique within the fixture
  std::string tag;                // provenance of the expected value
  std::vector<std::string> args;  // dispatcher argv; "{file}" expands to the fixture path
  std::string expectedOut;        // exact stdout, trailing newline ignored
  int expectedExit = 0;
};

struct Fixture {
  std::string id;      // registry key, e.g. "Ex4.1"
  std::string file;    // bundled presentation file name
  std::string source;  // embedded presentation text, kept in sync with the file
  std::vector<FixtureCheck> checks;
};

using DispatchFn =
    std::function<int(const std::vector<std::string>&, std::ostream&, std::ostream&)>;

struct FixtureOutcome {
  std::string fixtureId;
  std::string checkName;
  std::string tag;
  std::string command;  // echoed, shell-quoted command line
  bool pass = false;
  int exitCode = 0;
  std::string expected;
  std::string computed;
};

struct FixtureSummary {
  std::vector<FixtureOutcome> outcomes;
  int total = 0;
  int passed = 0;
  bool allPass() const { return passed == total; }
};

namespace detail {

inline std::string shellQuote(const std::string& s) {
  bool plain = !s.empty();
  for (char c : s)
    plain = plain && (std::isalnum(static_cast<unsigned char>(c)) ||
                      std::string("._/=^-{},").find(c) != std::string::npos);
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

inline std::string rstripNewlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace detail

const std::vector<Fixture>& fixtureRegistry();

// Locates the fixture's presentation file: $QALG_FIXTURES_DIR, then ./fixtures,
// then a copy of the embedded source materialized under the system temp dir so
// the echoed commands stay runnable from any working directory.
inline std::string resolveFixtureFile(const Fixture& f) {
  namespace fs = std::filesystem;
  if (const char* dir = std::getenv("QALG_FIXTURES_DIR")) {
    fs::path p = fs::path(dir) / f.file;
    if (fs::exists(p)) return p.string();
  }
  fs::path local = fs::path("fixtures") / f.file;
  if (fs::exists(local)) return local.string();
  fs::path tmp = fs::temp_directory_path() / "qalg-fixtures";
  std::error_code ec;
  fs::create_directories(tmp, ec);
  fs::path p = tmp / f.file;
  std::ofstream out(p);
  if (!out.good()) fail(ErrorCode::InvalidArgument, "cannot materialize fixture " + f.id);
  out << f.source;
  return p.string();
}

inline FixtureSummary runFixtureList(const std::vector<const Fixture*>& selected,
                                     const DispatchFn& dispatch) {
  FixtureSummary sum;
  for (const Fixture* f : selected) {
    std::string file = resolveFixtureFile(*f);
    for (const FixtureCheck& c : f->checks) {
      std::vector<std::string> args;
      for (const std::string& a : c.args) {
        std::string expanded = a;
        if (auto pos = expanded.find("{file}"); pos != std::string::npos)
          expanded.replace(pos, 6, file);
        args.push_back(std::move(expanded));
      }
      std::string cmd = "qalg";
      for (const std::string& a : args) cmd += " " + detail::shellQuote(a);
      std::ostringstream out, err;
      int code = dispatch(args, out, err);
      FixtureOutcome o;
      o.fixtureId = f->id;
      o.checkName = c.name;
      o.tag = c.tag;
      o.command = cmd;
      o.exitCode = code;
      o.expected = detail::rstripNewlines(c.expectedOut);
      o.computed = detail::rstripNewlines(out.str());
      o.pass = (code == c.expectedExit) && (o.computed == o.expected);
      sum.total += 1;
      if (o.pass) sum.passed += 1;
      sum.outcomes.push_back(std::move(o));
    }
  }
  return sum;
}

inline FixtureSummary runFixtures(const std::vector<std::string>& filter,
                                  const DispatchFn& dispatch) {
  const std::vector<Fixture>& reg = fixtureRegistry();
  std::vector<const Fixture*> selected;
  if (filter.empty()) {
    for (const Fixture& f : reg) selected.push_back(&f);
  } else {
    for (const std::string& id : filter) {
      const Fixture* found = nullptr;
      for (const Fixture& f : reg)
        if (f.id == id) found = &f;
      if (!found) fail(ErrorCode::InvalidArgument, "unknown fixture id '" + id + "'");
      selected.push_back(found);
    }
  }
  return runFixtureList(selected, dispatch);
}

inline void printFixtureSummary(std::ostream& out, const FixtureSummary& sum) {
  for (const FixtureOutcome& o : sum.outcomes) {
    out << (o.pass ? "[PASS] " : "[FAIL] ") << o.fixtureId << "/" << o.checkName << " [" << o.tag
        << "] $ " << o.command << "\n";
    if (!o.pass) {
      out << "  expected:\n";
      std::istringstream e(o.expected);
      for (std::string line; std::getline(e, line);) out << "    " << line << "\n";
      out << "  computed (exit " << o.exitCode << "):\n";
      std::istringstream g(o.computed);
      for (std::string line; std::getline(g, line);) out << "    " << line << "\n";
    }
  }
  out << "checks: " << sum.total << " total, " << sum.passed << " passed, "
      << (sum.total - sum.passed) << " failed\n";
}

}  // namespace qalg

#include "qalg/fixtures_data.hpp"  // registry definition (embedded sources + checks)

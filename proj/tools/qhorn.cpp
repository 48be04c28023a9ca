// qhorn: batch runner and REPL for quantified Boolean Horn programs.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qhorn/dot.hpp"
#include "qhorn/extensions.hpp"
#include "qhorn/fol.hpp"
#include "qhorn/oracle.hpp"
#include "qhorn/parser.hpp"
#include "qhorn/sldq.hpp"
#include "qhorn/solver.hpp"

namespace {

using namespace qhorn;

constexpr int kExitParse = 64;
constexpr int kExitNotHorn = 65;

struct Session {
  bool loaded = false;
  SourceUnit unit;
  Program original;  // pre-renaming, for :rename reporting
  bool trace = false;
  long budget = 10000;
  int oracleCap = kDefaultOracleCap;
  // Last propositional query context, for :states / :tree.
  std::optional<SolveResult> lastSolve;
  std::optional<FOResult> lastFoSolve;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Parses leniently, then gates non-Horn propositional input through the
/// renaming detector. Throws NotHornError when no renaming exists.
SourceUnit loadUnit(const std::string& text, std::ostream& notice) {
  SourceUnit u = parse_source(text, ParseOptions{false});
  if (u.mode == SourceUnit::Mode::Propositional && !is_horn(u.program)) {
    auto flips = detect_renaming(u.program);
    if (!flips) throw NotHornError("input is not Horn and not renamable");
    notice << "% note: non-Horn input renamed (" << flips->size()
           << " variables flipped)\n";
    u.program = apply_renaming(u.program, *flips);
  }
  return u;
}

Verdict runPropQuery(Session& s, const Query& q) {
  const Program& p = s.unit.program;
  NewVarResolution nv = resolve_new_variables(p, q);
  if (nv.kind == NewVarResolution::Kind::AnsweredYes) {
    s.lastSolve.reset();
    return Verdict::Yes;
  }
  const Query& eff =
      nv.kind == NewVarResolution::Kind::ReducedQuery ? *nv.query : q;
  SolveResult r = output(p, eff);
  if (s.trace && r.verdict == Verdict::Yes) {
    SearchOutcome so = search_recursive(r.pprime, r.topGoal, s.budget);
    if (so.found()) std::cout << render_trace(r.pprime, *so.derivation);
  }
  Verdict v = r.verdict;
  s.lastSolve = std::move(r);
  return v;
}

Verdict runQueryLine(Session& s, const std::string& line) {
  if (s.unit.mode == SourceUnit::Mode::Propositional)
    return runPropQuery(s, parse_query(line, s.unit.program));
  FOResult r = fol_output(s.unit.foProgram,
                          parse_fol_query(line, s.unit.foProgram));
  Verdict v = r.verdict;
  s.lastFoSolve = std::move(r);
  return v;
}

int runBatch(Session& s, const std::string& path,
             const std::string& dotPath) {
  try {
    s.unit = loadUnit(readFile(path), std::cerr);
    s.loaded = true;
  } catch (const NotHornError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotHorn;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  int code = 0;
  auto report = [&code](Verdict v) {
    std::cout << to_string(v) << "\n";
    code = v == Verdict::Yes ? 0 : v == Verdict::No ? 1 : 2;
  };
  try {
    if (s.unit.mode == SourceUnit::Mode::Propositional) {
      for (const Query& q : s.unit.queries) report(runPropQuery(s, q));
    } else {
      for (const FOQuery& q : s.unit.foQueries) {
        FOResult r = fol_output(s.unit.foProgram, q);
        report(r.verdict);
        s.lastFoSolve = std::move(r);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (!dotPath.empty() && s.lastSolve) {
    std::ofstream out(dotPath);
    out << emit_dot(s.lastSolve->pprime,
                    build_refutation_tree(s.lastSolve->pprime,
                                          s.lastSolve->topGoal));
  }
  return code;
}

void replStates(const Session& s) {
  if (s.unit.mode == SourceUnit::Mode::Propositional) {
    if (!s.lastSolve) {
      std::cout << "no query evaluated yet\n";
      return;
    }
    std::cout << render_states(*s.lastSolve);
    return;
  }
  if (!s.lastFoSolve) {
    std::cout << "no query evaluated yet\n";
    return;
  }
  for (const auto& [atom, st] : s.lastFoSolve->states)
    std::cout << atom << " = " << to_string(st) << "\n";
}

void replSat(const Session& s) {
  if (s.unit.mode != SourceUnit::Mode::Propositional) {
    std::cout << "':sat' supports propositional programs only\n";
    return;
  }
  auto quick = horn_quick_sat(s.unit.program);
  if (quick)
    std::cout << "quick-sat: " << (*quick ? "sat" : "unsat") << "\n";
  else
    std::cout << "quick-sat: inconclusive\n";
  try {
    std::cout << "eval: "
              << (eval_qbf(s.unit.program, s.oracleCap) ? "true" : "false")
              << "\n";
  } catch (const CapExceeded& e) {
    std::cout << "eval: skipped (" << e.what() << ")\n";
  }
}

void replRename(const Session& s) {
  if (s.unit.mode != SourceUnit::Mode::Propositional) {
    std::cout << "':rename' supports propositional programs only\n";
    return;
  }
  auto flips = detect_renaming(s.original);
  if (!flips) {
    std::cout << "not renamable Horn\n";
    return;
  }
  std::cout << "renamable; flip set: {";
  bool first = true;
  for (VarId v : *flips) {
    if (!first) std::cout << ", ";
    std::cout << s.original.var(v).name;
    first = false;
  }
  std::cout << "}\n";
}

void replTree(const Session& s, const std::string& path) {
  if (!s.lastSolve) {
    std::cout << "no propositional query evaluated yet\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cout << "cannot write " << path << "\n";
    return;
  }
  out << emit_dot(s.lastSolve->pprime,
                  build_refutation_tree(s.lastSolve->pprime,
                                        s.lastSolve->topGoal));
  std::cout << "wrote " << path << "\n";
}

int repl(Session& s) {
  std::string line;
  while (std::getline(std::cin, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    try {
      if (word.empty()) continue;
      if (word == ":quit") break;
      if (word == ":load") {
        std::string path;
        ls >> path;
        s.unit = loadUnit(readFile(path), std::cout);
        s.original = parse_source(readFile(path), ParseOptions{false}).program;
        s.loaded = true;
        s.lastSolve.reset();
        s.lastFoSolve.reset();
        std::cout << "loaded " << path << "\n";
      } else if (word == ":trace") {
        std::string v;
        ls >> v;
        if (v == "on" || v == "off")
          s.trace = (v == "on");
        else
          std::cout << "usage: :trace on|off\n";
      } else if (word == ":budget") {
        long n;
        if (ls >> n && n > 0)
          s.budget = n;
        else
          std::cout << "usage: :budget <n>\n";
      } else if (word == ":mode") {
        if (!s.loaded)
          std::cout << "no program loaded\n";
        else
          std::cout << (s.unit.mode == SourceUnit::Mode::Propositional
                            ? "propositional"
                            : "fol")
                    << "\n";
      } else if (word == ":states") {
        replStates(s);
      } else if (word == ":sat") {
        if (!s.loaded)
          std::cout << "no program loaded\n";
        else
          replSat(s);
      } else if (word == ":rename") {
        if (!s.loaded)
          std::cout << "no program loaded\n";
        else
          replRename(s);
      } else if (word == ":tree") {
        std::string path;
        ls >> path;
        if (path.empty())
          std::cout << "usage: :tree <path.dot>\n";
        else
          replTree(s, path);
      } else if (word[0] == '?') {
        if (!s.loaded)
          std::cout << "error: no program loaded\n";
        else
          std::cout << to_string(runQueryLine(s, line)) << "\n";
      } else {
        std::cout << "unknown command: " << word << "\n";
      }
    } catch (const Error& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantified Boolean Horn logic programming engine"};
  std::string batchPath, dotPath;
  Session s;
  if (const char* env = std::getenv("QHORN_BUDGET")) {
    long n = std::atol(env);
    if (n > 0) s.budget = n;
  }
  app.add_option("--batch", batchPath, "evaluate every query in the file");
  app.add_flag("--trace", s.trace, "print the derivation trace on yes");
  app.add_option("--budget", s.budget, "resolution step budget");
  app.add_option("--oracle-cap", s.oracleCap, "variable cap for :sat");
  app.add_option("--dot", dotPath,
                 "write the last query's refutation tree (batch mode)");
  CLI11_PARSE(app, argc, argv);
  if (!batchPath.empty()) return runBatch(s, batchPath, dotPath);
  return repl(s);
}

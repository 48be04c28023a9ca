#include "qhorn/oracle.hpp"

#include <algorithm>
#include <string>

namespace qhorn {
namespace {

struct MatrixEval {
  const Program& p;
  const std::vector<VarId> order;
  std::vector<int> posOf;  // var -> position in prefix order

  explicit MatrixEval(const Program& prog)
      : p(prog), order(prog.prefixOrder()), posOf(prog.varCount(), -1) {
    for (std::size_t i = 0; i < order.size(); ++i)
      posOf[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  }

  bool clauseSat(const Clause& c, const std::vector<bool>& assign) const {
    for (const Literal& l : c.lits) {
      bool v = assign[static_cast<std::size_t>(posOf[static_cast<std::size_t>(l.var)])];
      if (v == l.positive) return true;
    }
    return false;
  }

  bool matrixSat(const std::vector<bool>& assign) const {
    for (const Clause& c : p.clauses())
      if (!clauseSat(c, assign)) return false;
    return true;
  }
};

void checkCap(const Program& p, int cap) {
  if (static_cast<int>(p.varCount()) > cap)
    throw CapExceeded("oracle cap " + std::to_string(cap) + " exceeded (" +
                      std::to_string(p.varCount()) + " variables)");
}

bool evalRec(const MatrixEval& m, std::size_t depth, std::vector<bool>& assign) {
  if (depth == m.order.size()) return m.matrixSat(assign);
  VarId v = m.order[depth];
  bool existential = m.p.isExistential(v);
  for (bool b : {false, true}) {
    assign[depth] = b;
    bool sub = evalRec(m, depth + 1, assign);
    if (existential && sub) return true;
    if (!existential && !sub) return false;
  }
  return !existential;
}

// Strategy fragments for the subtree below `depth` given the path so far.
std::vector<Strategy> enumRec(const MatrixEval& m, std::size_t depth,
                              std::vector<bool>& assign,
                              std::uint64_t maxModels) {
  if (depth == m.order.size()) {
    if (m.matrixSat(assign)) return {Strategy{}};
    return {};
  }
  VarId v = m.order[depth];
  std::vector<bool> path(assign.begin(), assign.begin() + static_cast<long>(depth));
  std::vector<Strategy> out;
  if (m.p.isExistential(v)) {
    for (bool b : {false, true}) {
      assign[depth] = b;
      for (Strategy& s : enumRec(m, depth + 1, assign, maxModels)) {
        s.choices[{v, path}] = b;
        out.push_back(std::move(s));
        if (out.size() > maxModels) throw CapExceeded("model enumeration cap");
      }
    }
  } else {
    assign[depth] = false;
    std::vector<Strategy> lo = enumRec(m, depth + 1, assign, maxModels);
    if (lo.empty()) return {};
    assign[depth] = true;
    std::vector<Strategy> hi = enumRec(m, depth + 1, assign, maxModels);
    for (const Strategy& a : lo)
      for (const Strategy& b : hi) {
        Strategy s = a;
        s.choices.insert(b.choices.begin(), b.choices.end());
        out.push_back(std::move(s));
        if (out.size() > maxModels) throw CapExceeded("model enumeration cap");
      }
  }
  return out;
}

// Achievable (all-paths-satisfy-p, some-path-falsifies-q) outcome pairs for
// the strategies of the subtree. Encoded as a 4-bit set, bit = sat*2 + fals.
using OutcomeSet = unsigned;
inline OutcomeSet one(bool sat, bool fals) {
  return 1u << ((sat ? 2 : 0) + (fals ? 1 : 0));
}

OutcomeSet outcomesRec(const MatrixEval& mp, const MatrixEval& mq,
                       std::size_t depth, std::vector<bool>& assign) {
  if (depth == mp.order.size())
    return one(mp.matrixSat(assign), !mq.matrixSat(assign));
  bool existential = mp.p.isExistential(mp.order[depth]);
  assign[depth] = false;
  OutcomeSet lo = outcomesRec(mp, mq, depth + 1, assign);
  assign[depth] = true;
  OutcomeSet hi = outcomesRec(mp, mq, depth + 1, assign);
  if (existential) return lo | hi;  // the strategy picks one child
  OutcomeSet out = 0;
  for (int a = 0; a < 4; ++a) {
    if (!(lo & (1u << a))) continue;
    for (int b = 0; b < 4; ++b) {
      if (!(hi & (1u << b))) continue;
      bool sat = (a >= 2) && (b >= 2);
      bool fals = (a & 1) || (b & 1);
      out |= one(sat, fals);
    }
  }
  return out;
}

bool samePrefix(const Program& a, const Program& b) {
  if (a.blocks().size() != b.blocks().size() || a.varCount() != b.varCount())
    return false;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    const Block &x = a.blocks()[i], &y = b.blocks()[i];
    if (x.quant != y.quant || x.vars.size() != y.vars.size()) return false;
    for (std::size_t j = 0; j < x.vars.size(); ++j)
      if (a.var(x.vars[j]).name != b.var(y.vars[j]).name) return false;
  }
  return true;
}

}  // namespace

bool eval_qbf(const Program& p, int varCap) {
  checkCap(p, varCap);
  MatrixEval m(p);
  std::vector<bool> assign(m.order.size(), false);
  return evalRec(m, 0, assign);
}

std::vector<Strategy> enumerate_models(const Program& p, int varCap,
                                       std::uint64_t maxModels) {
  checkCap(p, varCap);
  MatrixEval m(p);
  std::vector<bool> assign(m.order.size(), false);
  return enumRec(m, 0, assign, maxModels);
}

bool implies(const Program& p, const Program& q, int varCap) {
  if (!samePrefix(p, q)) throw PrefixMismatch();
  checkCap(p, varCap);
  MatrixEval mp(p), mq(q);
  std::vector<bool> assign(mp.order.size(), false);
  OutcomeSet root = outcomesRec(mp, mq, 0, assign);
  // A counterexample strategy satisfies p everywhere and breaks q somewhere.
  return !(root & one(true, true));
}

std::optional<bool> horn_quick_sat(const Program& p) {
  bool allDefinite = true;
  bool positiveUnit = false;
  for (const Clause& c : p.clauses()) {
    if (!is_horn(c)) throw NotHornError("horn_quick_sat on non-Horn program");
    if (c.empty()) return std::nullopt;  // lemma excludes the empty clause
    if (classify_clause(p, c) == ClauseKind::Goal) allDefinite = false;
    if (c.size() == 1 && c.lits[0].positive) positiveUnit = true;
  }
  if (allDefinite || !positiveUnit) return true;
  return std::nullopt;
}

std::optional<std::size_t> find_witness_goal(const Program& p, int varCap) {
  checkCap(p, varCap);
  if (eval_qbf(p, varCap)) return std::nullopt;
  // F-exists plus one candidate C' at a time.
  Program base;
  for (const Block& b : p.blocks())
    for (VarId v : b.vars) base.declare(p.var(v).name, b.quant);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < p.clauses().size(); ++i) {
    if (classify_clause(p, p.clauses()[i]) == ClauseKind::DefiniteExistentialHead)
      base.addClause(p.clauses()[i]);
    else
      candidates.push_back(i);
  }
  for (std::size_t i : candidates) {
    Program trial = base;
    trial.addClause(p.clauses()[i]);
    if (!eval_qbf(trial, varCap)) return i;
  }
  return std::nullopt;
}

}  // namespace qhorn

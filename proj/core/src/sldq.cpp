#include "qhorn/sldq.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qhorn {
namespace {

std::vector<Literal> sortedLits(const Clause& c) {
  std::vector<Literal> v = c.lits;
  std::sort(v.begin(), v.end());
  return v;
}

bool sameMultiset(const Clause& a, const Clause& b) {
  return sortedLits(a) == sortedLits(b);
}

int maxExistentialLevel(const Program& p, const Clause& c) {
  int m = 0;
  for (const Literal& l : c.lits)
    if (p.isExistential(l.var)) m = std::max(m, p.var(l.var).level);
  return m;
}

// First literal position whose variable is existential, or -1.
int firstExistentialPos(const Program& p, const Clause& c) {
  for (std::size_t i = 0; i < c.lits.size(); ++i)
    if (p.isExistential(c.lits[i].var)) return static_cast<int>(i);
  return -1;
}

Clause removeAt(const Clause& c, std::size_t pos) {
  Clause out;
  out.lits.reserve(c.lits.size() - 1);
  for (std::size_t i = 0; i < c.lits.size(); ++i)
    if (i != pos) out.lits.push_back(c.lits[i]);
  return out;
}

Clause removeVar(const Clause& c, VarId v) {
  Clause out;
  for (const Literal& l : c.lits)
    if (l.var != v) out.lits.push_back(l);
  return out;
}

// Side body prepended to the centre remainder, per the list calculus.
Clause concatResolvent(const Clause& center, std::size_t centerPos,
                       const Clause& side) {
  Clause out;
  out.lits.assign(side.lits.begin() + 1, side.lits.end());
  for (std::size_t i = 0; i < center.lits.size(); ++i)
    if (i != centerPos) out.lits.push_back(center.lits[i]);
  return out;
}

bool isSideClauseFor(const Program& p, const Clause& side, VarId x) {
  return !side.empty() && side.lits.front().positive &&
         side.lits.front().var == x && p.isExistential(x);
}

// Unblocked universal variables in first-occurrence order.
std::vector<VarId> unblockedUniversals(const Program& p, const Clause& c) {
  int maxExist = maxExistentialLevel(p, c);
  std::vector<VarId> out;
  for (const Literal& l : c.lits) {
    if (!p.isUniversal(l.var)) continue;
    if (p.var(l.var).level <= maxExist) continue;  // blocked
    if (std::find(out.begin(), out.end(), l.var) == out.end())
      out.push_back(l.var);
  }
  return out;
}

}  // namespace

int max_level(const Program& p, const Clause& c) {
  int m = 0;
  for (const Literal& l : c.lits) m = std::max(m, level_of(p, l));
  return m;
}

int max_level(const Program& p, const Query& q) {
  return max_level(p, q.asClause());
}

Program build_abstraction(const Program& p, int i) {
  Program out = p;
  out.mergeLeadingBlocks(i);
  return out;
}

RefutationInput build_refutation_input(const Program& p, const Query& q) {
  Clause qc = q.asClause();
  for (const Literal& l : qc.lits)
    if (!p.occursInMatrix(l.var)) throw NewVariableError(p.var(l.var).name);
  if (q.kind == Query::Kind::Goal) {
    RefutationInput in{p, Clause{}};
    for (VarId g : q.body) in.topGoal.lits.push_back(neg(g));
    return in;
  }
  // Definite query x <- x1..xn: refute ~x in the abstraction extended with
  // the body unit facts (facts ahead of the program clauses).
  int i = 0;
  for (const Literal& l : qc.lits)
    i = std::max(i, p.var(l.var).level);
  Program pprime = build_abstraction(p, i);
  for (std::size_t b = q.body.size(); b-- > 0;)
    pprime.prependClause(Clause{{pos(q.body[b])}});
  return RefutationInput{std::move(pprime), Clause{{neg(*q.head)}}};
}

Clause resolve_prolog(const Program& p, const Clause& center,
                      const Clause& side) {
  if (center.empty() || center.lits.front().positive)
    throw PivotMismatch("centre clause must start with a negative literal");
  VarId x = center.lits.front().var;
  if (p.isUniversal(x)) throw UniversalPivot(p.var(x).name);
  if (side.empty() || !side.lits.front().positive ||
      side.lits.front().var != x)
    throw PivotMismatch("side clause head does not match the pivot " +
                        p.var(x).name);
  return concatResolvent(center, 0, side);
}

bool universal_unblocked(const Program& p, const Clause& c, VarId u) {
  return p.var(u).level > maxExistentialLevel(p, c);
}

Clause forall_reduce(const Program& p, const Clause& c) {
  int maxExist = maxExistentialLevel(p, c);
  Clause out;
  for (const Literal& l : c.lits) {
    if (p.isUniversal(l.var) && p.var(l.var).level > maxExist) continue;
    out.lits.push_back(l);
  }
  return out;
}

CheckResult check_derivation(const Program& p, const Derivation& d,
                             const std::optional<Clause>& allowedTop) {
  auto fail = [](const std::string& why) { return CheckResult{false, why}; };

  for (const Literal& l : d.topGoal.lits)
    if (l.positive && p.isExistential(l.var))
      return fail("top goal has a positive existential literal");
  bool member = std::any_of(
      p.clauses().begin(), p.clauses().end(),
      [&](const Clause& c) { return sameMultiset(c, d.topGoal); });
  if (!member && !(allowedTop && sameMultiset(*allowedTop, d.topGoal)))
    return fail("top goal is neither a program clause nor the query goal");

  Clause cur = d.topGoal;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& [step, result] = d.steps[i];
    if (const ResolveStep* r = std::get_if<ResolveStep>(&step)) {
      if (r->sideIndex < 0 ||
          static_cast<std::size_t>(r->sideIndex) >= p.clauses().size())
        return fail("step " + std::to_string(i) + ": side index out of range");
      const Clause& side = p.clauses()[static_cast<std::size_t>(r->sideIndex)];
      if (p.isUniversal(r->pivot))
        return fail("step " + std::to_string(i) + ": universal pivot");
      if (!isSideClauseFor(p, side, r->pivot))
        return fail("step " + std::to_string(i) +
                    ": side clause head does not match pivot");
      for (std::size_t j = 1; j < side.lits.size(); ++j)
        if (side.lits[j].positive)
          return fail("step " + std::to_string(i) + ": side clause not definite");
      auto it = std::find(cur.lits.begin(), cur.lits.end(), neg(r->pivot));
      if (it == cur.lits.end())
        return fail("step " + std::to_string(i) + ": pivot not in centre clause");
      Clause computed = concatResolvent(
          cur, static_cast<std::size_t>(it - cur.lits.begin()), side);
      if (!sameMultiset(computed, result))
        return fail("step " + std::to_string(i) + ": wrong resolvent");
    } else {
      VarId u = std::get<ForallReduceStep>(step).var;
      if (!p.isUniversal(u))
        return fail("step " + std::to_string(i) + ": reduced variable not universal");
      if (!universal_unblocked(p, cur, u))
        return fail("step " + std::to_string(i) + ": reduced variable is blocked");
      if (std::find_if(cur.lits.begin(), cur.lits.end(), [&](const Literal& l) {
            return l.var == u;
          }) == cur.lits.end())
        return fail("step " + std::to_string(i) + ": reduced variable absent");
      if (!sameMultiset(removeVar(cur, u), result))
        return fail("step " + std::to_string(i) + ": wrong reduction result");
    }
    cur = result;
  }
  return CheckResult{};
}

namespace {

struct SearchCtx {
  const Program& p;
  long budget;
  bool exhausted = false;
  std::vector<std::pair<Step, Clause>> steps;
};

Clause reduceRecording(SearchCtx& ctx, Clause cur) {
  for (VarId u : unblockedUniversals(ctx.p, cur)) {
    cur = removeVar(cur, u);
    ctx.steps.emplace_back(ForallReduceStep{u}, cur);
  }
  return cur;
}

bool searchDfs(SearchCtx& ctx, const Clause& goal) {
  if (goal.empty()) return true;
  int pos = firstExistentialPos(ctx.p, goal);
  if (pos < 0) return false;  // only blocked universals left
  VarId x = goal.lits[static_cast<std::size_t>(pos)].var;
  const auto& clauses = ctx.p.clauses();
  for (std::size_t idx = 0; idx < clauses.size(); ++idx) {
    if (!isSideClauseFor(ctx.p, clauses[idx], x)) continue;
    if (ctx.budget <= 0) {
      ctx.exhausted = true;
      return false;
    }
    --ctx.budget;
    std::size_t mark = ctx.steps.size();
    Clause next = concatResolvent(goal, static_cast<std::size_t>(pos), clauses[idx]);
    ctx.steps.emplace_back(ResolveStep{static_cast<int>(idx), x}, next);
    Clause reduced = reduceRecording(ctx, std::move(next));
    if (searchDfs(ctx, reduced)) return true;
    if (ctx.exhausted) return false;
    ctx.steps.resize(mark);
  }
  return false;
}

}  // namespace

SearchOutcome search_recursive(const Program& pprime, const Clause& goal,
                               long budget) {
  SearchCtx ctx{pprime, budget};
  Clause start = reduceRecording(ctx, goal);
  bool ok = searchDfs(ctx, start);
  SearchOutcome out;
  if (ok) {
    out.kind = SearchOutcome::Kind::Found;
    out.derivation = Derivation{goal, std::move(ctx.steps)};
  } else if (ctx.exhausted) {
    out.kind = SearchOutcome::Kind::BudgetExhausted;
    out.derivation = Derivation{goal, std::move(ctx.steps)};
  } else {
    out.kind = SearchOutcome::Kind::NotFound;
  }
  return out;
}

namespace {

struct ExhaustiveCtx {
  const Program& p;
  std::map<std::vector<Literal>, int> failedAt;  // goal -> depth budget proven hopeless
  std::vector<std::pair<Step, Clause>> steps;
};

bool exhaustiveDfs(ExhaustiveCtx& ctx, const Clause& goal, int depthLeft) {
  if (goal.empty()) return true;
  if (depthLeft <= 0) return false;
  // Lower bound: one resolve per existential occurrence, one reduction per
  // distinct universal variable.
  int existCount = 0;
  std::vector<VarId> univ;
  for (const Literal& l : goal.lits) {
    if (ctx.p.isExistential(l.var))
      ++existCount;
    else if (std::find(univ.begin(), univ.end(), l.var) == univ.end())
      univ.push_back(l.var);
  }
  if (existCount + static_cast<int>(univ.size()) > depthLeft) return false;

  std::vector<Literal> key = sortedLits(goal);
  auto it = ctx.failedAt.find(key);
  if (it != ctx.failedAt.end() && it->second >= depthLeft) return false;

  for (VarId u : univ) {
    if (!universal_unblocked(ctx.p, goal, u)) continue;
    Clause next = removeVar(goal, u);
    ctx.steps.emplace_back(ForallReduceStep{u}, next);
    if (exhaustiveDfs(ctx, next, depthLeft - 1)) return true;
    ctx.steps.pop_back();
  }
  std::vector<VarId> tried;
  for (std::size_t pos = 0; pos < goal.lits.size(); ++pos) {
    const Literal& l = goal.lits[pos];
    if (!ctx.p.isExistential(l.var) || l.positive) continue;
    if (std::find(tried.begin(), tried.end(), l.var) != tried.end()) continue;
    tried.push_back(l.var);
    for (std::size_t idx = 0; idx < ctx.p.clauses().size(); ++idx) {
      const Clause& side = ctx.p.clauses()[idx];
      if (!isSideClauseFor(ctx.p, side, l.var)) continue;
      Clause next = concatResolvent(goal, pos, side);
      ctx.steps.emplace_back(ResolveStep{static_cast<int>(idx), l.var}, next);
      if (exhaustiveDfs(ctx, next, depthLeft - 1)) return true;
      ctx.steps.pop_back();
    }
  }
  int& slot = ctx.failedAt[std::move(key)];
  slot = std::max(slot, depthLeft);
  return false;
}

}  // namespace

std::optional<Derivation> exhaustive_search(const Program& pprime,
                                            const Clause& goal, int depthCap,
                                            int varCap) {
  if (static_cast<int>(pprime.varCount()) > varCap)
    throw CapExceeded("exhaustive search variable cap exceeded");
  ExhaustiveCtx ctx{pprime, {}, {}};
  if (!exhaustiveDfs(ctx, goal, depthCap)) return std::nullopt;
  return Derivation{goal, std::move(ctx.steps)};
}

namespace {

void expandTree(const Program& p, RefutationTree& tree, int idx,
                std::vector<std::vector<Literal>>& path, int depth,
                int maxNodes, int maxDepth) {
  RefTreeNode& node = tree.nodes[static_cast<std::size_t>(idx)];
  const Clause goal = node.goal;
  if (goal.empty()) {
    node.kind = RefTreeNode::Kind::Empty;
    return;
  }
  std::vector<Literal> key = sortedLits(goal);
  if (std::find(path.begin(), path.end(), key) != path.end()) {
    node.kind = RefTreeNode::Kind::Repeat;
    return;
  }
  if (depth >= maxDepth ||
      static_cast<int>(tree.nodes.size()) >= maxNodes) {
    node.kind = RefTreeNode::Kind::CapHit;
    return;
  }
  path.push_back(std::move(key));
  std::vector<VarId> reducible = unblockedUniversals(p, goal);
  if (!reducible.empty()) {
    VarId u = reducible.front();
    int child = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(RefTreeNode{removeVar(goal, u),
                                     RefTreeNode::Kind::Internal, {}});
    tree.nodes[static_cast<std::size_t>(idx)].children.push_back(
        RefTreeNode::Edge{true, -1, u, child});
    expandTree(p, tree, child, path, depth + 1, maxNodes, maxDepth);
  } else {
    int pos = firstExistentialPos(p, goal);
    VarId x = pos >= 0 ? goal.lits[static_cast<std::size_t>(pos)].var : -1;
    bool any = false;
    for (std::size_t i = 0; i < p.clauses().size() && pos >= 0; ++i) {
      if (!isSideClauseFor(p, p.clauses()[i], x)) continue;
      if (static_cast<int>(tree.nodes.size()) >= maxNodes) break;
      any = true;
      int child = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(
          RefTreeNode{concatResolvent(goal, static_cast<std::size_t>(pos),
                                      p.clauses()[i]),
                      RefTreeNode::Kind::Internal, {}});
      tree.nodes[static_cast<std::size_t>(idx)].children.push_back(
          RefTreeNode::Edge{false, static_cast<int>(i), x, child});
      expandTree(p, tree, child, path, depth + 1, maxNodes, maxDepth);
    }
    if (!any) tree.nodes[static_cast<std::size_t>(idx)].kind = RefTreeNode::Kind::DeadEnd;
  }
  path.pop_back();
}

}  // namespace

RefutationTree build_refutation_tree(const Program& pprime, const Clause& goal,
                                     int maxNodes, int maxDepth) {
  RefutationTree tree;
  tree.nodes.push_back(RefTreeNode{goal, RefTreeNode::Kind::Internal, {}});
  std::vector<std::vector<Literal>> path;
  expandTree(pprime, tree, 0, path, 0, maxNodes, maxDepth);
  return tree;
}

std::string render_trace(const Program& p, const Derivation& d) {
  std::ostringstream os;
  os << "goal " << p.render(d.topGoal) << "\n";
  for (const auto& [step, result] : d.steps) {
    if (const ResolveStep* r = std::get_if<ResolveStep>(&step))
      os << "R " << r->sideIndex << " on " << p.var(r->pivot).name;
    else
      os << "U " << p.var(std::get<ForallReduceStep>(step).var).name;
    os << " |- " << p.render(result) << "\n";
  }
  return os.str();
}

}  // namespace qhorn

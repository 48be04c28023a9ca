#include "qhorn/extensions.hpp"

#include <algorithm>

namespace qhorn {
namespace {

std::vector<Literal> dedup(const Clause& c) {
  std::vector<Literal> out;
  for (const Literal& l : c.lits)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

bool contains(const Clause& c, const Literal& l) {
  return std::find(c.lits.begin(), c.lits.end(), l) != c.lits.end();
}

}  // namespace

Clause outer_clause(const Program& p, const Clause& c, const Literal& l) {
  if (!contains(c, l)) throw LiteralNotInClause();
  Clause out;
  for (const Literal& k : dedup(c)) {
    if (k == l) continue;
    if (compare_prefix_order(p, k, l) != Ordering::After) out.lits.push_back(k);
  }
  return out;
}

Clause outer_resolvent(const Program& p, const Clause& c, const Clause& d,
                       const Literal& l) {
  if (!contains(c, l)) throw LiteralNotInClause();
  if (!contains(d, l.negated())) throw ComplementMissing();
  Clause out;
  for (const Literal& k : dedup(c))
    if (k != l) out.lits.push_back(k);
  for (const Literal& k : outer_clause(p, d, l.negated()).lits)
    if (!contains(out, k)) out.lits.push_back(k);
  return out;
}

NewVarResolution resolve_new_variables(const Program& p, const Query& q) {
  bool changed = false;
  Query reduced = q;
  if (q.head && !p.occursInMatrix(*q.head)) {
    if (p.isExistential(*q.head))
      return NewVarResolution{NewVarResolution::Kind::AnsweredYes, {}};
    reduced.head.reset();
    reduced.kind = Query::Kind::Goal;
    changed = true;
  }
  std::vector<VarId> body;
  for (VarId v : q.body) {
    if (p.occursInMatrix(v)) {
      body.push_back(v);
      continue;
    }
    if (p.isExistential(v))
      return NewVarResolution{NewVarResolution::Kind::AnsweredYes, {}};
    changed = true;  // fresh universal: drops safely
  }
  if (!changed) return NewVarResolution{NewVarResolution::Kind::Unchanged, {}};
  reduced.body = std::move(body);
  return NewVarResolution{NewVarResolution::Kind::ReducedQuery,
                          std::move(reduced)};
}

namespace {

// Iterative Tarjan SCC over the 2-SAT implication graph.
struct Tarjan {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, low, comp;
  std::vector<bool> onStack;
  std::vector<int> stk;
  int counter = 0, comps = 0;

  explicit Tarjan(const std::vector<std::vector<int>>& g)
      : adj(g), index(g.size(), -1), low(g.size(), 0), comp(g.size(), -1),
        onStack(g.size(), false) {}

  void run(int root) {
    struct Frame { int v; std::size_t edge; };
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stk.push_back(root);
    onStack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stk.push_back(w);
          onStack[w] = true;
          frames.push_back({w, 0});
        } else if (onStack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          int w;
          do {
            w = stk.back();
            stk.pop_back();
            onStack[w] = false;
            comp[w] = comps;
          } while (w != f.v);
          ++comps;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
};

}  // namespace

std::optional<std::set<VarId>> detect_renaming(const Program& p) {
  const int n = static_cast<int>(p.varCount());
  // Node 2v+b: "flip(v) == b". A literal stays positive after flipping
  // exactly when flip(var) differs from its sign, so for each clause pair
  // (a, b) we forbid both staying positive: (flip(a)==sign(a)) or
  // (flip(b)==sign(b)).
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(2 * n));
  auto node = [](VarId v, bool val) { return 2 * v + (val ? 1 : 0); };
  auto addOr = [&](VarId va, bool xa, VarId vb, bool xb) {
    adj[static_cast<std::size_t>(node(va, !xa))].push_back(node(vb, xb));
    adj[static_cast<std::size_t>(node(vb, !xb))].push_back(node(va, xa));
  };
  for (const Clause& c : p.clauses()) {
    std::vector<Literal> lits = dedup(c);
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j)
        addOr(lits[i].var, lits[i].positive, lits[j].var, lits[j].positive);
    // A literal occurring twice would yield two positive copies, so it must
    // come out negative: force flip(var) == sign as a unit constraint.
    for (const Literal& l : lits) {
      if (std::count(c.lits.begin(), c.lits.end(), l) < 2) continue;
      adj[static_cast<std::size_t>(node(l.var, !l.positive))]
          .push_back(node(l.var, l.positive));
    }
  }
  Tarjan t(adj);
  for (int v = 0; v < 2 * n; ++v)
    if (t.index[static_cast<std::size_t>(v)] < 0) t.run(v);
  std::set<VarId> flips;
  for (VarId v = 0; v < n; ++v) {
    int cf = t.comp[static_cast<std::size_t>(node(v, false))];
    int ct = t.comp[static_cast<std::size_t>(node(v, true))];
    if (cf == ct) return std::nullopt;
    if (ct < cf) flips.insert(v);  // Tarjan numbers in reverse topological order
  }
  return flips;
}

}  // namespace qhorn

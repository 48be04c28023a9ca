#include "qhorn/fol.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qhorn {

void FOProgram::noteArity(const Atom& a) {
  auto [it, inserted] = arities_.emplace(a.pred, static_cast<int>(a.args.size()));
  if (!inserted && it->second != static_cast<int>(a.args.size()))
    throw ArityMismatch(a.pred);
}

void FOProgram::addClause(FOClause c) {
  int positives = 0;
  for (const FOLiteral& l : c.lits)
    if (l.positive) ++positives;
  if (positives > 1)
    throw NotHornError("first-order clause with two positive literals");
  std::set<std::string> declared;
  for (const auto& [name, q] : c.prefix) {
    (void)q;
    if (!declared.insert(name).second)
      throw DeclarationError("redeclared clause variable: " + name);
  }
  for (const FOLiteral& l : c.lits) {
    noteArity(l.atom);
    for (const Term& t : l.atom.args)
      if (t.kind == Term::Kind::Var && !declared.count(t.name))
        throw DeclarationError(t.name);
  }
  clauses_.push_back(std::move(c));
}

Term apply_substitution(const Term& t, const Substitution& s) {
  if (t.kind == Term::Kind::Var) {
    auto it = s.find(t.name);
    if (it != s.end()) return it->second;
  }
  return t;
}

Atom apply_substitution(const Atom& a, const Substitution& s) {
  Atom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply_substitution(t, s));
  return out;
}

FOClause apply_substitution(const FOClause& c, const Substitution& s) {
  FOClause out;
  for (const FOLiteral& l : c.lits)
    out.lits.push_back(FOLiteral{apply_substitution(l.atom, s), l.positive});
  // Keep only the prefix variables still occurring.
  for (const auto& [name, q] : c.prefix) {
    if (s.count(name)) continue;
    bool occurs = false;
    for (const FOLiteral& l : out.lits)
      for (const Term& t : l.atom.args)
        occurs = occurs || (t.kind == Term::Kind::Var && t.name == name);
    if (occurs) out.prefix.emplace_back(name, q);
  }
  // Variables introduced by the substitution keep their own quantifiers and
  // are not re-declared here; the clause prefix covers original variables.
  return out;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  auto walk = [&s](Term t) {
    while (t.kind == Term::Kind::Var) {
      auto it = s.find(t.name);
      if (it == s.end()) break;
      t = it->second;
    }
    return t;
  };
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    Term x = walk(a.args[i]);
    Term y = walk(b.args[i]);
    if (x == y) continue;
    if (x.kind == Term::Kind::Var && y.kind == Term::Kind::Var) {
      // Bind the universal side when only one is universal: a universal
      // variable can take the other as its value.
      if (x.quant == Quantifier::Universal)
        s[x.name] = y;
      else
        s[y.name] = x;
    } else if (x.kind == Term::Kind::Var) {
      s[x.name] = y;
    } else if (y.kind == Term::Kind::Var) {
      s[y.name] = x;
    } else {
      return std::nullopt;  // distinct constants
    }
  }
  for (auto& [name, t] : s) t = walk(t);
  return s;
}

bool compatible(const Atom& queryAtom, const Atom& ruleAtom) {
  if (queryAtom.pred != ruleAtom.pred) return false;
  if (queryAtom.args.size() != ruleAtom.args.size())
    throw ArityMismatch(queryAtom.pred);
  for (std::size_t i = 0; i < queryAtom.args.size(); ++i) {
    const Term& r = ruleAtom.args[i];
    if (r.kind == Term::Kind::Var && r.quant == Quantifier::Universal)
      continue;  // condition (1)
    const Term& q = queryAtom.args[i];
    if (q.kind == Term::Kind::Var && q.quant == Quantifier::Universal)
      return false;  // condition (2) violated
  }
  return true;
}

std::string canonical_atom(const Atom& a) {
  std::map<std::string, int> number;
  std::ostringstream os;
  os << a.pred << "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ",";
    const Term& t = a.args[i];
    if (t.kind == Term::Kind::Const) {
      os << t.name;
    } else {
      auto [it, ins] = number.emplace(t.name, static_cast<int>(number.size()));
      os << "?" << it->second
         << (t.quant == Quantifier::Universal ? "A" : "E");
      (void)ins;
    }
  }
  os << ")";
  return os.str();
}

namespace {

struct CeilingHit {};

struct FOCtx {
  std::vector<FOClause> clauses;  // facts (definite query) then the program
  FOLimits lim;
  std::map<std::string, SolveState> state;
  std::vector<std::string> order;
  int fresh = 0;
  int depth = 0;
};

FOClause standardizeApart(FOCtx& ctx, const FOClause& c) {
  Substitution ren;
  FOClause out;
  for (const auto& [name, q] : c.prefix) {
    std::string fresh = "_" + std::to_string(ctx.fresh++);
    ren[name] = fovar(fresh, q);
    out.prefix.emplace_back(fresh, q);
  }
  for (const FOLiteral& l : c.lits)
    out.lits.push_back(FOLiteral{apply_substitution(l.atom, ren), l.positive});
  return out;
}

SolveState refutation(FOCtx& ctx, const Atom& goal);

SolveState testClause(FOCtx& ctx, const FOClause& instance,
                      const Substitution& sigma) {
  bool infflag = false;
  for (const FOLiteral& l : instance.lits) {
    if (l.positive) continue;
    SolveState r = refutation(ctx, apply_substitution(l.atom, sigma));
    switch (r) {
      case SolveState::Yes:
        break;
      case SolveState::Inf:
        infflag = true;
        break;
      case SolveState::Loop:
        return SolveState::Loop;
      default:  // No
        return infflag ? SolveState::Loop : SolveState::No;
    }
  }
  return infflag ? SolveState::Inf : SolveState::Yes;
}

SolveState refutation(FOCtx& ctx, const Atom& goal) {
  std::string key = canonical_atom(goal);
  auto it = ctx.state.find(key);
  if (it != ctx.state.end()) return it->second;  // final or provisional Loop
  if (ctx.state.size() >= ctx.lim.maxCanonicalAtoms) throw CeilingHit{};
  if (ctx.depth >= ctx.lim.maxDepth) throw CeilingHit{};

  // Side-clause candidates in program order: matching head predicate,
  // quantifier-compatible, unifiable.
  struct Cand {
    FOClause instance;
    Substitution sigma;
  };
  std::vector<Cand> cands;
  for (const FOClause& c : ctx.clauses) {
    const FOLiteral* h = c.head();
    if (!h || h->atom.pred != goal.pred) continue;
    FOClause inst = standardizeApart(ctx, c);
    const FOLiteral* ih = inst.head();
    if (!compatible(goal, ih->atom)) continue;
    std::optional<Substitution> sigma = unify(goal, ih->atom);
    if (!sigma) continue;
    cands.push_back(Cand{std::move(inst), std::move(*sigma)});
  }
  auto store = [&](SolveState s) {
    ctx.state[key] = s;
    return s;
  };
  ctx.order.push_back(key);
  if (cands.empty()) return store(SolveState::No);

  store(SolveState::Loop);  // first initialization: recursive re-entry
  ++ctx.depth;
  SolveState result = SolveState::No;
  std::size_t idx = 0;
  for (; idx < cands.size(); ++idx) {
    result = testClause(ctx, cands[idx].instance, cands[idx].sigma);
    if (result != SolveState::No) break;
  }
  if (result != SolveState::Yes) {
    --ctx.depth;
    return store(result == SolveState::No ? SolveState::No : result);
  }
  store(SolveState::Inf);  // second initialization
  bool infflag = false;
  for (++idx; !infflag && idx < cands.size(); ++idx) {
    SolveState r = testClause(ctx, cands[idx].instance, cands[idx].sigma);
    infflag = (r == SolveState::Loop || r == SolveState::Inf);
  }
  --ctx.depth;
  return store(infflag ? SolveState::Inf : SolveState::Yes);
}

}  // namespace

FOResult fol_output(const FOProgram& p, const FOQuery& q, const FOLimits& lim) {
  // Arity consistency between query and program.
  FOProgram arityCheck = p;
  if (q.head) arityCheck.noteArity(*q.head);
  for (const Atom& a : q.body) arityCheck.noteArity(a);

  FOCtx ctx;
  ctx.lim = lim;
  std::vector<Atom> goals;
  if (q.kind == FOQuery::Kind::Definite) {
    // Negated query: the body atoms join the program as facts ahead of the
    // original clauses, the head becomes the goal.
    for (const Atom& a : q.body) {
      FOClause fact;
      for (const auto& [name, quant] : q.prefix)
        for (const Term& t : a.args)
          if (t.kind == Term::Kind::Var && t.name == name) {
            fact.prefix.emplace_back(name, quant);
            break;
          }
      fact.lits.push_back(FOLiteral{a, true});
      ctx.clauses.push_back(std::move(fact));
    }
    goals.push_back(*q.head);
  } else {
    goals = q.body;
  }
  for (const FOClause& c : p.clauses()) ctx.clauses.push_back(c);

  FOResult res;
  res.verdict = Verdict::Yes;
  try {
    for (const Atom& g : goals) {
      SolveState r = refutation(ctx, g);
      if (r == SolveState::No) {
        res.verdict = Verdict::No;
        break;
      }
      if (r == SolveState::Loop) {
        res.verdict = Verdict::Loop;
        break;
      }
    }
  } catch (const CeilingHit&) {
    res.verdict = Verdict::Loop;  // runaway growth reported as loop
  }
  for (const std::string& k : ctx.order)
    res.states.emplace_back(k, ctx.state.at(k));
  return res;
}

std::string ground_atom_name(const Atom& a) {
  std::ostringstream os;
  os << a.pred << "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ",";
    if (a.args[i].kind != Term::Kind::Const)
      throw RangeError("grounding left a free variable in " + a.pred);
    os << a.args[i].name;
  }
  os << ")";
  return os.str();
}

Program ground_program(const FOProgram& p,
                       const std::vector<std::string>& universe) {
  if (universe.empty()) throw RangeError("empty grounding universe");
  Program out;
  auto ensure = [&out](const std::string& name) {
    if (auto v = out.tryVarId(name)) return *v;
    return out.declare(name, Quantifier::Existential);
  };
  for (const FOClause& c : p.clauses()) {
    for (const auto& [name, q] : c.prefix) {
      (void)name;
      if (q != Quantifier::Universal)
        throw RangeError("clause-level existential cannot be grounded");
    }
    std::vector<std::size_t> pick(c.prefix.size(), 0);
    while (true) {
      Substitution s;
      for (std::size_t i = 0; i < c.prefix.size(); ++i)
        s[c.prefix[i].first] = foconst(universe[pick[i]]);
      Clause ground;
      for (const FOLiteral& l : c.lits) {
        VarId v = ensure(ground_atom_name(apply_substitution(l.atom, s)));
        ground.lits.push_back(Literal{v, l.positive});
      }
      out.addClause(std::move(ground));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < universe.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  return out;
}

}  // namespace qhorn

#include "qhorn/solver.hpp"

#include <sstream>

namespace qhorn {

const char* to_string(SolveState s) {
  switch (s) {
    case SolveState::New: return "new";
    case SolveState::Yes: return "yes";
    case SolveState::No: return "no";
    case SolveState::Loop: return "loop";
    case SolveState::Inf: return "inf";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Loop: return "loop";
  }
  return "?";
}

Solver::Solver(const Program& pprime)
    : p_(pprime),
      locHOff_(pprime.varCount() + 1, 0),
      st_(pprime.varCount(), SolveState::New) {
  auto headOf = [this](const Clause& c) -> VarId {
    for (const Literal& l : c.lits)
      if (l.positive && p_.isExistential(l.var)) return l.var;
    return -1;
  };
  for (const Clause& c : p_.clauses()) {
    if (!is_horn(c)) throw NotHornError("solver requires a Horn program");
    VarId h = headOf(c);
    if (h >= 0) ++locHOff_[static_cast<std::size_t>(h) + 1];
  }
  for (std::size_t v = 1; v < locHOff_.size(); ++v) locHOff_[v] += locHOff_[v - 1];
  locHFlat_.resize(locHOff_.back());
  std::vector<std::size_t> fill(locHOff_.begin(), locHOff_.end() - 1);
  for (std::size_t i = 0; i < p_.clauses().size(); ++i) {
    VarId h = headOf(p_.clauses()[i]);
    if (h >= 0) locHFlat_[fill[static_cast<std::size_t>(h)]++] = static_cast<int>(i);
  }
}

void Solver::reset() {
  st_.assign(p_.varCount(), SolveState::New);
  work_ = 0;
  stack_.clear();
  haveRet_ = false;
}

BlockStatus Solver::comp_block(VarId u, const Clause& c) const {
  int lu = p_.var(u).level;
  for (const Literal& l : c.lits) {
    if (l.positive || !p_.isExistential(l.var)) continue;
    if (p_.var(l.var).level < lu) continue;
    SolveState s = st_[static_cast<std::size_t>(l.var)];
    if (s == SolveState::No || s == SolveState::Loop)
      return BlockStatus::BlockedYes;
  }
  return BlockStatus::BlockedNo;
}

void Solver::finish(SolveState s) {
  ret_ = s;
  haveRet_ = true;
  stack_.pop_back();
}

void Solver::callRefutation(VarId x) {
  ++work_;
  SolveState cur = st_[static_cast<std::size_t>(x)];
  if (cur != SolveState::New) {  // memoized, or a recursive re-entry
    ret_ = cur;
    haveRet_ = true;
    return;
  }
  std::size_t xi = static_cast<std::size_t>(x);
  if (locHOff_[xi] == locHOff_[xi + 1]) {
    st_[static_cast<std::size_t>(x)] = SolveState::No;
    ret_ = SolveState::No;
    haveRet_ = true;
    return;
  }
  // First initialization: a recursive call back into x must see loop.
  st_[xi] = SolveState::Loop;
  stack_.push_back(RefFrame{x, locHOff_[xi]});
  haveRet_ = false;
}

void Solver::stepRef(RefFrame& f) {
  std::size_t end = locHOff_[static_cast<std::size_t>(f.x) + 1];
  if (haveRet_) {
    haveRet_ = false;
    SolveState r = ret_;
    if (!f.second) {
      if (r == SolveState::No) {
        ++f.idx;
      } else if (r == SolveState::Yes) {
        // Second initialization: one refutation found, now look for more.
        st_[static_cast<std::size_t>(f.x)] = SolveState::Inf;
        f.second = true;
        ++f.idx;
      } else {  // loop or inf: the answer
        st_[static_cast<std::size_t>(f.x)] = r;
        finish(r);
        return;
      }
    } else {
      if (r == SolveState::Loop || r == SolveState::Inf) f.infflag = true;
      ++f.idx;
    }
  }
  if (!f.second) {
    if (f.idx == end) {
      st_[static_cast<std::size_t>(f.x)] = SolveState::No;
      finish(SolveState::No);
      return;
    }
  } else if (f.infflag || f.idx == end) {
    SolveState s = f.infflag ? SolveState::Inf : SolveState::Yes;
    st_[static_cast<std::size_t>(f.x)] = s;
    finish(s);
    return;
  }
  stack_.push_back(
      TcFrame{&p_.clauses()[static_cast<std::size_t>(locHFlat_[f.idx])]});
  haveRet_ = false;
}

void Solver::stepTc(TcFrame& f) {
  const Clause& c = *f.clause;
  if (haveRet_) {
    // Refutation result for the body literal at pos.
    haveRet_ = false;
    switch (ret_) {
      case SolveState::Yes:
        break;
      case SolveState::Inf:
        f.infflag = true;
        break;
      case SolveState::Loop:
        finish(SolveState::Loop);
        return;
      default:  // No
        finish(f.infflag ? SolveState::Loop : SolveState::No);
        return;
    }
    ++f.pos;
  }
  while (f.pos < c.size()) {
    const Literal& l = c.lits[f.pos];
    ++work_;
    if (l.positive || p_.isUniversal(l.var)) {
      // Head skipped; universal body literals deferred to the end.
      ++f.pos;
      continue;
    }
    callRefutation(l.var);
    return;  // result handled on re-entry (possibly immediately)
  }
  // Walk ended Yes/Inf: resolve the deferred universals with the states of
  // the existentials now settled.
  for (const Literal& l : c.lits) {
    if (l.positive || !p_.isUniversal(l.var)) continue;
    ++work_;
    if (comp_block(l.var, c) == BlockStatus::BlockedYes) {
      finish(f.infflag ? SolveState::Loop : SolveState::No);
      return;
    }
  }
  finish(f.infflag ? SolveState::Inf : SolveState::Yes);
}

SolveState Solver::run() {
  while (!stack_.empty()) {
    if (RefFrame* rf = std::get_if<RefFrame>(&stack_.back()))
      stepRef(*rf);
    else
      stepTc(std::get<TcFrame>(stack_.back()));
  }
  haveRet_ = false;
  return ret_;
}

SolveState Solver::refutation_state(VarId x) {
  if (!p_.isExistential(x)) throw UniversalPivot(p_.var(x).name);
  callRefutation(x);
  if (haveRet_) {
    haveRet_ = false;
    return ret_;
  }
  return run();
}

SolveState Solver::test_clause(const Clause& c) {
  stack_.push_back(TcFrame{&c});
  haveRet_ = false;
  return run();
}

SolveResult output(const Program& p, const Query& q) {
  RefutationInput in = build_refutation_input(p, q);
  SolveResult res;
  res.pprime = std::move(in.pprime);
  res.topGoal = std::move(in.topGoal);
  Solver s(res.pprime);
  Verdict v = Verdict::Yes;
  for (const Literal& l : res.topGoal.lits) {
    if (res.pprime.isUniversal(l.var)) continue;
    SolveState r = s.refutation_state(l.var);
    if (r == SolveState::No) {
      v = Verdict::No;
      break;
    }
    if (r == SolveState::Loop) {
      v = Verdict::Loop;
      break;
    }
  }
  res.verdict = v;
  res.work = s.work();
  for (VarId x : res.pprime.prefixOrder())
    if (res.pprime.isExistential(x)) res.states.emplace_back(x, s.state(x));
  return res;
}

std::string render_states(const SolveResult& r) {
  std::ostringstream os;
  for (const auto& [x, s] : r.states)
    os << r.pprime.var(x).name << " = " << to_string(s) << "\n";
  return os.str();
}

}  // namespace qhorn

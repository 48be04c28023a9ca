#include "qhorn/formula.hpp"

#include <algorithm>
#include <sstream>

namespace qhorn {

void Program::ensureIndex() const {
  if (byName_.size() == vars_.size()) return;
  byName_.clear();
  byName_.reserve(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i)
    byName_.emplace(vars_[i].name, static_cast<VarId>(i));
}

VarId Program::declare(const std::string& name, Quantifier q) {
  ensureIndex();
  if (byName_.count(name))
    throw DeclarationError("redeclared variable: " + name);
  if (blocks_.empty() || blocks_.back().quant != q)
    blocks_.push_back(Block{q, {}});
  VarId id = static_cast<VarId>(vars_.size());
  Block& blk = blocks_.back();
  vars_.push_back(VarInfo{name, q, static_cast<int>(blocks_.size()),
                          static_cast<int>(blk.vars.size())});
  blk.vars.push_back(id);
  byName_.emplace(name, id);
  return id;
}

void Program::reserve(std::size_t vars, std::size_t clauses) {
  vars_.reserve(vars);
  byName_.reserve(vars);
  blocks_.reserve(vars + 1);
  clauses_.reserve(clauses);
}

void Program::mergeLeadingBlocks(int i) {
  if (i < 0 || static_cast<std::size_t>(i) > blocks_.size())
    throw RangeError("abstraction index out of range");
  bool changed = false;
  for (int b = 0; b < i && !changed; ++b)
    changed = blocks_[static_cast<std::size_t>(b)].quant != Quantifier::Existential;
  if (!changed && i <= 1) return;  // nothing re-quantified, nothing coalesces
  std::vector<Block> old = std::move(blocks_);
  blocks_.clear();
  for (std::size_t b = 0; b < old.size(); ++b) {
    Quantifier q = static_cast<int>(b) < i ? Quantifier::Existential
                                           : old[b].quant;
    if (blocks_.empty() || blocks_.back().quant != q)
      blocks_.push_back(Block{q, {}});
    Block& blk = blocks_.back();
    for (VarId v : old[b].vars) {
      VarInfo& info = vars_[static_cast<std::size_t>(v)];
      info.quant = q;
      info.level = static_cast<int>(blocks_.size());
      info.blockPos = static_cast<int>(blk.vars.size());
      blk.vars.push_back(v);
    }
  }
}

void Program::prependClause(Clause c) {
  for (const Literal& l : c.lits)
    if (l.var < 0 || static_cast<std::size_t>(l.var) >= vars_.size())
      throw DeclarationError("bad variable id in clause");
  clauses_.insert(clauses_.begin(), std::move(c));
}

void Program::addClause(Clause c) {
  for (const Literal& l : c.lits)
    if (l.var < 0 || static_cast<std::size_t>(l.var) >= vars_.size())
      throw DeclarationError("bad variable id in clause");
  clauses_.push_back(std::move(c));
}

VarId Program::varId(const std::string& name) const {
  ensureIndex();
  auto it = byName_.find(name);
  if (it == byName_.end()) throw DeclarationError(name);
  return it->second;
}

std::optional<VarId> Program::tryVarId(const std::string& name) const {
  ensureIndex();
  auto it = byName_.find(name);
  if (it == byName_.end()) return std::nullopt;
  return it->second;
}

std::vector<VarId> Program::prefixOrder() const {
  std::vector<VarId> out;
  out.reserve(vars_.size());
  for (const Block& b : blocks_)
    for (VarId v : b.vars) out.push_back(v);
  return out;
}

bool Program::occursInMatrix(VarId v) const {
  for (const Clause& c : clauses_)
    for (const Literal& l : c.lits)
      if (l.var == v) return true;
  return false;
}

std::string Program::render(const Literal& l) const {
  return (l.positive ? "" : "~") + var(l.var).name;
}

std::string Program::render(const Clause& c) const {
  if (c.empty()) return "[]";
  std::ostringstream os;
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) os << " ";
    os << render(c.lits[i]);
  }
  return os.str();
}

std::string Program::renderPrefix() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << " ";
    os << (blocks_[i].quant == Quantifier::Existential ? "exists" : "forall");
    for (VarId v : blocks_[i].vars) os << " " << var(v).name;
  }
  return os.str();
}

bool operator==(const Program& a, const Program& b) {
  if (a.vars_.size() != b.vars_.size() ||
      a.blocks_.size() != b.blocks_.size() ||
      a.clauses_.size() != b.clauses_.size())
    return false;
  for (std::size_t i = 0; i < a.vars_.size(); ++i) {
    const VarInfo &x = a.vars_[i], &y = b.vars_[i];
    if (x.name != y.name || x.quant != y.quant || x.level != y.level)
      return false;
  }
  for (std::size_t i = 0; i < a.blocks_.size(); ++i)
    if (a.blocks_[i].quant != b.blocks_[i].quant ||
        a.blocks_[i].vars != b.blocks_[i].vars)
      return false;
  return a.clauses_ == b.clauses_;
}

int level_of(const Program& p, const Literal& l) {
  if (l.var < 0 || static_cast<std::size_t>(l.var) >= p.varCount())
    throw DeclarationError("bad variable id");
  return p.var(l.var).level;
}

Ordering compare_prefix_order(const Program& p, const Literal& l,
                              const Literal& k) {
  if (l.var == k.var) return Ordering::Same;
  const VarInfo& a = p.var(l.var);
  const VarInfo& b = p.var(k.var);
  if (a.level != b.level)
    return a.level < b.level ? Ordering::Before : Ordering::After;
  return a.blockPos < b.blockPos ? Ordering::Before : Ordering::After;
}

ClauseKind classify_clause(const Program& p, const Clause& c) {
  std::optional<VarId> head;
  for (const Literal& l : c.lits) {
    if (!l.positive) continue;
    if (head) throw NotHornError("clause has two positive literals");
    head = l.var;
  }
  if (!head) return ClauseKind::Goal;
  return p.isExistential(*head) ? ClauseKind::DefiniteExistentialHead
                                : ClauseKind::DefiniteUniversalHead;
}

bool is_horn(const Clause& c) {
  int positives = 0;
  for (const Literal& l : c.lits)
    if (l.positive) ++positives;
  return positives <= 1;
}

bool is_horn(const Program& p) {
  return std::all_of(p.clauses().begin(), p.clauses().end(),
                     [](const Clause& c) { return is_horn(c); });
}

Program apply_renaming(const Program& p, const std::set<VarId>& flip) {
  Program out;
  for (const Block& b : p.blocks())
    for (VarId v : b.vars) out.declare(p.var(v).name, b.quant);
  for (const Clause& c : p.clauses()) {
    Clause d = c;
    for (Literal& l : d.lits)
      if (flip.count(l.var)) l.positive = !l.positive;
    out.addClause(std::move(d));
  }
  return out;
}

}  // namespace qhorn

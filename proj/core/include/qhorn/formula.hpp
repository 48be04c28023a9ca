#ifndef QHORN_FORMULA_HPP_
#define QHORN_FORMULA_HPP_

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "qhorn/errors.hpp"

namespace qhorn {

enum class Quantifier { Existential, Universal };

using VarId = int;

struct Literal {
  VarId var = -1;
  bool positive = true;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.var == b.var && a.positive == b.positive;
  }
  friend bool operator!=(const Literal& a, const Literal& b) {
    return !(a == b);
  }
  friend bool operator<(const Literal& a, const Literal& b) {
    return a.var != b.var ? a.var < b.var : a.positive < b.positive;
  }
  Literal negated() const { return Literal{var, !positive}; }
};

inline Literal pos(VarId v) { return Literal{v, true}; }
inline Literal neg(VarId v) { return Literal{v, false}; }

/// Clauses are ordered lists with multiset semantics: duplicate literals are
/// retained, never merged.
struct Clause {
  std::vector<Literal> lits;

  bool empty() const { return lits.empty(); }
  std::size_t size() const { return lits.size(); }
  friend bool operator==(const Clause& a, const Clause& b) {
    return a.lits == b.lits;
  }
};

enum class ClauseKind { DefiniteExistentialHead, DefiniteUniversalHead, Goal };

struct Block {
  Quantifier quant;
  std::vector<VarId> vars;  // declaration order, significant
};

struct VarInfo {
  std::string name;
  Quantifier quant;
  int level = 0;     // 1-based block index
  int blockPos = 0;  // declaration position within the block
};

enum class Ordering { Before, Same, After };

/// A quantified Boolean Horn program: a prenex prefix plus an ordered clause
/// list. Clause order and literal order are part of the program's meaning.
/// Values are immutable after construction and safe to share across threads.
class Program {
 public:
  Program() = default;
  // The name index is derived from vars_ and rebuilt on demand; skipping it
  // in copies keeps per-query program rebuilds allocation-light.
  Program(const Program& o)
      : blocks_(o.blocks_), vars_(o.vars_), clauses_(o.clauses_) {}
  Program& operator=(const Program& o) {
    blocks_ = o.blocks_;
    vars_ = o.vars_;
    clauses_ = o.clauses_;
    byName_.clear();
    return *this;
  }
  Program(Program&&) = default;
  Program& operator=(Program&&) = default;

  /// Declares a fresh variable in a new or the current trailing block.
  /// Adjacent same-quantifier declarations share one block.
  VarId declare(const std::string& name, Quantifier q);

  /// Pre-sizes the variable and clause storage (rebuilds at chain-benchmark
  /// scale are otherwise dominated by rehashing).
  void reserve(std::size_t vars, std::size_t clauses);

  /// Re-quantifies the first i blocks as existential and coalesces adjacent
  /// same-quantifier blocks, exactly as if the prefix had been declared that
  /// way. Variable ids and names are unchanged. Throws RangeError if i is
  /// not in [0, blocks()].
  void mergeLeadingBlocks(int i);

  /// Inserts a clause ahead of the existing ones.
  void prependClause(Clause c);

  /// Adds a clause; literals must reference declared variables. No Horn
  /// check here -- renaming detection needs to hold non-Horn clause sets.
  void addClause(Clause c);

  VarId varId(const std::string& name) const;
  std::optional<VarId> tryVarId(const std::string& name) const;
  const VarInfo& var(VarId v) const { return vars_.at(static_cast<std::size_t>(v)); }
  std::size_t varCount() const { return vars_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool isExistential(VarId v) const {
    return var(v).quant == Quantifier::Existential;
  }
  bool isUniversal(VarId v) const {
    return var(v).quant == Quantifier::Universal;
  }

  /// Variables in prefix order (blocks concatenated).
  std::vector<VarId> prefixOrder() const;

  /// True iff the variable occurs in some clause of the matrix.
  bool occursInMatrix(VarId v) const;

  std::string render(const Literal& l) const;
  std::string render(const Clause& c) const;
  std::string renderPrefix() const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  void ensureIndex() const;

  std::vector<Block> blocks_;
  std::vector<VarInfo> vars_;
  mutable std::unordered_map<std::string, VarId> byName_;
  std::vector<Clause> clauses_;
};

/// A query clause: `? h :- b1,...,bn.` (definite) or `?- g1,...,gn.` (goal).
/// Body entries are the variables to be proven.
struct Query {
  enum class Kind { Definite, Goal };
  Kind kind = Kind::Goal;
  std::optional<VarId> head;  // set iff Definite
  std::vector<VarId> body;

  /// The query as a Horn clause (head positive, body negated).
  Clause asClause() const {
    Clause c;
    if (head) c.lits.push_back(pos(*head));
    for (VarId v : body) c.lits.push_back(neg(v));
    return c;
  }
};

// ---- formula-core operations ----

/// Block index of the literal's variable (1-based).
int level_of(const Program& p, const Literal& l);

/// Total preorder on literals: by level, then by declaration order within a
/// block; Same iff same variable.
Ordering compare_prefix_order(const Program& p, const Literal& l,
                              const Literal& k);

/// Classification by the unique positive literal; throws NotHornError if the
/// clause has two or more positive literals.
ClauseKind classify_clause(const Program& p, const Clause& c);

bool is_horn(const Clause& c);
bool is_horn(const Program& p);

/// Flips the polarity of every literal over a variable in `flip`. Prefix,
/// clause order and literal order are untouched. Involution.
Program apply_renaming(const Program& p, const std::set<VarId>& flip);

}  // namespace qhorn

#endif  // QHORN_FORMULA_HPP_

#ifndef QHORN_SLDQ_HPP_
#define QHORN_SLDQ_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qhorn/formula.hpp"

namespace qhorn {

struct ResolveStep {
  int sideIndex;  // clause index in the program resolved against
  VarId pivot;
};

struct ForallReduceStep {
  VarId var;  // removes every occurrence of this universal variable
};

using Step = std::variant<ResolveStep, ForallReduceStep>;

/// A checkable SLD-Q derivation: top goal plus the step list, each step
/// recording the resulting goal clause.
struct Derivation {
  Clause topGoal;
  std::vector<std::pair<Step, Clause>> steps;

  const Clause& finalGoal() const {
    return steps.empty() ? topGoal : steps.back().second;
  }
  bool refutes() const { return finalGoal().empty(); }
};

struct SearchOutcome {
  enum class Kind { Found, NotFound, BudgetExhausted };
  Kind kind = Kind::NotFound;
  // Found: the full refutation. BudgetExhausted: the partial trace at cutoff.
  std::optional<Derivation> derivation;

  bool found() const { return kind == Kind::Found; }
};

/// Bounded expansion of the refutation tree T_P(goal): every node branches
/// over all side clauses whose head matches the selected literal. Used for
/// DOT export.
struct RefTreeNode {
  Clause goal;
  enum class Kind { Internal, Empty, DeadEnd, Repeat, CapHit } kind;
  struct Edge {
    bool isReduce;
    int sideIndex;  // valid when !isReduce
    VarId var;      // pivot, or the reduced variable
    int child;
  };
  std::vector<Edge> children;
};

struct RefutationTree {
  std::vector<RefTreeNode> nodes;  // node 0 is the root
};

/// Maximum block index among the clause's literals; 0 for the empty clause.
int max_level(const Program& p, const Clause& c);
int max_level(const Program& p, const Query& q);

/// Prefix with the first i blocks collapsed into one existential block;
/// matrix unchanged.
Program build_abstraction(const Program& p, int i);

/// The program P' and top goal the refutation search runs on. For a definite
/// query x <- x1..xn: abstraction at the query's max level, with the unit
/// facts x1..xn placed ahead of the program clauses, top goal (~x). For a
/// goal query: the program unchanged, top goal (~g1 ... ~gn).
struct RefutationInput {
  Program pprime;
  Clause topGoal;
};
RefutationInput build_refutation_input(const Program& p, const Query& q);

/// One list-resolution step with the pivot at the front of the centre clause
/// and the side clause head at the front: rest(side) ++ rest(centre),
/// duplicates retained.
Clause resolve_prolog(const Program& p, const Clause& center,
                      const Clause& side);

/// True iff the universal variable has no existential literal of equal or
/// higher level in the clause.
bool universal_unblocked(const Program& p, const Clause& c, VarId u);

/// Removes every unblocked universal literal. Idempotent.
Clause forall_reduce(const Program& p, const Clause& c);

struct CheckResult {
  bool ok = true;
  std::string reason;
  operator bool() const { return ok; }
};

/// Validates a derivation against the program: top goal membership (or the
/// supplied constructed goal), existential pivots, correct resolvents,
/// unblocked reductions, chained intermediates. Resolvents are compared as
/// multisets so derivations from the all-orders search check too.
CheckResult check_derivation(const Program& p, const Derivation& d,
                             const std::optional<Clause>& allowedTop = std::nullopt);

/// Depth-first, clause-order, left-to-right search with backtracking; each
/// resolvent is forall-reduced immediately after concatenation. The budget
/// counts resolution steps.
SearchOutcome search_recursive(const Program& pprime, const Clause& goal,
                               long budget = 10000);

/// All-orders SLD-Q-Res search (any pivot occurrence, any side clause, any
/// reduction) up to the given derivation length. Completeness harness.
std::optional<Derivation> exhaustive_search(const Program& pprime,
                                            const Clause& goal, int depthCap,
                                            int varCap = 20);

/// Bounded full refutation tree; repeated ancestor goals become Repeat
/// leaves.
RefutationTree build_refutation_tree(const Program& pprime, const Clause& goal,
                                     int maxNodes = 512, int maxDepth = 64);

/// Stable one-line-per-step trace: `R <side-index> on <var>` or `U <var>`,
/// each followed by the rendered goal list.
std::string render_trace(const Program& p, const Derivation& d);

}  // namespace qhorn

#endif  // QHORN_SLDQ_HPP_

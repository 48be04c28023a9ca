#ifndef QHORN_EXTENSIONS_HPP_
#define QHORN_EXTENSIONS_HPP_

#include <optional>
#include <set>
#include <variant>

#include "qhorn/formula.hpp"

namespace qhorn {

/// OC(Pi, C, l): the literals k of C with k <=_Pi l and k != l, in clause
/// order over a deduplicated view of C. Throws LiteralNotInClause.
Clause outer_clause(const Program& p, const Clause& c, const Literal& l);

/// OR(Pi, C, D, l) = (C \ {l}) union OC(Pi, D, ~l), set-based. Requires
/// l in C and ~l in D.
Clause outer_resolvent(const Program& p, const Clause& c, const Clause& d,
                       const Literal& l);

/// Outcome of pre-processing a query whose variables need not occur in the
/// program matrix.
struct NewVarResolution {
  enum class Kind { AnsweredYes, ReducedQuery, Unchanged };
  Kind kind = Kind::Unchanged;
  std::optional<Query> query;  // set iff ReducedQuery
};

/// A query literal over a variable absent from the matrix: existential ->
/// the answer is yes outright; universal -> the literal drops. Variables
/// must still be declared in the prefix.
NewVarResolution resolve_new_variables(const Program& p, const Query& q);

/// A flip set S such that apply_renaming(p, S) is Horn, or nullopt when no
/// renaming exists. Quantifiers are ignored; 2-SAT over one indicator per
/// variable, solved by implication-graph SCCs.
std::optional<std::set<VarId>> detect_renaming(const Program& p);

}  // namespace qhorn

#endif  // QHORN_EXTENSIONS_HPP_

#ifndef QHORN_FOL_HPP_
#define QHORN_FOL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhorn/solver.hpp"

namespace qhorn {

/// Datalog-like terms: variables (tagged with their clause-level quantifier)
/// and constants. No function symbols.
struct Term {
  enum class Kind { Var, Const };
  Kind kind = Kind::Const;
  std::string name;
  Quantifier quant = Quantifier::Existential;  // meaningful for Var only

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name &&
           (a.kind == Term::Kind::Const || a.quant == b.quant);
  }
};

inline Term fovar(std::string name, Quantifier q) {
  return Term{Term::Kind::Var, std::move(name), q};
}
inline Term foconst(std::string name) {
  return Term{Term::Kind::Const, std::move(name), Quantifier::Existential};
}

struct Atom {
  std::string pred;
  std::vector<Term> args;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.pred == b.pred && a.args == b.args;
  }
};

struct FOLiteral {
  Atom atom;
  bool positive = true;
};

/// A Horn clause with its own quantifier prefix (ordered variable
/// declarations). The head, when present, is the first literal.
struct FOClause {
  std::vector<std::pair<std::string, Quantifier>> prefix;
  std::vector<FOLiteral> lits;

  const FOLiteral* head() const {
    for (const FOLiteral& l : lits)
      if (l.positive) return &l;
    return nullptr;
  }
};

class FOProgram {
 public:
  /// Validates Horn shape, arity consistency across the program, and that
  /// every clause variable is declared in the clause prefix.
  void addClause(FOClause c);
  const std::vector<FOClause>& clauses() const { return clauses_; }
  const std::map<std::string, int>& arities() const { return arities_; }
  void noteArity(const Atom& a);  // shared with query validation

 private:
  std::vector<FOClause> clauses_;
  std::map<std::string, int> arities_;
};

struct FOQuery {
  enum class Kind { Definite, Goal };
  Kind kind = Kind::Goal;
  std::vector<std::pair<std::string, Quantifier>> prefix;
  std::optional<Atom> head;  // set iff Definite
  std::vector<Atom> body;
};

/// Variable name -> term. Normalized: no identity bindings, bindings do not
/// mention bound variables.
using Substitution = std::map<std::string, Term>;

Term apply_substitution(const Term& t, const Substitution& s);
Atom apply_substitution(const Atom& a, const Substitution& s);
FOClause apply_substitution(const FOClause& c, const Substitution& s);

/// Most general unifier, or nullopt on predicate/arity/constant clash.
std::optional<Substitution> unify(const Atom& a, const Atom& b);

/// The quantifier-compatibility filter for side-clause selection: at every
/// argument index the rule argument is universal, or it is existential (a
/// constant counts as existential) and the query argument is too. Throws
/// ArityMismatch when the shared predicate's arities differ.
bool compatible(const Atom& queryAtom, const Atom& ruleAtom);

/// Canonical form used as the state-memo key: variables renumbered by first
/// occurrence, quantifier tags kept, constants verbatim.
std::string canonical_atom(const Atom& a);

struct FOLimits {
  std::size_t maxCanonicalAtoms = 100000;
  int maxDepth = 5000;
};

struct FOResult {
  Verdict verdict = Verdict::No;
  /// canonical atom -> final state, insertion order of first touch.
  std::vector<std::pair<std::string, SolveState>> states;
};

/// The linear solver lifted to predicates: goal atoms are refuted through
/// the five-state machine with states memoized per canonical atom; side
/// clauses are standardized apart, filtered by predicate, compatible() and
/// unifiability, and the MGU is applied to the body. Exceeding the
/// canonical-atom ceiling or the recursion depth reports loop.
FOResult fol_output(const FOProgram& p, const FOQuery& q,
                    const FOLimits& lim = {});

/// Propositional grounding over the given constant universe, one
/// existential variable per ground atom. Every clause prefix must be purely
/// universal (throws RangeError otherwise: existential clause variables
/// have no sound propositional expansion here).
Program ground_program(const FOProgram& p, const std::vector<std::string>& universe);

/// The propositional variable name a ground atom receives.
std::string ground_atom_name(const Atom& a);

}  // namespace qhorn

#endif  // QHORN_FOL_HPP_

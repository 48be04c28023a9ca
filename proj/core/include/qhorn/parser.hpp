#ifndef QHORN_PARSER_HPP_
#define QHORN_PARSER_HPP_

#include <string>
#include <vector>

#include "qhorn/fol.hpp"
#include "qhorn/formula.hpp"

namespace qhorn {

/// One parsed `.qhp` unit. `mode` selects which pair of members is
/// meaningful; queries appear in source order.
struct SourceUnit {
  enum class Mode { Propositional, FirstOrder };
  Mode mode = Mode::Propositional;
  Program program;
  std::vector<Query> queries;
  FOProgram foProgram;
  std::vector<FOQuery> foQueries;
};

struct ParseOptions {
  /// Reject clauses with two or more positive literals. Off for the
  /// renaming pipeline, which must hold non-Horn input first.
  bool strictHorn = true;
};

/// Grammar (propositional): `%` line comments; `prefix exists a b; forall
/// c.`; clauses `h :- b1, b2.` / `h.` / `:- b.` / `l1 ; l2.` (literal `~x`
/// negative); queries `? h :- b.` / `? h.` / `?- g1, g2.`; `:-.` is the
/// empty clause. `#mode fol` switches to first-order syntax: optional
/// clause prefix `forall H exists K :` then `p(H,K) :- q(H).`; variables
/// start uppercase, constants lowercase. Unquantified clause variables
/// default to forall, query variables to exists.
SourceUnit parse_source(const std::string& text, ParseOptions opts = {});

/// Propositional-only convenience; throws SyntaxError on a `#mode fol` unit.
Program parse_program(const std::string& text, ParseOptions opts = {});

/// One query line (`? …` / `?- …`) against an existing program's prefix.
Query parse_query(const std::string& text, const Program& p);

/// One first-order query line against an existing first-order program.
FOQuery parse_fol_query(const std::string& text, const FOProgram& p);

/// Source text that reparses to a structurally identical Program.
std::string pretty_print(const Program& p);

std::string render_query(const Program& p, const Query& q);

}  // namespace qhorn

#endif  // QHORN_PARSER_HPP_

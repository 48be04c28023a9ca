#include <doctest.h>

#include <string>

#include "gen.hpp"
#include "qhorn/dot.hpp"
#include "qhorn/parser.hpp"
#include "qhorn/pn.hpp"

using namespace qhorn;

TEST_CASE("the chain text parses to the chain program") {
  Program p =
      parse_program("prefix exists e0; forall u1; exists e1. e0 :- u1, e1. e1.");
  CHECK(p == make_chain_program(1));
}

TEST_CASE("clause source order is preserved") {
  Program p = parse_program("prefix exists a. a. a :- a.");
  REQUIRE(p.clauses().size() == 2);
  CHECK(p.clauses()[0] == Clause{{pos(p.varId("a"))}});
  CHECK(p.clauses()[1] == Clause{{pos(p.varId("a")), neg(p.varId("a"))}});
}

TEST_CASE("comments, goal clauses and the empty clause") {
  Program p = parse_program(
      "% a comment line\n"
      "prefix exists x y.\n"
      "x :- y.  % trailing comment\n"
      ":- x.\n"
      ":-.\n"
      "~x ; y.\n");
  REQUIRE(p.clauses().size() == 4);
  CHECK(p.clauses()[1] == Clause{{neg(p.varId("x"))}});
  CHECK(p.clauses()[2] == Clause{});
  CHECK(p.clauses()[3] == Clause{{neg(p.varId("x")), pos(p.varId("y"))}});
}

TEST_CASE("two positive literals fail the Horn gate before name lookup") {
  CHECK_THROWS_AS(parse_program("prefix exists x. x ; y."), NotHornError);
  // Leniently the same text fails on the undeclared name instead.
  CHECK_THROWS_AS(parse_program("prefix exists x. x ; y.", ParseOptions{false}),
                  DeclarationError);
  // And with both names declared the lenient path holds the clause.
  Program p =
      parse_program("prefix exists x y. x ; y.", ParseOptions{false});
  CHECK_FALSE(is_horn(p));
}

TEST_CASE("query lines") {
  Program p = parse_program("prefix exists x y z. x :- y. y. z.");
  Query d = parse_query("? x :- y, z.", p);
  CHECK(d.kind == Query::Kind::Definite);
  CHECK(d.head == p.varId("x"));
  CHECK(d.body == std::vector<VarId>{p.varId("y"), p.varId("z")});

  Query f = parse_query("? x.", p);
  CHECK(f.kind == Query::Kind::Definite);
  CHECK(f.body.empty());

  Query g = parse_query("?- x, y.", p);
  CHECK(g.kind == Query::Kind::Goal);
  CHECK_FALSE(g.head.has_value());
  CHECK(g.body == std::vector<VarId>{p.varId("x"), p.varId("y")});

  CHECK_THROWS_AS(parse_query("?-.", p), SyntaxError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_program("prefix exists x.\nx :- .");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
}

TEST_CASE("queries embedded in a unit arrive in order") {
  SourceUnit u = parse_source(
      "prefix exists x y. x :- y. y.\n"
      "? x.\n"
      "?- y.\n");
  REQUIRE(u.queries.size() == 2);
  CHECK(u.queries[0].kind == Query::Kind::Definite);
  CHECK(u.queries[1].kind == Query::Kind::Goal);
}

TEST_CASE("pretty-printing round-trips random programs") {
  testgen::Rng rng(12601);
  for (int i = 0; i < 120; ++i) {
    Program p = testgen::random_horn_program(rng, 8, 8);
    Program back = parse_program(pretty_print(p));
    CHECK(back == p);
  }
}

TEST_CASE("parsing is total on fuzzed input") {
  testgen::Rng rng(12602);
  const std::string alphabet =
      "abxyzABXYZ01 ._;:?~%()-,\nprefix exists forall mode#";
  for (int i = 0; i < 500; ++i) {
    std::string text;
    int len = testgen::pick(rng, 0, 60);
    for (int j = 0; j < len; ++j)
      text += alphabet[static_cast<std::size_t>(
          testgen::pick(rng, 0, static_cast<int>(alphabet.size()) - 1))];
    try {
      parse_source(text, ParseOptions{false});
    } catch (const Error&) {
      // positioned errors are the accepted outcome
    }
  }
}

TEST_CASE("first-order mode with clause prefixes") {
  SourceUnit u = parse_source(
      "#mode fol\n"
      "forall X : p(X) :- q(X).\n"
      "q(a).\n"
      "forall H exists K : r(H,K) :- p(H).\n"
      "?- p(a).\n");
  REQUIRE(u.mode == SourceUnit::Mode::FirstOrder);
  REQUIRE(u.foProgram.clauses().size() == 3);
  const FOClause& c0 = u.foProgram.clauses()[0];
  REQUIRE(c0.prefix.size() == 1);
  CHECK(c0.prefix[0] == std::pair<std::string, Quantifier>{
                            "X", Quantifier::Universal});
  CHECK(c0.lits[0].atom.args[0] == fovar("X", Quantifier::Universal));
  const FOClause& c2 = u.foProgram.clauses()[2];
  REQUIRE(c2.prefix.size() == 2);
  CHECK(c2.prefix[1].second == Quantifier::Existential);
  REQUIRE(u.foQueries.size() == 1);
  CHECK(u.foQueries[0].body[0] == Atom{"p", {foconst("a")}});
}

TEST_CASE("unprefixed variables default per position") {
  SourceUnit u = parse_source(
      "#mode fol\n"
      "p(X) :- q(X).\n"  // clause variables default to forall
      "q(a).\n");
  const FOClause& c = u.foProgram.clauses()[0];
  REQUIRE(c.prefix.size() == 1);
  CHECK(c.prefix[0].second == Quantifier::Universal);

  FOQuery q = parse_fol_query("?- p(X).", u.foProgram);  // queries: exists
  CHECK(q.prefix.at(0).second == Quantifier::Existential);
  CHECK(q.body[0].args[0] == fovar("X", Quantifier::Existential));
}

TEST_CASE("arity mismatches are caught at parse time") {
  CHECK_THROWS_AS(parse_source("#mode fol\n"
                               "q(a).\n"
                               "q(a,b).\n"),
                  ArityMismatch);
}

TEST_CASE("derivation DOT output is a chain") {
  Program p = testgen::branch_program();
  SearchOutcome out = search_recursive(p, Clause{{neg(p.varId("a"))}}, 100);
  REQUIRE(out.found());
  std::string dot = emit_dot(p, *out.derivation);
  CHECK(dot.rfind("digraph", 0) == 0);
  for (std::size_t i = 0; i <= out.derivation->steps.size(); ++i)
    CHECK(dot.find("n" + std::to_string(i)) != std::string::npos);
  CHECK(dot.find("□") != std::string::npos);  // the empty-goal box
}

TEST_CASE("refutation tree DOT marks repeats") {
  Program p = testgen::states_program();
  RefutationTree t = build_refutation_tree(p, Clause{{neg(p.varId("b"))}});
  REQUIRE(t.nodes.size() == 3);
  int empty = 0, repeat = 0;
  for (const RefTreeNode& n : t.nodes) {
    empty += n.kind == RefTreeNode::Kind::Empty;
    repeat += n.kind == RefTreeNode::Kind::Repeat;
  }
  CHECK(empty == 1);
  CHECK(repeat == 1);
  std::string dot = emit_dot(p, t);
  CHECK(dot.find("repeat") != std::string::npos);
}

#include <doctest.h>

#include "gen.hpp"
#include "qhorn/oracle.hpp"
#include "qhorn/pn.hpp"
#include "qhorn/solver.hpp"

using namespace qhorn;

namespace {

Query definiteQ(const Program& p, const std::string& head,
                std::vector<std::string> body = {}) {
  Query q;
  q.kind = Query::Kind::Definite;
  q.head = p.varId(head);
  for (const auto& b : body) q.body.push_back(p.varId(b));
  return q;
}

Query goalQ(const Program& p, std::vector<std::string> lits) {
  Query q;
  q.kind = Query::Kind::Goal;
  for (const auto& g : lits) q.body.push_back(p.varId(g));
  return q;
}

}  // namespace

TEST_CASE("the state fixture lands on inf/loop/no") {
  Program p = testgen::states_program();
  Solver s(p);
  CHECK(s.refutation_state(p.varId("b")) == SolveState::Inf);
  CHECK(s.refutation_state(p.varId("a")) == SolveState::Loop);
  CHECK(s.refutation_state(p.varId("c")) == SolveState::No);

  SolveResult r = output(p, goalQ(p, {"a"}));
  CHECK(r.verdict == Verdict::Loop);
  CHECK(render_states(r) == "a = loop\nb = inf\nc = no\n");
}

TEST_CASE("chain programs answer yes at every size") {
  for (int n : {1, 5, 50, 1000}) {
    Program p = make_chain_program(n);
    CHECK(output(p, definiteQ(p, "e0")).verdict == Verdict::Yes);
  }
}

TEST_CASE("a variable with no head clause is refuted as no") {
  Program p;
  VarId x = p.declare("x", Quantifier::Existential);
  VarId y = p.declare("y", Quantifier::Existential);
  p.addClause(Clause{{pos(y), neg(x)}});
  CHECK(output(p, definiteQ(p, "x")).verdict == Verdict::No);
  Solver s(p);
  CHECK(s.refutation_state(x) == SolveState::No);
}

TEST_CASE("test_clause basics") {
  Program p = testgen::states_program();
  Solver s(p);
  CHECK(s.test_clause(p.clauses()[1]) == SolveState::Yes);  // the fact b
}

TEST_CASE("comp_block consults the states right of the universal") {
  Program p;
  VarId a = p.declare("a", Quantifier::Existential);
  VarId u = p.declare("u", Quantifier::Universal);
  VarId b = p.declare("b", Quantifier::Existential);
  VarId c = p.declare("c", Quantifier::Existential);
  p.addClause(Clause{{pos(b)}});
  p.addClause(Clause{{pos(a), neg(u), neg(c)}});
  Solver s(p);
  s.refutation_state(b);  // Yes
  s.refutation_state(c);  // No
  CHECK(s.comp_block(u, Clause{{neg(u), neg(c)}}) == BlockStatus::BlockedYes);
  CHECK(s.comp_block(u, Clause{{neg(u), neg(b)}}) == BlockStatus::BlockedNo);
  CHECK(s.comp_block(u, Clause{{neg(a), neg(u)}}) == BlockStatus::BlockedNo);
}

TEST_CASE("an unblocked universal body literal does not spoil a yes") {
  Program p = make_chain_program(1);
  // e0 <- u1, e1 with e1 a fact: u1 resolves through the blocking check.
  CHECK(output(p, definiteQ(p, "e0")).verdict == Verdict::Yes);
}

TEST_CASE("a blocked universal body literal turns the clause over") {
  Program p;
  VarId a = p.declare("a", Quantifier::Existential);
  VarId u = p.declare("u", Quantifier::Universal);
  VarId b = p.declare("b", Quantifier::Existential);
  p.addClause(Clause{{pos(a), neg(u), neg(b)}});
  p.addClause(Clause{{pos(b), neg(b)}});
  // b only loops, so u stays blocked and a cannot be refuted as yes.
  SolveResult r = output(p, definiteQ(p, "a"));
  CHECK(r.verdict == Verdict::Loop);
}

TEST_CASE("goal queries short-circuit left to right") {
  Program p;
  VarId l = p.declare("l", Quantifier::Existential);
  VarId n = p.declare("n", Quantifier::Existential);
  p.addClause(Clause{{pos(l), neg(l)}});
  p.addClause(Clause{{neg(n)}});  // keeps n in the matrix, headless
  CHECK(output(p, goalQ(p, {"l", "n"})).verdict == Verdict::Loop);
  CHECK(output(p, goalQ(p, {"n", "l"})).verdict == Verdict::No);
}

TEST_CASE("universal goal literals do not contribute") {
  Program p;
  VarId a = p.declare("a", Quantifier::Existential);
  VarId u = p.declare("u", Quantifier::Universal);
  p.addClause(Clause{{pos(a), neg(u)}});
  Query q;
  q.kind = Query::Kind::Goal;
  q.body = {u, a};
  CHECK(output(p, q).verdict == Verdict::Yes);
}

TEST_CASE("query variables must live in the program") {
  Program p;
  p.declare("x", Quantifier::Existential);
  VarId w = p.declare("w", Quantifier::Existential);
  p.addClause(Clause{{pos(p.varId("x"))}});
  Query q;
  q.kind = Query::Kind::Definite;
  q.head = w;
  CHECK_THROWS_AS(output(p, q), NewVariableError);
}

TEST_CASE("the solver insists on Horn input") {
  Program p;
  VarId x = p.declare("x", Quantifier::Existential);
  VarId y = p.declare("y", Quantifier::Existential);
  p.addClause(Clause{{pos(x), pos(y)}});
  CHECK_THROWS_AS(Solver{p}, NotHornError);
}

TEST_CASE("universal variables have no refutation state") {
  Program p = make_chain_program(1);
  Solver s(p);
  CHECK_THROWS_AS(s.refutation_state(p.varId("u1")), UniversalPivot);
}

TEST_CASE("reset clears the table") {
  Program p = testgen::states_program();
  Solver s(p);
  s.refutation_state(p.varId("a"));
  CHECK(s.state(p.varId("a")) != SolveState::New);
  s.reset();
  CHECK(s.state(p.varId("a")) == SolveState::New);
  CHECK(s.state(p.varId("b")) == SolveState::New);
}

TEST_CASE("verdict and state table are deterministic") {
  testgen::Rng rng(9301);
  for (int i = 0; i < 40; ++i) {
    Program p = testgen::random_horn_program(rng, 8, 10);
    Query q = testgen::random_definite_query(rng, p);
    SolveResult a = output(p, q);
    SolveResult b = output(p, q);
    CHECK(a.verdict == b.verdict);
    CHECK(a.states == b.states);
  }
}

TEST_CASE("work scales linearly on the chain family") {
  Program p1 = make_chain_program(256);
  Program p2 = make_chain_program(512);
  std::uint64_t w1 = output(p1, definiteQ(p1, "e0")).work;
  std::uint64_t w2 = output(p2, definiteQ(p2, "e0")).work;
  double ratio = static_cast<double>(w2) / static_cast<double>(w1);
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.5);
}

TEST_CASE("solver verdicts agree with the refutation search") {
  testgen::Rng rng(9302);
  for (int i = 0; i < 50; ++i) {
    Program p = testgen::random_horn_program(rng, 8, 10);
    Query q = testgen::random_definite_query(rng, p);
    SolveResult r = output(p, q);
    RefutationInput in = build_refutation_input(p, q);
    SearchOutcome s = search_recursive(in.pprime, in.topGoal, 10000);
    if (s.kind == SearchOutcome::Kind::BudgetExhausted) continue;
    if (r.verdict == Verdict::Yes) CHECK(s.found());
    if (r.verdict == Verdict::No)
      CHECK(s.kind == SearchOutcome::Kind::NotFound);
  }
}

TEST_CASE("yes verdicts are sound per the oracle") {
  testgen::Rng rng(9303);
  int yes = 0;
  for (int i = 0; i < 120; ++i) {
    Program p = testgen::random_horn_program(rng, 8, 10);
    Query q = testgen::random_definite_query(rng, p);
    if (output(p, q).verdict != Verdict::Yes) continue;
    ++yes;
    CHECK(implies(p, testgen::with_query_clause(p, q)));
  }
  CHECK(yes > 0);
}

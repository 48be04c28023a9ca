#include <doctest.h>

#include "gen.hpp"
#include "qhorn/extensions.hpp"
#include "qhorn/oracle.hpp"
#include "qhorn/pn.hpp"

using namespace qhorn;

namespace {

/// Arbitrary-polarity CNF, deliberately outside the Horn fragment's
/// guarantees, for the renaming detector.
Program random_cnf(testgen::Rng& rng, int maxVars, int maxClauses) {
  Program p = testgen::random_prefix(rng, maxVars);
  int n = static_cast<int>(p.varCount());
  int m = testgen::pick(rng, 1, maxClauses);
  for (int c = 0; c < m; ++c) {
    Clause cl;
    int len = testgen::pick(rng, 1, 4);
    for (int i = 0; i < len; ++i) {
      VarId v = testgen::pick(rng, 0, n - 1);
      cl.lits.push_back(testgen::chance(rng, 0.5) ? pos(v) : neg(v));
    }
    p.addClause(std::move(cl));
  }
  return p;
}

bool renamableBruteForce(const Program& p) {
  std::size_t n = p.varCount();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<VarId> flip;
    for (std::size_t v = 0; v < n; ++v)
      if (mask & (std::size_t{1} << v)) flip.insert(static_cast<VarId>(v));
    if (is_horn(apply_renaming(p, flip))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("outer_clause keeps the strictly earlier literals") {
  Program p;
  VarId a = p.declare("a", Quantifier::Existential);
  VarId f = p.declare("f", Quantifier::Universal);
  VarId g = p.declare("g", Quantifier::Existential);
  Clause c{{pos(a), neg(f), neg(g)}};
  CHECK(outer_clause(p, c, neg(f)) == Clause{{pos(a)}});
  CHECK(outer_clause(p, c, pos(a)) == Clause{});
  CHECK(outer_clause(p, c, neg(g)) == Clause{{pos(a), neg(f)}});
  CHECK_THROWS_AS(outer_clause(p, c, pos(g)), LiteralNotInClause);
}

TEST_CASE("outer_clause works on a deduplicated view") {
  Program p;
  VarId a = p.declare("a", Quantifier::Existential);
  VarId b = p.declare("b", Quantifier::Existential);
  Clause c{{neg(a), neg(a), neg(b)}};
  CHECK(outer_clause(p, c, neg(b)) == Clause{{neg(a)}});
}

TEST_CASE("outer_resolvent follows the set equation") {
  Program p;  // z declared ahead of x, so z is earlier in the prefix
  VarId z = p.declare("z", Quantifier::Existential);
  VarId x = p.declare("x", Quantifier::Existential);
  VarId y = p.declare("y", Quantifier::Existential);
  Clause c{{pos(x), neg(y)}};
  Clause d{{neg(x), pos(z)}};
  CHECK(outer_resolvent(p, c, d, pos(x)) == Clause{{neg(y), pos(z)}});

  CHECK(outer_resolvent(p, Clause{{pos(x)}}, Clause{{neg(x)}}, pos(x)) ==
        Clause{});

  CHECK_THROWS_AS(outer_resolvent(p, c, Clause{{pos(z)}}, pos(x)),
                  ComplementMissing);
}

TEST_CASE("outer_resolvent drops literals later than the pivot") {
  Program p;  // x ahead of z this time: OC excludes z
  VarId x = p.declare("x", Quantifier::Existential);
  VarId y = p.declare("y", Quantifier::Existential);
  VarId z = p.declare("z", Quantifier::Existential);
  Clause c{{pos(x), neg(y)}};
  Clause d{{neg(x), pos(z)}};
  CHECK(outer_resolvent(p, c, d, pos(x)) == Clause{{neg(y)}});
}

TEST_CASE("outer resolvents of Horn clauses stay Horn") {
  testgen::Rng rng(10401);
  int resolved = 0;
  for (int i = 0; i < 200 && resolved < 60; ++i) {
    Program p = testgen::random_horn_program(rng, 8, 8);
    for (const Clause& c : p.clauses()) {
      for (const Clause& d : p.clauses()) {
        for (const Literal& l : c.lits) {
          bool comp = false;
          for (const Literal& k : d.lits)
            if (k == l.negated()) comp = true;
          if (!comp) continue;
          Clause r = outer_resolvent(p, c, d, l);
          CHECK(is_horn(r));
          ++resolved;
        }
      }
    }
  }
  CHECK(resolved > 0);
}

TEST_CASE("fresh existential query variables answer yes outright") {
  Program p = make_chain_program(2);
  VarId w = p.declare("w", Quantifier::Existential);
  Query q;
  q.kind = Query::Kind::Definite;
  q.head = w;
  q.body = {p.varId("e0")};
  NewVarResolution r = resolve_new_variables(p, q);
  CHECK(r.kind == NewVarResolution::Kind::AnsweredYes);
}

TEST_CASE("fresh universal query literals are dropped") {
  Program p = make_chain_program(2);
  VarId v = p.declare("v", Quantifier::Universal);
  Query q;
  q.kind = Query::Kind::Definite;
  q.head = p.varId("e0");
  q.body = {v};
  NewVarResolution r = resolve_new_variables(p, q);
  REQUIRE(r.kind == NewVarResolution::Kind::ReducedQuery);
  REQUIRE(r.query.has_value());
  CHECK(r.query->kind == Query::Kind::Definite);
  CHECK(r.query->head == p.varId("e0"));
  CHECK(r.query->body.empty());
}

TEST_CASE("a fresh universal head demotes the query to a goal") {
  Program p = make_chain_program(1);
  VarId v = p.declare("v", Quantifier::Universal);
  Query q;
  q.kind = Query::Kind::Definite;
  q.head = v;
  q.body = {p.varId("e0")};
  NewVarResolution r = resolve_new_variables(p, q);
  REQUIRE(r.kind == NewVarResolution::Kind::ReducedQuery);
  CHECK(r.query->kind == Query::Kind::Goal);
  CHECK(r.query->body == std::vector<VarId>{p.varId("e0")});
}

TEST_CASE("in-vocabulary queries pass through unchanged") {
  Program p = make_chain_program(2);
  Query q;
  q.kind = Query::Kind::Definite;
  q.head = p.varId("e0");
  q.body = {p.varId("e1")};
  CHECK(resolve_new_variables(p, q).kind == NewVarResolution::Kind::Unchanged);
}

TEST_CASE("reduced queries never invent literals") {
  testgen::Rng rng(10402);
  for (int i = 0; i < 100; ++i) {
    Program p = testgen::random_horn_program(rng, 6, 6);
    VarId fresh = p.declare("fresh", testgen::chance(rng, 0.5)
                                         ? Quantifier::Existential
                                         : Quantifier::Universal);
    Query q = testgen::random_definite_query(rng, p);
    q.body.push_back(fresh);
    NewVarResolution r = resolve_new_variables(p, q);
    if (r.kind != NewVarResolution::Kind::ReducedQuery) continue;
    for (VarId v : r.query->body) {
      int inQ = 0, inR = 0;
      for (VarId w : q.body) inQ += (w == v);
      for (VarId w : r.query->body) inR += (w == v);
      CHECK(inR <= inQ);
    }
  }
}

TEST_CASE("the textbook flip set renames to Horn") {
  Program p;
  VarId x1 = p.declare("x1", Quantifier::Existential);
  VarId x2 = p.declare("x2", Quantifier::Universal);
  VarId x3 = p.declare("x3", Quantifier::Existential);
  p.addClause(Clause{{pos(x1), pos(x2), pos(x3)}});
  p.addClause(Clause{{neg(x1), pos(x2), neg(x3)}});
  auto flips = detect_renaming(p);
  REQUIRE(flips.has_value());
  CHECK(is_horn(apply_renaming(p, *flips)));
}

TEST_CASE("already-Horn programs are trivially renamable") {
  Program p = make_chain_program(2);
  auto flips = detect_renaming(p);
  REQUIRE(flips.has_value());
  CHECK(is_horn(apply_renaming(p, *flips)));
}

TEST_CASE("the all-polarity square has no renaming") {
  Program p;
  VarId x = p.declare("x", Quantifier::Existential);
  VarId y = p.declare("y", Quantifier::Existential);
  p.addClause(Clause{{pos(x), pos(y)}});
  p.addClause(Clause{{neg(x), pos(y)}});
  p.addClause(Clause{{pos(x), neg(y)}});
  p.addClause(Clause{{neg(x), neg(y)}});
  CHECK_FALSE(detect_renaming(p).has_value());
}

TEST_CASE("detection matches brute force and preserves truth") {
  testgen::Rng rng(10403);
  for (int i = 0; i < 150; ++i) {
    Program p = random_cnf(rng, 8, 8);
    auto flips = detect_renaming(p);
    CHECK(flips.has_value() == renamableBruteForce(p));
    if (!flips) continue;
    Program r = apply_renaming(p, *flips);
    CHECK(is_horn(r));
    CHECK(eval_qbf(p) == eval_qbf(r));
  }
}

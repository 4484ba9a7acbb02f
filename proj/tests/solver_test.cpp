#include <gtest/gtest.h>

#include <set>

#include "logjudge/caselang/format.hpp"
#include "logjudge/caselang/parser.hpp"
#include "logjudge/errors.hpp"
#include "logjudge/solver.hpp"
#include "support/engine_check.hpp"

using namespace logjudge;
using caselang::format_term;
using caselang::parse_term;

namespace {

KnowledgeBase kb_of(std::string_view text) {
  auto r = caselang::parse_program(text);
  if (!r.ok()) throw std::runtime_error(r.errors.front().describe());
  return KnowledgeBase{}.load(r.program->clauses());
}

std::vector<std::string> answers(const KnowledgeBase& kb, std::string_view goal, std::string_view var) {
  std::vector<std::string> out;
  for (const auto& s : solve_all(kb, parse_term(goal))) {
    out.push_back(format_term(s.bindings.apply(Term::variable(std::string(var)))));
  }
  return out;
}

const char* kFamily = R"(
parent(tom, bob).
parent(bob, ann).
parent(bob, pat).
ancestor(X, Y) :- parent(X, Y).
ancestor(X, Y) :- parent(X, Z), ancestor(Z, Y).
)";

}  // namespace

TEST(Solver, AnswersInClauseOrder) {
  auto kb = kb_of(kFamily);
  EXPECT_EQ(answers(kb, "ancestor(tom, Y)", "Y"), (std::vector<std::string>{"bob", "ann", "pat"}));
  EXPECT_TRUE(answers(kb, "ancestor(ann, Y)", "Y").empty());
}

TEST(Solver, UnknownPredicateFails) {
  EXPECT_TRUE(solve_all(kb_of(kFamily), parse_term("sibling(a, b)")).empty());
}

TEST(Solver, BindingsRestrictedToQueryVariables) {
  auto s = solve_first(kb_of(kFamily), parse_term("ancestor(tom, Who)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->bindings.size(), 1u);
  EXPECT_EQ(s->bindings.apply(Term::variable("Who")), Term::atom("bob"));
}

TEST(Solver, SolutionsAreDeterministic) {
  auto kb = kb_of(kFamily);
  auto a = answers(kb, "ancestor(X, Y)", "Y");
  for (int i = 0; i < 5; ++i) EXPECT_EQ(answers(kb, "ancestor(X, Y)", "Y"), a);
}

TEST(Solver, ProofTreeReplaysDerivation) {
  auto kb = kb_of(kFamily);
  auto s = solve_first(kb, parse_term("ancestor(tom, ann)"));
  ASSERT_TRUE(s);
  const ProofNode& root = s->proof;
  EXPECT_EQ(format_term(root.goal), "ancestor(tom, ann)");
  EXPECT_EQ(root.justification, Justification::Rule);
  ASSERT_EQ(root.clause_index, std::optional<std::size_t>(4));
  ASSERT_EQ(root.children.size(), 2u);
  EXPECT_EQ(format_term(root.children[0].goal), "parent(tom, bob)");
  EXPECT_EQ(root.children[0].justification, Justification::Fact);
  EXPECT_EQ(format_term(root.children[1].goal), "ancestor(bob, ann)");
  EXPECT_EQ(root.children[1].children.size(), 1u);
}

TEST(Solver, ProofGoalsAreInstancesOfTheirClauses) {
  auto kb = kb_of(kFamily);
  for (const auto& s : solve_all(kb, parse_term("ancestor(X, Y)"))) {
    std::vector<const ProofNode*> todo{&s.proof};
    while (!todo.empty()) {
      const ProofNode* n = todo.back();
      todo.pop_back();
      EXPECT_TRUE(n->goal.is_ground());
      if (n->clause_index) {
        const Clause& c = kb.clause(*n->clause_index);
        EXPECT_TRUE(unify(c.head, n->goal)) << format_term(n->goal);
        EXPECT_EQ(c.body.size(), n->children.size());
      }
      for (const auto& c : n->children) todo.push_back(&c);
    }
  }
}

TEST(Solver, Builtins) {
  KnowledgeBase kb;
  EXPECT_EQ(answers(kb, "length([a, b, c], N)", "N"), (std::vector<std::string>{"3"}));
  EXPECT_EQ(answers(kb, "member(X, [a, b])", "X"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(answers(kb, "X is 2 + 3 * 4", "X"), (std::vector<std::string>{"14"}));
  EXPECT_EQ(answers(kb, "X is 2 - 5", "X"), (std::vector<std::string>{"-3"}));
  EXPECT_EQ(answers(kb, "minutes_between(date(2020,5,12,14,58), date(2020,5,12,15,4), M)", "M"),
            (std::vector<std::string>{"6"}));
  EXPECT_EQ(answers(kb, "minutes_between(date(2020,2,28,23,50), date(2020,3,1,0,10), M)", "M"),
            (std::vector<std::string>{"1460"}));
  EXPECT_FALSE(solve_all(kb, parse_term("3 > 4")).size());
  EXPECT_TRUE(solve_all(kb, parse_term("4 >= 4")).size());
  EXPECT_TRUE(solve_all(kb, parse_term("3 =< 4")).size());
  EXPECT_TRUE(solve_all(kb, parse_term("3 < 4")).size());
  EXPECT_TRUE(solve_all(kb, parse_term("a \\= b")).size());
  EXPECT_FALSE(solve_all(kb, parse_term("f(X) \\= f(a)")).size());
}

TEST(Solver, BuiltinErrors) {
  KnowledgeBase kb;
  EXPECT_THROW(solve_all(kb, parse_term("X > 3")), InstantiationError);
  EXPECT_THROW(solve_all(kb, parse_term("a > 3")), TypeError);
  EXPECT_THROW(solve_all(kb, parse_term("minutes_between(date(2020,2,30,0,0), date(2020,3,1,0,0), M)")), TypeError);
  EXPECT_THROW(solve_all(kb, parse_term("X is 9223372036854775807 + 1")), TypeError);
}

TEST(Solver, NegationAsFailure) {
  auto kb = kb_of(R"(
bird(tweety).
bird(pingu).
penguin(pingu).
flies(X) :- bird(X), \+ penguin(X).
)");
  EXPECT_EQ(answers(kb, "flies(X)", "X"), (std::vector<std::string>{"tweety"}));
  auto s = solve_first(kb, parse_term("flies(tweety)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->proof.children.at(1).justification, Justification::NafSuccess);
  EXPECT_TRUE(solve_naf(kb, parse_term("penguin(tweety)")));
  EXPECT_FALSE(solve_naf(kb, parse_term("penguin(pingu)")));
}

TEST(Solver, NegationNeedsGroundGoal) {
  auto kb = kb_of("p(X) :- \\+ q(X).\nq(a).");
  EXPECT_THROW(solve_all(kb, parse_term("p(Y)")), NonGroundNaf);
  EXPECT_THROW(solve_naf(kb, parse_term("q(Y)")), NonGroundNaf);
}

TEST(Solver, DepthLimit) {
  auto kb = kb_of("loop(X) :- loop(X).");
  EXPECT_THROW(solve_first(kb, parse_term("loop(a)"), SolveLimits{50}), DepthLimitExceeded);
}

TEST(Solver, CollectDistinct) {
  auto kb = kb_of("r(b, 1).\nr(a, 2).\nr(b, 3).");
  auto items = collect_distinct(kb, Term::variable("X"), parse_term("r(X, N)"));
  ASSERT_TRUE(items);
  EXPECT_EQ(*items, (std::vector<Term>{Term::atom("a"), Term::atom("b")}));
  EXPECT_FALSE(collect_distinct(kb, Term::variable("X"), parse_term("r(X, 9)")));
}

TEST(Solver, SetofGroupsByFreeVariables) {
  auto kb = kb_of(R"(
owns(ann, car).
owns(bob, bike).
owns(ann, bike).
owns(ann, car).
)");
  EXPECT_EQ(answers(kb, "setof(T, owns(ann, T), L)", "L"), (std::vector<std::string>{"[bike, car]"}));
  auto grouped = solve_all(kb, parse_term("setof(T, owns(P, T), L)"));
  ASSERT_EQ(grouped.size(), 2u);
  EXPECT_EQ(format_term(grouped[0].bindings.apply(parse_term("P-L"))), "ann - [bike, car]");
  EXPECT_EQ(format_term(grouped[1].bindings.apply(parse_term("P-L"))), "bob - [bike]");
  EXPECT_TRUE(solve_all(kb, parse_term("setof(T, owns(carl, T), L)")).empty());
}

TEST(Solver, DisabledTagsAreInvisible) {
  auto r = caselang::parse_program("tag(e1).\nseen(a).\nend_tag.\nseen(b).\n");
  ASSERT_TRUE(r.ok());
  auto kb = KnowledgeBase{}.load(r.program->clauses());
  EXPECT_EQ(answers(kb, "seen(X)", "X"), (std::vector<std::string>{"a", "b"}));
  auto off = kb.set_enabled("e1", false);
  EXPECT_EQ(answers(off, "seen(X)", "X"), (std::vector<std::string>{"b"}));
  EXPECT_EQ(answers(kb, "seen(X)", "X").size(), 2u);
  EXPECT_EQ(answers(off.set_enabled("e1", true), "seen(X)", "X").size(), 2u);
  EXPECT_THROW((void)kb.set_enabled("e7", false), UnknownTag);
}

TEST(Solver, ProofCarriesTags) {
  auto r = caselang::parse_program("tag(e1).\nseen(a).\nend_tag.\nwitnessed(X) :- seen(X).\n");
  ASSERT_TRUE(r.ok());
  auto s = solve_first(KnowledgeBase{}.load(r.program->clauses()), parse_term("witnessed(a)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(proof_tags(s->proof), (std::set<std::string>{"e1"}));
}

TEST(Solver, SetofProofKeepsCollectedDerivations) {
  auto r = caselang::parse_program("tag(e1).\nseen(a).\nend_tag.\ntag(e2).\nseen(b).\nend_tag.\n"
                                   "all(L) :- setof(X, seen(X), L).\n");
  ASSERT_TRUE(r.ok());
  auto s = solve_first(KnowledgeBase{}.load(r.program->clauses()), parse_term("all(L)"));
  ASSERT_TRUE(s);
  const ProofNode& setof = s->proof.children.at(0);
  EXPECT_EQ(setof.justification, Justification::Builtin);
  ASSERT_EQ(setof.children.size(), 2u);
  EXPECT_EQ(format_term(setof.children[0].goal), "seen(a)");
  EXPECT_EQ(proof_tags(s->proof), (std::set<std::string>{"e1", "e2"}));
}

TEST(Solver, RenameApartKeepsClauseStructure) {
  auto r = caselang::parse_program("p(X, Y, _) :- q(X, Z), \\+ r(Z), Y is Z + 1.");
  ASSERT_TRUE(r.ok());
  Clause c = r.program->clauses().front();
  std::uint64_t counter = 7;
  Clause a = rename_apart(c, counter);
  Clause b = rename_apart(c, counter);
  EXPECT_EQ(counter, 9u);
  EXPECT_TRUE(testsupport::is_variant(a.head, c.head));
  EXPECT_EQ(format_term(a.head), "p(X#7, Y#7, _)");
  std::set<std::string> va, vb;
  for (const auto& v : variables_of(a.head)) va.insert(v);
  for (const auto& v : variables_of(b.head)) vb.insert(v);
  for (const auto& v : va) EXPECT_FALSE(vb.contains(v));
  ASSERT_EQ(a.body.size(), 3u);
  EXPECT_EQ(a.body[1].kind(), LiteralKind::Naf);
  EXPECT_EQ(a.body[2].kind(), LiteralKind::Builtin);
}

TEST(Solver, MalformedClausesRejected) {
  EXPECT_THROW(validate_clause(make_fact(Term::variable("X"))), MalformedClause);
  EXPECT_THROW(validate_clause(make_rule(parse_term("p"), {Term::integer(3)})), MalformedClause);
  EXPECT_THROW(validate_clause(make_fact(parse_term("member(a, b)"))), MalformedClause);
}

TEST(EngineOracle, GeneratedStratifiedProgramsMatchFixpoint) {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    auto run = testsupport::engine_equivalence(seed, 150);
    EXPECT_TRUE(run.ok()) << run.failures.front();
    EXPECT_GT(run.cases, 1000u);
  }
}

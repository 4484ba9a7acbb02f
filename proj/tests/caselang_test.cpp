#include <gtest/gtest.h>

#include <random>

#include "logjudge/caselang/format.hpp"
#include "logjudge/caselang/lexer.hpp"
#include "logjudge/caselang/parser.hpp"
#include "support/listings.hpp"
#include "support/paths.hpp"
#include "support/program_gen.hpp"

using namespace logjudge;
using namespace logjudge::caselang;
using namespace testsupport::listings;

namespace {

SourceProgram parse_ok(std::string_view text) {
  auto r = parse_program(text);
  if (!r.ok()) ADD_FAILURE() << r.errors.front().describe();
  return r.ok() ? *r.program : SourceProgram{};
}

Clause only_clause(std::string_view text) {
  auto clauses = parse_ok(text).clauses();
  EXPECT_EQ(clauses.size(), 1u);
  return clauses.empty() ? make_fact(Term::atom("missing")) : clauses.front();
}

}  // namespace

TEST(Lexer, TokenKindsAndPositions) {
  auto toks = tokenize("p(X, 'a b') :- \\+ q, X >= -2.\n% c\nr([H|T]).");
  std::vector<TokenKind> kinds;
  for (const auto& t : toks) kinds.push_back(t.kind);
  std::vector<TokenKind> want{TokenKind::Ident, TokenKind::LParen, TokenKind::Variable, TokenKind::Comma,
                              TokenKind::QuotedAtom, TokenKind::RParen, TokenKind::Neck, TokenKind::Naf,
                              TokenKind::Ident, TokenKind::Comma, TokenKind::Variable, TokenKind::Ge,
                              TokenKind::Minus, TokenKind::Integer, TokenKind::End, TokenKind::Ident,
                              TokenKind::LParen, TokenKind::LBracket, TokenKind::Variable, TokenKind::Bar,
                              TokenKind::Variable, TokenKind::RBracket, TokenKind::RParen, TokenKind::End,
                              TokenKind::Eof};
  EXPECT_EQ(kinds, want);
  EXPECT_EQ(toks[4].text, "a b");
  EXPECT_EQ(toks[15].pos.line, 3u);
  EXPECT_EQ(toks[15].pos.column, 1u);
}

TEST(Lexer, ColumnsCountCodePoints) {
  auto toks = tokenize("f('città', x).");
  EXPECT_EQ(toks[4].text, "x");
  EXPECT_EQ(toks[4].pos.column, 12u);
}

TEST(Lexer, Errors) {
  EXPECT_THROW(tokenize("p(a) @ q."), LexError);
  EXPECT_THROW(tokenize("p('open)."), LexError);
  EXPECT_THROW(tokenize("/* never closed"), LexError);
  try {
    tokenize("p.\n  q :- r $ s.");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.pos().line, 2u);
    EXPECT_EQ(e.pos().column, 10u);
  }
}

TEST(Lexer, LexemesReconstructFromOffsets) {
  std::string text = testsupport::read_file(testsupport::case_path());
  auto toks = tokenize(text);
  ASSERT_GT(toks.size(), 100u);
  for (const auto& t : toks) {
    if (t.kind == TokenKind::Eof) continue;
    auto again = tokenize(std::string_view(text).substr(t.offset, t.length));
    ASSERT_EQ(again.size(), 2u) << t.text;
    EXPECT_EQ(again[0].kind, t.kind);
    EXPECT_EQ(again[0].text, t.text);
  }
}

TEST(Parser, SourceFactsFromTheCase) {
  Clause u = only_clause(kUtters);
  EXPECT_EQ(format_term(u.head),
            "utters(date(2020, 5, 12, 15, 1), date(2020, 5, 12, 15, 30), criminalInRedJacket, "
            "'jamunindi jamunindi', witness(fantine))");
  Clause w = only_clause(kWordsOrigin);
  EXPECT_TRUE(w.head.has_functor("words_origin_evaluation", 5));
  EXPECT_EQ(w.head.arg(4), Term::integer(100));
  Clause d = only_clause(kDrives);
  EXPECT_EQ(d.head.arg(3), Term::compound("vehicle", {Term::atom("scooter"), Term::integer(12345)}));
  EXPECT_EQ(d.head.arg(4), Term::compound("witness", {Term::atom("thenardier")}));
  Clause b = only_clause(kBorn);
  EXPECT_EQ(b.head.arg(2), Term::atom("reggio calabria"));
  Clause c = only_clause(kCommits);
  EXPECT_EQ(c.head.arg(0), Term::compound("date", {Term::integer(2020), Term::integer(5), Term::integer(12),
                                                   Term::integer(14), Term::integer(45)}));
  auto rel = parse_ok(kReliable).clauses();
  ASSERT_EQ(rel.size(), 3u);
  EXPECT_EQ(format_clause(rel[2]), "reliable(thenardier, hi).");
}

TEST(Parser, SourceRulesFromTheCase) {
  Clause sp = only_clause(kSamePersonAsPrinted);
  ASSERT_EQ(sp.body.size(), 4u);
  EXPECT_EQ(sp.body[0].kind(), LiteralKind::Builtin);
  EXPECT_TRUE(sp.body[0].goal().has_functor("setof", 3));
  EXPECT_EQ(format_term(sp.body[0].goal().arg(0)), "(Ev, severity(S), precision(P))");
  EXPECT_EQ(format_literal(sp.body[2]), "L > 1");
  EXPECT_EQ(format_literal(sp.body[3]), "member((_, severity(hi), precision(hi)), Evidences)");

  Clause r = only_clause(kResponsibleAsPrinted);
  EXPECT_TRUE(r.head.has_functor("responsibile", 1));
  ASSERT_EQ(r.body.size(), 3u);
  EXPECT_TRUE(r.body[2].goal().has_functor("pretty_print", 7));
}

TEST(Parser, ShippedFilesParse) {
  auto valjean = parse_ok(testsupport::read_file(testsupport::case_path()));
  std::vector<std::string> tags;
  for (const auto& d : valjean.directives()) {
    if (const auto* t = std::get_if<TagDirective>(&d)) tags.push_back(t->id);
  }
  EXPECT_EQ(tags, (std::vector<std::string>{"e1", "e2", "e3", "e4", "e5"}));
  auto rules = parse_ok(testsupport::read_file(testsupport::rules_path()));
  EXPECT_GT(rules.clauses().size(), 15u);
}

TEST(Parser, TagScopes) {
  auto p = parse_ok("a.\ntag(e1, 'first').\nb.\nc :- b.\nend_tag.\nd.\ntag(e2).\ne.\n");
  auto cs = p.clauses();
  ASSERT_EQ(cs.size(), 5u);
  EXPECT_EQ(cs[0].tag, std::nullopt);
  EXPECT_EQ(cs[1].tag, std::optional<std::string>("e1"));
  EXPECT_EQ(cs[2].tag, std::optional<std::string>("e1"));
  EXPECT_EQ(cs[3].tag, std::nullopt);
  EXPECT_EQ(cs[4].tag, std::optional<std::string>("e2"));
}

TEST(Parser, TagOpensNewScope) {
  auto cs = parse_ok("tag(e1).\na.\ntag(e2).\nb.\n").clauses();
  EXPECT_EQ(cs[1].tag, std::optional<std::string>("e2"));
}

TEST(Parser, Directives) {
  auto p = parse_ok(
      "case_id(c1).\ndefendant(valjean).\npolicy(min_evidence_count(0), require_severe_precise(false)).\n"
      "preset('Q9', [e1], [reliable(w, lo)], responsible, [scene_window_minutes(5)]).\n");
  auto ds = p.directives();
  ASSERT_EQ(ds.size(), 4u);
  EXPECT_EQ(std::get<CaseIdDirective>(ds[0]).id, "c1");
  EXPECT_EQ(std::get<DefendantDirective>(ds[1]).name, "valjean");
  const auto& pol = std::get<PolicyDirective>(ds[2]);
  ASSERT_EQ(pol.settings.size(), 2u);
  EXPECT_EQ(pol.settings[1].second, legal::PolicyValue{false});
  const auto& pre = std::get<PresetDirective>(ds[3]);
  EXPECT_EQ(pre.id, "Q9");
  EXPECT_EQ(pre.expected, legal::Outcome::Responsible);
  EXPECT_EQ(pre.reliability.front().second, legal::Level::Lo);
  EXPECT_EQ(pre.policy.front().first, "scene_window_minutes");
}

TEST(Parser, AnonymousVariablesAreDistinct) {
  Clause c = only_clause("p(_, _) :- q(_).");
  EXPECT_NE(c.head.arg(0), c.head.arg(1));
  EXPECT_EQ(format_clause(c), "p(_, _) :-\n    q(_).");
  Clause d = only_clause("p(_, X, X).");
  EXPECT_EQ(d.head.arg(1), d.head.arg(2));
}

TEST(Parser, OperatorsAndSugar) {
  EXPECT_EQ(format_term(parse_term("X is A + B * 2 - 1")), "X is ((A + (B * 2)) - 1)");
  EXPECT_EQ(parse_term("[a, b | T]"), make_list(std::vector<Term>{Term::atom("a"), Term::atom("b")}, Term::variable("T")));
  EXPECT_EQ(parse_term("(a)"), Term::atom("a"));
  EXPECT_EQ(parse_term("f(-3)").arg(0), Term::integer(-3));
  EXPECT_EQ(parse_term("\"text\""), Term::string("text"));
  EXPECT_EQ(parse_term("'it''s'"), Term::atom("it's"));
  EXPECT_TRUE(parse_term("\\+ p(a)").has_functor("\\+", 1));
}

TEST(ParserErrors, ReportsPositionAndExpectation) {
  auto r = parse_program("p(a, b.\n");
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 1u);
  EXPECT_EQ(r.errors[0].column, 7u);
  EXPECT_EQ(r.errors[0].expected, token_kind_name(TokenKind::RParen));
}

TEST(ParserErrors, RecoversAtClauseBoundary) {
  auto r = parse_program("p(a.\nq(b).\nr(c :- .\ns(d).\n");
  ASSERT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].line, 1u);
  EXPECT_EQ(r.errors[1].line, 3u);
}

TEST(ParserErrors, SemanticChecks) {
  auto line_of_first_error = [](std::string_view text) {
    auto r = parse_program(text);
    return r.errors.empty() ? std::string("no error") : r.errors[0].message;
  };
  EXPECT_NE(line_of_first_error("X."), "no error");
  EXPECT_NE(line_of_first_error("3 :- p."), "no error");
  EXPECT_NE(line_of_first_error("p :- 3."), "no error");
  EXPECT_NE(line_of_first_error("member(a, [a])."), "no error");
  EXPECT_NE(line_of_first_error("end_tag."), "no error");
  EXPECT_NE(line_of_first_error("tag(e1).\ntag(e1)."), "no error");
  EXPECT_NE(line_of_first_error("policy(speed(3))."), "no error");
  EXPECT_NE(line_of_first_error("policy(min_evidence_count(yes))."), "no error");
  EXPECT_NE(line_of_first_error("preset(q, e1, [], responsible)."), "no error");
  EXPECT_NE(line_of_first_error("preset(q, [e1], [], maybe)."), "no error");
}

TEST(ParserErrors, LexicalErrorsAreMergedInOrder) {
  auto r = parse_program("p(a) :- q @ r.\ns(.\nt('x).\n");
  ASSERT_EQ(r.errors.size(), 3u);
  EXPECT_EQ(r.errors[0].line, 1u);
  EXPECT_EQ(r.errors[0].column, 11u);
  EXPECT_EQ(r.errors[1].line, 2u);
  EXPECT_EQ(r.errors[2].line, 3u);
}

TEST(ParserErrors, ParseTermRejectsTrailingInput) {
  EXPECT_THROW(parse_term("f(a) g"), TermSyntaxError);
  EXPECT_THROW(parse_term("f("), TermSyntaxError);
}

TEST(ParserProperty, StrayCharacterReportedWhereInserted) {
  std::string text = testsupport::read_file(testsupport::case_path());
  auto toks = tokenize(text);
  toks.pop_back();
  for (const Token& t : toks) {
    std::string broken = text;
    broken.insert(t.offset, "@");
    auto r = parse_program(broken);
    ASSERT_EQ(r.errors.size(), 1u) << "inserted before " << t.text;
    EXPECT_EQ(r.errors[0].line, t.pos.line);
    EXPECT_EQ(r.errors[0].column, t.pos.column);
  }
}

TEST(ParserProperty, DeletedTokenReportedWithinItsClause) {
  std::string text = testsupport::read_file(testsupport::case_path());
  auto toks = tokenize(text);
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 150; ++i) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, toks.size() - 2)(rng);
    TokenKind kind = toks[k].kind;
    if (kind != TokenKind::RParen && kind != TokenKind::Comma && kind != TokenKind::LParen) continue;
    std::string broken = text;
    broken.erase(toks[k].offset, toks[k].length);
    auto r = parse_program(broken);
    if (r.ok()) continue;
    ++checked;
    std::size_t start = k;
    while (start > 0 && toks[start - 1].kind != TokenKind::End) --start;
    std::size_t end = k;
    while (toks[end].kind != TokenKind::End) ++end;
    const auto& e = r.errors.front();
    auto before = [](std::size_t l1, std::size_t c1, const SourcePos& p) {
      return l1 < p.line || (l1 == p.line && c1 <= p.column);
    };
    EXPECT_TRUE(before(toks[start].pos.line, toks[start].pos.column, SourcePos{e.line, e.column}));
    EXPECT_TRUE(before(e.line, e.column, toks[end + 1].pos)) << e.describe();
  }
  EXPECT_GT(checked, 50);
}

TEST(RoundTrip, ShippedFilesAreFixpoints) {
  for (const auto& path : {testsupport::case_path(), testsupport::rules_path()}) {
    auto first = parse_ok(testsupport::read_file(path));
    std::string printed = format_program(first);
    auto second = parse_ok(printed);
    EXPECT_EQ(first, second) << path;
    EXPECT_EQ(format_program(second), printed);
  }
}

TEST(RoundTrip, GeneratedProgramsAreFixpoints) {
  testsupport::ProgramGen gen(17);
  for (int i = 0; i < 500; ++i) {
    SourceProgram p = gen.program();
    std::string text = format_program(p);
    auto r = parse_program(text);
    ASSERT_TRUE(r.ok()) << r.errors.front().describe() << "\n" << text;
    EXPECT_EQ(*r.program, p) << text;
    EXPECT_EQ(format_program(*r.program), text);
  }
}

TEST(ParserErrors, BrokenTagDoesNotCascade) {
  auto r = parse_program("tag(e1 'x').\na.\nend_tag.\nb.\n");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 1u);
}

TEST(Lexer, ReliabilityFactTokens) {
  std::vector<TokenKind> kinds;
  for (const auto& t : tokenize("reliable(thenardier, hi).")) kinds.push_back(t.kind);
  EXPECT_EQ(kinds, (std::vector<TokenKind>{TokenKind::Ident, TokenKind::LParen, TokenKind::Ident, TokenKind::Comma,
                                           TokenKind::Ident, TokenKind::RParen, TokenKind::End, TokenKind::Eof}));
  auto comment = tokenize("/* EVIDENCE 3 */");
  ASSERT_EQ(comment.size(), 1u);
  EXPECT_EQ(comment[0].kind, TokenKind::Eof);
}

TEST(ParserErrors, MissingFinalDot) {
  auto r = parse_program("p(X) :- q(X)");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].expected, token_kind_name(TokenKind::End));
}

TEST(Format, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(format_term(Term::atom("reggio calabria")), "'reggio calabria'");
  EXPECT_EQ(format_term(Term::integer(12345)), "12345");
  EXPECT_EQ(format_term(Term::atom("valjean")), "valjean");
  EXPECT_EQ(format_term(Term::atom("criminalInRedJacket")), "criminalInRedJacket");
  EXPECT_EQ(format_term(Term::atom("Q1")), "'Q1'");
  EXPECT_EQ(format_term(parse_term("'Valjean''s'")), "'Valjean''s'");
}

TEST(LexerProperty, GapsBetweenTokensAreLayout) {
  for (const auto& path : {testsupport::case_path(), testsupport::rules_path()}) {
    std::string text = testsupport::read_file(path);
    auto toks = tokenize(text);
    std::size_t prev = 0;
    for (const auto& t : toks) {
      std::size_t at = t.kind == TokenKind::Eof ? text.size() : t.offset;
      ASSERT_LE(prev, at);
      auto gap = tokenize(std::string_view(text).substr(prev, at - prev));
      EXPECT_EQ(gap.size(), 1u) << path << " before " << t.text;
      prev = at + (t.kind == TokenKind::Eof ? 0 : t.length);
    }
  }
}

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logjudge/caselang/lexer.hpp"
#include "logjudge/caselang/program.hpp"
#include "logjudge/clause.hpp"
#include "logjudge/legal/policy.hpp"
#include "logjudge/term.hpp"

namespace logjudge::caselang {

namespace detail {

// Thrown inside the parser and turned into a ParseError at clause level.
// `silent` marks errors already reported by the tokenizer.
struct SyntaxError {
  SourcePos pos;
  std::string message;
  std::string expected;
  bool silent = false;
};

inline bool is_relational(TokenKind k) {
  return k == TokenKind::Gt || k == TokenKind::Lt || k == TokenKind::Ge || k == TokenKind::Le ||
         k == TokenKind::NotUnify;
}

/// Recursive-descent parser over a token vector.
///
///   program   := statement*
///   statement := arg [":-" arg ("," arg)*] "."
///   arg       := "\+" arg | additive [relop additive]
///   relop     := ">" | "<" | ">=" | "=<" | "\=" | "is"
///   additive  := product (("+" | "-") product)*
///   product   := primary ("*" primary)*
///   primary   := var | ["-"] int | string | name ["(" arg ("," arg)* ")"]
///              | "[" [arg ("," arg)* ["|" arg]] "]" | "(" arg ("," arg)* ")"
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ParseResult run() {
    SourceProgram program;
    while (peek().kind != TokenKind::Eof) {
      const std::size_t start = i_;
      try {
        parse_statement(program);
      } catch (const SyntaxError& e) {
        if (!e.silent) errors_.push_back(ParseError{e.pos.line, e.pos.column, e.message, e.expected});
        std::size_t lead = start;
        while (toks_[lead].kind == TokenKind::Error) ++lead;
        if (toks_[lead].kind == TokenKind::Ident && toks_[lead].text == "tag") scope_unknown_ = true;
        recover(start);
      }
    }
    ParseResult result;
    result.errors = std::move(errors_);
    if (result.errors.empty()) result.program = std::move(program);
    return result;
  }

  /// Parses exactly one term followed by end of input (an optional final
  /// '.' is accepted).
  Term parse_single_term() {
    Term t = parse_arg();
    if (peek().kind == TokenKind::End) ++i_;
    expect(TokenKind::Eof);
    return t;
  }

  std::vector<ParseError> take_errors() { return std::move(errors_); }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = std::min(i_ + ahead, toks_.size() - 1);
    return toks_[k];
  }

  [[noreturn]] void fail(const Token& at, std::string message, std::string expected = {}) const {
    if (at.kind == TokenKind::Error) throw SyntaxError{at.pos, {}, {}, true};
    throw SyntaxError{at.pos, std::move(message), std::move(expected)};
  }

  const Token& expect(TokenKind k) {
    const Token& t = peek();
    if (t.kind != k) {
      fail(t, "unexpected " + std::string(token_kind_name(t.kind)), std::string(token_kind_name(k)));
    }
    ++i_;
    return t;
  }

  // Skips past the next clause-terminating '.' (or to end of input).
  void recover(std::size_t start) {
    if (i_ == start && peek().kind != TokenKind::Eof) ++i_;
    if (i_ > start && toks_[i_ - 1].kind == TokenKind::End) return;
    while (peek().kind != TokenKind::Eof) {
      if (toks_[i_++].kind == TokenKind::End) return;
    }
  }

  void parse_statement(SourceProgram& program) {
    anonymous_ = 0;
    const Token& first = peek();
    Term head = parse_arg();
    std::vector<Literal> body;
    if (peek().kind == TokenKind::Neck) {
      ++i_;
      do {
        const Token& at = peek();
        Term goal = parse_arg();
        if (!goal.is_callable()) fail(at, "body goal must be an atom or compound term");
        body.push_back(Literal::from_term(goal));
      } while (peek().kind == TokenKind::Comma && (++i_, true));
    }
    expect(TokenKind::End);

    if (head.is_variable()) fail(first, "clause head cannot be a variable");
    if (!head.is_callable()) fail(first, "clause head must be an atom or compound term");
    if (is_builtin(head.name(), head.arity()) || head.has_functor(kNafFunctor, 1)) {
      fail(first, "clause head cannot redefine builtin " + head.name() + "/" + std::to_string(head.arity()));
    }
    if (body.empty()) {
      if (auto d = as_directive(head, first)) {
        apply_scope(*d, first);
        program.statements.push_back(Statement{std::move(*d), first.pos});
        return;
      }
    }
    Clause c{std::move(head), std::move(body), current_tag_, true};
    program.statements.push_back(Statement{std::move(c), first.pos});
  }

  void apply_scope(const Directive& d, const Token& at) {
    if (const auto* tag = std::get_if<TagDirective>(&d)) {
      if (!seen_tags_.insert(tag->id).second) fail(at, "duplicate evidence tag '" + tag->id + "'");
      current_tag_ = tag->id;
      scope_unknown_ = false;
    } else if (std::holds_alternative<EndTagDirective>(d)) {
      if (!current_tag_ && !scope_unknown_) fail(at, "end_tag without an open tag");
      current_tag_.reset();
      scope_unknown_ = false;
    }
  }

  static std::optional<std::string> symbol_of(const Term& t) {
    if (t.is_atom()) return t.name();
    return std::nullopt;
  }

  std::vector<std::pair<std::string, legal::PolicyValue>> policy_settings(std::span<const Term> items,
                                                                          const Token& at) const {
    std::vector<std::pair<std::string, legal::PolicyValue>> out;
    for (const auto& s : items) {
      if (!s.is_compound() || s.arity() != 1) fail(at, "policy settings are written key(value)");
      auto type = legal::policy_key_type(s.name());
      if (!type) fail(at, "unknown policy key '" + s.name() + "'");
      auto value = legal::policy_value_from_term(s.arg(0));
      bool type_ok = value && ((*type == legal::PolicyKeyType::Boolean) == std::holds_alternative<bool>(*value));
      if (!type_ok) fail(at, "bad value for policy key '" + s.name() + "'");
      out.emplace_back(s.name(), *value);
    }
    return out;
  }

  std::optional<Directive> as_directive(const Term& h, const Token& at) const {
    if (h.has_functor("end_tag", 0)) return EndTagDirective{};
    if (h.is_compound() && h.name() == "tag" && (h.arity() == 1 || h.arity() == 2)) {
      auto id = symbol_of(h.arg(0));
      if (!id) fail(at, "tag id must be an atom");
      TagDirective d{*id, std::nullopt};
      if (h.arity() == 2) {
        if (!h.arg(1).is_atom() && !h.arg(1).is_str()) fail(at, "tag summary must be quoted text");
        d.summary = h.arg(1).name();
      }
      return d;
    }
    if (h.is_compound() && h.name() == "policy") return PolicyDirective{policy_settings(h.args(), at)};
    if (h.has_functor("defendant", 1)) {
      auto name = symbol_of(h.arg(0));
      if (!name) fail(at, "defendant must be an atom");
      return DefendantDirective{*name};
    }
    if (h.has_functor("case_id", 1)) {
      auto id = symbol_of(h.arg(0));
      if (!id) fail(at, "case_id must be an atom");
      return CaseIdDirective{*id};
    }
    if (h.is_compound() && h.name() == "preset" && (h.arity() == 4 || h.arity() == 5)) {
      return preset(h, at);
    }
    return std::nullopt;
  }

  PresetDirective preset(const Term& h, const Token& at) const {
    PresetDirective p;
    auto id = symbol_of(h.arg(0));
    if (!id) fail(at, "preset id must be an atom");
    p.id = *id;
    auto tags = list_elements(h.arg(1));
    if (!tags) fail(at, "preset tags must be a list");
    for (const auto& t : *tags) {
      if (!t.is_atom()) fail(at, "preset tags must be atoms");
      p.enabled_tags.push_back(t.name());
    }
    auto rel = list_elements(h.arg(2));
    if (!rel) fail(at, "preset reliabilities must be a list");
    for (const auto& r : *rel) {
      std::optional<legal::Level> level;
      if (r.has_functor("reliable", 2) && r.arg(0).is_atom() && r.arg(1).is_atom()) {
        level = legal::parse_level(r.arg(1).name());
      }
      if (!level) fail(at, "preset reliabilities are written reliable(name, hi|lo)");
      p.reliability.emplace_back(r.arg(0).name(), *level);
    }
    std::optional<legal::Outcome> expected;
    if (h.arg(3).is_atom()) expected = legal::parse_outcome(h.arg(3).name());
    if (!expected) fail(at, "preset outcome must be responsible or acquitted");
    p.expected = *expected;
    if (h.arity() == 5) {
      auto pol = list_elements(h.arg(4));
      if (!pol) fail(at, "preset policy overrides must be a list");
      p.policy = policy_settings(*pol, at);
    }
    return p;
  }

  Term parse_arg() {
    if (peek().kind == TokenKind::Naf) {
      ++i_;
      return Term::compound(std::string(kNafFunctor), {parse_arg()});
    }
    Term left = parse_additive();
    const Token& op = peek();
    if (is_relational(op.kind) || (op.kind == TokenKind::Ident && op.text == "is")) {
      ++i_;
      Term right = parse_additive();
      return Term::compound(op.text, {std::move(left), std::move(right)});
    }
    return left;
  }

  Term parse_additive() {
    Term left = parse_product();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      std::string op = toks_[i_++].text;
      left = Term::compound(op, {std::move(left), parse_product()});
    }
    return left;
  }

  Term parse_product() {
    Term left = parse_primary();
    while (peek().kind == TokenKind::Star) {
      ++i_;
      left = Term::compound("*", {std::move(left), parse_primary()});
    }
    return left;
  }

  Term integer(const Token& t, bool negative) const {
    std::int64_t v = 0;
    std::string digits = negative ? "-" + t.text : t.text;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || end != digits.data() + digits.size()) fail(t, "integer out of range");
    return Term::integer(v);
  }

  std::vector<Term> parse_arg_list(TokenKind close) {
    std::vector<Term> args{parse_arg()};
    while (peek().kind == TokenKind::Comma) {
      ++i_;
      args.push_back(parse_arg());
    }
    expect(close);
    return args;
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Variable:
        ++i_;
        if (t.text == "_") return Term::variable("_#" + std::to_string(++anonymous_));
        return Term::variable(t.text);
      case TokenKind::Integer:
        ++i_;
        return integer(t, false);
      case TokenKind::Minus:
        if (peek(1).kind == TokenKind::Integer) {
          i_ += 2;
          return integer(toks_[i_ - 1], true);
        }
        break;
      case TokenKind::String:
        ++i_;
        return Term::string(t.text);
      case TokenKind::Ident:
      case TokenKind::QuotedAtom: {
        ++i_;
        if (peek().kind == TokenKind::LParen) {
          ++i_;
          return Term::compound(t.text, parse_arg_list(TokenKind::RParen));
        }
        return Term::atom(t.text);
      }
      case TokenKind::LBracket: {
        ++i_;
        if (peek().kind == TokenKind::RBracket) {
          ++i_;
          return nil();
        }
        std::vector<Term> items{parse_arg()};
        while (peek().kind == TokenKind::Comma) {
          ++i_;
          items.push_back(parse_arg());
        }
        std::optional<Term> tail;
        if (peek().kind == TokenKind::Bar) {
          ++i_;
          tail = parse_arg();
        }
        expect(TokenKind::RBracket);
        return make_list(items, tail);
      }
      case TokenKind::LParen: {
        ++i_;
        return tuple_term(parse_arg_list(TokenKind::RParen));
      }
      default:
        break;
    }
    fail(t, "unexpected " + std::string(token_kind_name(t.kind)), "term");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<ParseError> errors_;
  std::optional<std::string> current_tag_;
  std::set<std::string> seen_tags_;
  bool scope_unknown_ = false;  // a tag directive failed to parse
  std::size_t anonymous_ = 0;
};

}  // namespace detail

/// Parses a whole case file, collecting every error (recovery resumes after
/// the next '.'). A program is returned only when there are no errors.
inline ParseResult parse_program(std::string_view text) {
  std::vector<LexError> lex_errors;
  std::vector<Token> tokens = tokenize_lenient(text, lex_errors);
  ParseResult result = detail::Parser(std::move(tokens)).run();
  if (lex_errors.empty()) return result;
  std::vector<ParseError> all;
  for (const auto& e : lex_errors) all.push_back(ParseError{e.pos().line, e.pos().column, e.message(), {}});
  all.insert(all.end(), result.errors.begin(), result.errors.end());
  std::stable_sort(all.begin(), all.end(), [](const ParseError& a, const ParseError& b) {
    return std::pair(a.line, a.column) < std::pair(b.line, b.column);
  });
  return ParseResult{std::nullopt, std::move(all)};
}

class TermSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a single term such as "drives(X, vehicle(scooter, 12345))".
/// Throws TermSyntaxError.
inline Term parse_term(std::string_view text) {
  try {
    return detail::Parser(tokenize(text)).parse_single_term();
  } catch (const detail::SyntaxError& e) {
    throw TermSyntaxError(std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column) + ": " + e.message);
  } catch (const LexError& e) {
    throw TermSyntaxError(e.what());
  }
}

}  // namespace logjudge::caselang

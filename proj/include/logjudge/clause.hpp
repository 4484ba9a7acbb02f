#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logjudge/errors.hpp"
#include "logjudge/term.hpp"

namespace logjudge {

struct BuiltinSignature {
  std::string_view name;
  std::size_t arity;
};

// The closed set of predicates evaluated by the engine rather than by clauses.
inline constexpr std::array<BuiltinSignature, 10> kBuiltins{{
    {"length", 2},
    {"member", 2},
    {">", 2},
    {"<", 2},
    {">=", 2},
    {"=<", 2},
    {"\\=", 2},
    {"is", 2},
    {"minutes_between", 3},
    {"setof", 3},
}};

inline constexpr std::string_view kNafFunctor = "\\+";

inline bool is_builtin(std::string_view name, std::size_t arity) {
  return std::any_of(kBuiltins.begin(), kBuiltins.end(),
                     [&](const BuiltinSignature& b) { return b.name == name && b.arity == arity; });
}

enum class LiteralKind : std::uint8_t { Call, Naf, Builtin };

/// One body goal. For Naf the goal is the negated term; for Builtin it is
/// the builtin call itself (name/args read off the term).
class Literal {
 public:
  static Literal call(Term goal) { return Literal(LiteralKind::Call, std::move(goal)); }
  static Literal naf(Term goal) { return Literal(LiteralKind::Naf, std::move(goal)); }
  static Literal builtin(Term goal) {
    if (!goal.is_callable() || !is_builtin(goal.name(), goal.arity())) {
      throw MalformedClause("not a builtin: " + goal.name());
    }
    return Literal(LiteralKind::Builtin, std::move(goal));
  }

  /// Classifies a goal term: `\+ G` is negation, table entries are builtins.
  static Literal from_term(const Term& t) {
    if (t.has_functor(kNafFunctor, 1)) return naf(t.arg(0));
    if (t.is_callable() && is_builtin(t.name(), t.arity())) return builtin(t);
    return call(t);
  }

  LiteralKind kind() const noexcept { return kind_; }
  const Term& goal() const noexcept { return goal_; }

  Term as_term() const {
    return kind_ == LiteralKind::Naf ? Term::compound(std::string(kNafFunctor), {goal_}) : goal_;
  }

  friend bool operator==(const Literal&, const Literal&) = default;

 private:
  Literal(LiteralKind k, Term g) : kind_(k), goal_(std::move(g)) {}
  LiteralKind kind_;
  Term goal_;
};

struct Clause {
  Term head;
  std::vector<Literal> body;
  std::optional<std::string> tag;
  bool enabled = true;

  bool is_fact() const noexcept { return body.empty(); }

  friend bool operator==(const Clause&, const Clause&) = default;
};

inline Clause make_fact(Term head, std::optional<std::string> tag = std::nullopt) {
  return Clause{std::move(head), {}, std::move(tag), true};
}

inline Clause make_rule(Term head, std::vector<Term> body, std::optional<std::string> tag = std::nullopt) {
  std::vector<Literal> lits;
  lits.reserve(body.size());
  for (const auto& g : body) lits.push_back(Literal::from_term(g));
  return Clause{std::move(head), std::move(lits), std::move(tag), true};
}

inline void validate_clause(const Clause& c) {
  if (!c.head.is_callable()) {
    throw MalformedClause("clause head must be an atom or compound term");
  }
  if (is_builtin(c.head.name(), c.head.arity()) || c.head.has_functor(kNafFunctor, 1)) {
    throw MalformedClause("clause head redefines builtin " + c.head.name() + "/" + std::to_string(c.head.arity()));
  }
  for (const auto& lit : c.body) {
    if (!lit.goal().is_callable()) {
      throw MalformedClause("body goal of " + c.head.name() + " is not callable");
    }
  }
}

namespace detail {

inline Term rename_term(const Term& t, const std::string& suffix) {
  if (t.is_ground()) return t;
  if (t.is_variable()) return Term::variable(t.name() + suffix);
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(rename_term(a, suffix));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace detail

/// Alphabetic variant of c with every variable suffixed by `#n`, where n is
/// the current counter value; the counter is advanced. '#' never occurs in
/// source-level variable names, so renamed clauses stay apart from queries.
inline Clause rename_apart(const Clause& c, std::uint64_t& counter) {
  const std::string suffix = "#" + std::to_string(counter++);
  Clause out{detail::rename_term(c.head, suffix), {}, c.tag, c.enabled};
  out.body.reserve(c.body.size());
  for (const auto& lit : c.body) {
    Term g = detail::rename_term(lit.goal(), suffix);
    switch (lit.kind()) {
      case LiteralKind::Call: out.body.push_back(Literal::call(std::move(g))); break;
      case LiteralKind::Naf: out.body.push_back(Literal::naf(std::move(g))); break;
      case LiteralKind::Builtin: out.body.push_back(Literal::builtin(std::move(g))); break;
    }
  }
  return out;
}

}  // namespace logjudge

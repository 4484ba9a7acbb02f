#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logjudge {

/// Term kinds, declared in the standard order of terms.
enum class TermKind : std::uint8_t { Variable, Int, Atom, Str, Compound };

/// Immutable first-order term. Copies share structure.
class Term {
 public:
  static Term variable(std::string name) {
    return Term(std::make_shared<const Node>(TermKind::Variable, std::move(name), 0, std::vector<Term>{}, false));
  }
  static Term atom(std::string symbol) {
    return Term(std::make_shared<const Node>(TermKind::Atom, std::move(symbol), 0, std::vector<Term>{}, true));
  }
  static Term integer(std::int64_t value) {
    return Term(std::make_shared<const Node>(TermKind::Int, std::string{}, value, std::vector<Term>{}, true));
  }
  static Term string(std::string text) {
    return Term(std::make_shared<const Node>(TermKind::Str, std::move(text), 0, std::vector<Term>{}, true));
  }
  // Zero-arity symbols are atoms, so args must be nonempty.
  static Term compound(std::string functor, std::vector<Term> args) {
    if (args.empty()) {
      throw std::invalid_argument("compound term '" + functor + "' needs at least one argument");
    }
    bool ground = true;
    for (const auto& a : args) ground = ground && a.is_ground();
    return Term(std::make_shared<const Node>(TermKind::Compound, std::move(functor), 0, std::move(args), ground));
  }

  TermKind kind() const noexcept { return node_->kind; }
  bool is_variable() const noexcept { return kind() == TermKind::Variable; }
  bool is_atom() const noexcept { return kind() == TermKind::Atom; }
  bool is_int() const noexcept { return kind() == TermKind::Int; }
  bool is_str() const noexcept { return kind() == TermKind::Str; }
  bool is_compound() const noexcept { return kind() == TermKind::Compound; }
  bool is_callable() const noexcept { return is_atom() || is_compound(); }
  bool is_ground() const noexcept { return node_->ground; }

  /// Variable name, atom symbol, string text or compound functor.
  const std::string& name() const noexcept { return node_->text; }
  std::int64_t int_value() const noexcept { return node_->value; }
  std::span<const Term> args() const noexcept { return node_->args; }
  std::size_t arity() const noexcept { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  bool is_atom(std::string_view symbol) const noexcept { return is_atom() && name() == symbol; }
  bool has_functor(std::string_view functor, std::size_t n) const noexcept {
    return n == 0 ? is_atom(functor) : (is_compound() && arity() == n && name() == functor);
  }

  /// True when both handles point at the same node (cheap identity test).
  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) { return compare(a, b) <=> 0; }

  /// Standard order: Variables < Ints < Atoms < Strs < Compounds; compounds by
  /// arity, then functor, then arguments left to right.
  static int compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
      case TermKind::Int:
        return a.int_value() < b.int_value() ? -1 : (a.int_value() > b.int_value() ? 1 : 0);
      case TermKind::Variable:
      case TermKind::Atom:
      case TermKind::Str:
        return sign(a.name().compare(b.name()));
      case TermKind::Compound: {
        if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
        if (int c = sign(a.name().compare(b.name())); c != 0) return c;
        for (std::size_t i = 0; i < a.arity(); ++i) {
          if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
        }
        return 0;
      }
    }
    return 0;
  }

 private:
  struct Node {
    Node(TermKind k, std::string t, std::int64_t v, std::vector<Term> a, bool g)
        : kind(k), text(std::move(t)), value(v), args(std::move(a)), ground(g) {}
    TermKind kind;
    std::string text;
    std::int64_t value;
    std::vector<Term> args;
    bool ground;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static int sign(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Lists and tuples use the conventional encodings: '.'/2 cells ending in '[]',
// and right-nested ','/2 for parenthesised sequences.

inline constexpr std::string_view kNil = "[]";
inline constexpr std::string_view kCons = ".";
inline constexpr std::string_view kComma = ",";

inline Term nil() { return Term::atom(std::string(kNil)); }

inline Term make_list(std::span<const Term> items, std::optional<Term> tail = std::nullopt) {
  Term out = tail ? *tail : nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    out = Term::compound(std::string(kCons), {*it, out});
  }
  return out;
}

/// Elements of a proper list, or nullopt for partial / improper lists.
inline std::optional<std::vector<Term>> list_elements(const Term& list) {
  std::vector<Term> out;
  const Term* cur = &list;
  while (cur->has_functor(kCons, 2)) {
    out.push_back(cur->arg(0));
    cur = &cur->arg(1);
  }
  if (!cur->is_atom(kNil)) return std::nullopt;
  return out;
}

inline Term tuple_term(std::span<const Term> items) {
  if (items.empty()) throw std::invalid_argument("empty tuple");
  Term out = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) {
    out = Term::compound(std::string(kComma), {items[i], out});
  }
  return out;
}

inline std::vector<Term> tuple_elements(const Term& t) {
  std::vector<Term> out;
  const Term* cur = &t;
  while (cur->has_functor(kComma, 2)) {
    out.push_back(cur->arg(0));
    cur = &cur->arg(1);
  }
  out.push_back(*cur);
  return out;
}

/// Distinct variable names of t in first-occurrence (left-to-right) order.
inline void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    for (const auto& n : out) {
      if (n == t.name()) return;
    }
    out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

inline std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

inline bool occurs_in(std::string_view var, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_variable()) return t.name() == var;
  for (const auto& a : t.args()) {
    if (occurs_in(var, a)) return true;
  }
  return false;
}

}  // namespace logjudge

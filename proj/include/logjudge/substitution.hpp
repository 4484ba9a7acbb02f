#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logjudge/term.hpp"

namespace logjudge {

/// Finite map from variable names to terms, kept idempotent: no bound
/// variable ever appears inside a binding.
class Substitution {
 public:
  using Map = std::map<std::string, Term, std::less<>>;

  Substitution() = default;

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const Map& bindings() const noexcept { return bindings_; }

  const Term* lookup(std::string_view var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  Term apply(const Term& t) const {
    if (t.is_ground() || bindings_.empty()) return t;
    if (t.is_variable()) {
      const Term* b = lookup(t.name());
      return b ? *b : t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
      args.push_back(apply(a));
      changed = changed || !args.back().same_node(a);
    }
    return changed ? Term::compound(t.name(), std::move(args)) : t;
  }

  /// Binds var to value (value must already be normalised under *this).
  /// Returns false when the occurs check fails.
  bool bind(const std::string& var, const Term& value) {
    if (value.is_variable() && value.name() == var) return true;
    if (occurs_in(var, value)) return false;
    for (auto& [name, bound] : bindings_) {
      if (occurs_in(var, bound)) bound = replace(bound, var, value);
    }
    bindings_.insert_or_assign(var, value);
    return true;
  }

  /// Restriction of this substitution to the given variables.
  Substitution restricted_to(const std::vector<std::string>& vars) const {
    Substitution out;
    for (const auto& v : vars) {
      if (const Term* b = lookup(v)) out.bindings_.emplace(v, *b);
    }
    return out;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  static Term replace(const Term& t, const std::string& var, const Term& value) {
    if (t.is_ground()) return t;
    if (t.is_variable()) return t.name() == var ? value : t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(replace(a, var, value));
    return Term::compound(t.name(), std::move(args));
  }

  Map bindings_;
};

inline Term apply(const Substitution& s, const Term& t) { return s.apply(t); }

/// Most general unifier of a and b extending `within`, with occurs check.
/// Returns nullopt when the terms do not unify.
inline std::optional<Substitution> unify(const Term& a, const Term& b, Substitution within = {}) {
  std::vector<std::pair<Term, Term>> pending{{a, b}};
  while (!pending.empty()) {
    auto [l, r] = std::move(pending.back());
    pending.pop_back();
    l = within.apply(l);
    r = within.apply(r);
    if (l.same_node(r)) continue;
    if (l.is_variable() || r.is_variable()) {
      if (l.is_variable() && r.is_variable() && l.name() == r.name()) continue;
      const Term& var = l.is_variable() ? l : r;
      const Term& value = l.is_variable() ? r : l;
      if (!within.bind(var.name(), value)) return std::nullopt;
      continue;
    }
    if (l.kind() != r.kind()) return std::nullopt;
    switch (l.kind()) {
      case TermKind::Int:
        if (l.int_value() != r.int_value()) return std::nullopt;
        break;
      case TermKind::Atom:
      case TermKind::Str:
        if (l.name() != r.name()) return std::nullopt;
        break;
      case TermKind::Compound:
        if (l.arity() != r.arity() || l.name() != r.name()) return std::nullopt;
        for (std::size_t i = l.arity(); i-- > 0;) pending.emplace_back(l.args()[i], r.args()[i]);
        break;
      case TermKind::Variable:
        break;
    }
  }
  return within;
}

}  // namespace logjudge

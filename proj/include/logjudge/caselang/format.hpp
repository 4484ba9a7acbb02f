#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "logjudge/caselang/program.hpp"
#include "logjudge/clause.hpp"
#include "logjudge/term.hpp"

namespace logjudge::caselang {

namespace detail {

inline bool is_bare_atom(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

inline std::string quote(std::string_view s, char q) {
  std::string out(1, q);
  for (char c : s) {
    if (c == q) out.push_back(q);
    out.push_back(c);
  }
  out.push_back(q);
  return out;
}

inline bool is_infix(const Term& t) {
  if (!t.is_compound() || t.arity() != 2) return false;
  const std::string& f = t.name();
  return f == "+" || f == "-" || f == "*" || f == ">" || f == "<" || f == ">=" || f == "=<" || f == "\\=" ||
         f == "is";
}

inline bool is_operator_term(const Term& t) { return is_infix(t) || t.has_functor(kNafFunctor, 1); }

}  // namespace detail

inline std::string format_atom(std::string_view symbol) {
  if (symbol == kNil || detail::is_bare_atom(symbol)) return std::string(symbol);
  return detail::quote(symbol, '\'');
}

/// Canonical text of a term: minimal quoting, ", " between arguments,
/// infix for the builtin operators, list and tuple sugar.
inline std::string format_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
      // Anonymous variables are numbered "_#k" by the parser.
      return t.name().starts_with("_#") ? "_" : t.name();
    case TermKind::Int:
      return std::to_string(t.int_value());
    case TermKind::Atom:
      return format_atom(t.name());
    case TermKind::Str:
      return detail::quote(t.name(), '"');
    case TermKind::Compound:
      break;
  }
  auto operand = [](const Term& a) {
    std::string s = format_term(a);
    return detail::is_operator_term(a) ? "(" + s + ")" : s;
  };
  if (t.has_functor(kCons, 2)) {
    std::string out = "[";
    const Term* cur = &t;
    bool first = true;
    while (cur->has_functor(kCons, 2)) {
      if (!first) out += ", ";
      out += format_term(cur->arg(0));
      first = false;
      cur = &cur->arg(1);
    }
    if (!cur->is_atom(kNil)) out += " | " + format_term(*cur);
    return out + "]";
  }
  if (t.has_functor(kComma, 2)) {
    std::string out = "(";
    auto items = tuple_elements(t);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += format_term(items[i]);
    }
    return out + ")";
  }
  if (detail::is_infix(t)) return operand(t.arg(0)) + " " + t.name() + " " + operand(t.arg(1));
  if (t.has_functor(kNafFunctor, 1)) return "\\+ " + operand(t.arg(0));
  std::string out = format_atom(t.name()) + "(";
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ", ";
    out += format_term(t.arg(i));
  }
  return out + ")";
}

inline std::string format_literal(const Literal& l) { return format_term(l.as_term()); }

inline std::string format_clause(const Clause& c) {
  std::string out = format_term(c.head);
  if (!c.body.empty()) {
    out += " :-";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      out += (i ? ",\n    " : "\n    ") + format_literal(c.body[i]);
    }
  }
  return out + ".";
}

namespace detail {

inline std::string format_settings(const std::vector<std::pair<std::string, legal::PolicyValue>>& settings) {
  std::string out;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (i) out += ", ";
    out += settings[i].first + "(" + format_term(legal::policy_value_to_term(settings[i].second)) + ")";
  }
  return out;
}

}  // namespace detail

inline std::string format_directive(const Directive& d) {
  struct Visitor {
    std::string operator()(const TagDirective& t) const {
      if (!t.summary) return "tag(" + format_atom(t.id) + ").";
      return "tag(" + format_atom(t.id) + ", " + format_atom(*t.summary) + ").";
    }
    std::string operator()(const EndTagDirective&) const { return "end_tag."; }
    std::string operator()(const PolicyDirective& p) const {
      return "policy(" + detail::format_settings(p.settings) + ").";
    }
    std::string operator()(const DefendantDirective& d) const { return "defendant(" + format_atom(d.name) + ")."; }
    std::string operator()(const CaseIdDirective& c) const { return "case_id(" + format_atom(c.id) + ")."; }
    std::string operator()(const PresetDirective& p) const {
      std::string out = "preset(" + format_atom(p.id) + ", [";
      for (std::size_t i = 0; i < p.enabled_tags.size(); ++i) out += (i ? ", " : "") + format_atom(p.enabled_tags[i]);
      out += "], [";
      for (std::size_t i = 0; i < p.reliability.size(); ++i) {
        out += (i ? ", " : "") + std::string("reliable(") + format_atom(p.reliability[i].first) + ", " +
               std::string(legal::to_string(p.reliability[i].second)) + ")";
      }
      out += "], ";
      out += p.expected == legal::Outcome::Responsible ? "responsible" : "acquitted";
      if (!p.policy.empty()) out += ", [" + detail::format_settings(p.policy) + "]";
      return out + ").";
    }
  };
  return std::visit(Visitor{}, d);
}

/// One statement per line group; a blank line precedes each evidence tag.
inline std::string format_program(const SourceProgram& p) {
  std::string out;
  for (const auto& s : p.statements) {
    if (const auto* d = std::get_if<Directive>(&s.content)) {
      if (std::holds_alternative<TagDirective>(*d) && !out.empty()) out += "\n";
      out += format_directive(*d);
    } else {
      out += format_clause(std::get<Clause>(s.content));
    }
    out += "\n";
  }
  return out;
}

}  // namespace logjudge::caselang

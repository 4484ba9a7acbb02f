#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logjudge/errors.hpp"
#include "logjudge/substitution.hpp"
#include "logjudge/term.hpp"

namespace logjudge {

namespace detail {

inline std::string describe(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable: return "variable " + t.name();
    case TermKind::Int: return std::to_string(t.int_value());
    case TermKind::Atom: return "atom " + t.name();
    case TermKind::Str: return "string \"" + t.name() + "\"";
    case TermKind::Compound: return t.name() + "/" + std::to_string(t.arity());
  }
  return "term";
}

template <typename Op>
std::int64_t checked(Op op) {
  std::int64_t r = 0;
  if (op(r)) throw TypeError("integer overflow in arithmetic");
  return r;
}

}  // namespace detail

/// Evaluates an integer expression over +, - and *.
inline std::int64_t eval_arithmetic(const Term& e) {
  switch (e.kind()) {
    case TermKind::Int:
      return e.int_value();
    case TermKind::Variable:
      throw InstantiationError("arithmetic on unbound " + detail::describe(e));
    case TermKind::Compound: {
      if (e.arity() == 2 && (e.name() == "+" || e.name() == "-" || e.name() == "*")) {
        std::int64_t a = eval_arithmetic(e.arg(0));
        std::int64_t b = eval_arithmetic(e.arg(1));
        if (e.name() == "+") return detail::checked([&](std::int64_t& r) { return __builtin_add_overflow(a, b, &r); });
        if (e.name() == "-") return detail::checked([&](std::int64_t& r) { return __builtin_sub_overflow(a, b, &r); });
        return detail::checked([&](std::int64_t& r) { return __builtin_mul_overflow(a, b, &r); });
      }
      if (e.arity() == 1 && e.name() == "-") {
        std::int64_t a = eval_arithmetic(e.arg(0));
        return detail::checked([&](std::int64_t& r) { return __builtin_sub_overflow(std::int64_t{0}, a, &r); });
      }
      break;
    }
    default:
      break;
  }
  throw TypeError("not an integer expression: " + detail::describe(e));
}

/// Minutes since the civil epoch for a date(Year, Month, Day, Hour, Minute)
/// term (proleptic Gregorian calendar, no time zones).
inline std::int64_t date_to_minutes(const Term& d) {
  if (!d.is_ground()) throw InstantiationError("date must be ground");
  if (!d.has_functor("date", 5)) throw TypeError("expected date/5, got " + detail::describe(d));
  std::int64_t f[5];
  for (std::size_t i = 0; i < 5; ++i) {
    if (!d.arg(i).is_int()) throw TypeError("date fields must be integers");
    f[i] = d.arg(i).int_value();
  }
  using namespace std::chrono;
  if (f[0] < -30000 || f[0] > 30000 || f[1] < 1 || f[1] > 12 || f[2] < 1 || f[2] > 31) {
    throw TypeError("malformed date");
  }
  year_month_day ymd{year{static_cast<int>(f[0])}, month{static_cast<unsigned>(f[1])},
                     day{static_cast<unsigned>(f[2])}};
  if (!ymd.ok() || f[3] < 0 || f[3] > 23 || f[4] < 0 || f[4] > 59) throw TypeError("malformed date");
  return static_cast<std::int64_t>(sys_days{ymd}.time_since_epoch().count()) * 1440 + f[3] * 60 + f[4];
}

/// Solutions of a deterministic or enumerating builtin (everything in the
/// builtin table except setof/3, which needs a knowledge base). Arguments are
/// taken as already normalised under `within`.
inline std::vector<Substitution> eval_builtin(std::string_view name, std::span<const Term> args,
                                              const Substitution& within) {
  std::vector<Substitution> out;
  auto push = [&](std::optional<Substitution> s) {
    if (s) out.push_back(std::move(*s));
  };
  auto require_bound = [&](const Term& t, std::string_view what) {
    if (t.is_variable()) throw InstantiationError(std::string(name) + ": " + std::string(what) + " is unbound");
  };

  if (name == "length" && args.size() == 2) {
    require_bound(args[0], "list");
    auto elems = list_elements(args[0]);
    if (!elems) {
      if (!args[0].is_ground()) throw InstantiationError("length: partial list");
      throw TypeError("length: not a list: " + detail::describe(args[0]));
    }
    push(unify(args[1], Term::integer(static_cast<std::int64_t>(elems->size())), within));
  } else if (name == "member" && args.size() == 2) {
    require_bound(args[1], "list");
    auto elems = list_elements(args[1]);
    if (!elems) throw InstantiationError("member: list is partial or improper");
    for (const auto& e : *elems) push(unify(args[0], e, within));
  } else if ((name == ">" || name == "<" || name == ">=" || name == "=<") && args.size() == 2) {
    std::int64_t a = eval_arithmetic(args[0]);
    std::int64_t b = eval_arithmetic(args[1]);
    bool ok = name == ">" ? a > b : name == "<" ? a < b : name == ">=" ? a >= b : a <= b;
    if (ok) out.push_back(within);
  } else if (name == "\\=" && args.size() == 2) {
    require_bound(args[0], "left side");
    require_bound(args[1], "right side");
    if (!unify(args[0], args[1], within)) out.push_back(within);
  } else if (name == "is" && args.size() == 2) {
    push(unify(args[0], Term::integer(eval_arithmetic(args[1])), within));
  } else if (name == "minutes_between" && args.size() == 3) {
    std::int64_t a = date_to_minutes(args[0]);
    std::int64_t b = date_to_minutes(args[1]);
    push(unify(args[2], Term::integer(a > b ? a - b : b - a), within));
  } else {
    throw EngineError("no builtin " + std::string(name) + "/" + std::to_string(args.size()));
  }
  return out;
}

}  // namespace logjudge

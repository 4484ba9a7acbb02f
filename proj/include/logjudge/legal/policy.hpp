#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logjudge/term.hpp"

namespace logjudge::legal {

/// Two-level strength used for both severity and precision.
enum class Level : std::uint8_t { Hi, Lo };

inline std::string_view to_string(Level l) { return l == Level::Hi ? "hi" : "lo"; }

inline std::optional<Level> parse_level(std::string_view s) {
  if (s == "hi") return Level::Hi;
  if (s == "lo") return Level::Lo;
  return std::nullopt;
}

enum class Outcome : std::uint8_t { Responsible, Acquitted };

inline std::string_view to_string(Outcome o) { return o == Outcome::Responsible ? "Responsible" : "Acquitted"; }

inline std::optional<Outcome> parse_outcome(std::string_view s) {
  if (s == "responsible" || s == "Responsible") return Outcome::Responsible;
  if (s == "acquitted" || s == "Acquitted") return Outcome::Acquitted;
  return std::nullopt;
}

using PolicyValue = std::variant<std::int64_t, bool>;
using PolicyOverrides = std::map<std::string, PolicyValue, std::less<>>;

enum class PolicyKeyType : std::uint8_t { Integer, Boolean };

inline constexpr std::array<std::pair<std::string_view, PolicyKeyType>, 5> kPolicyKeys{{
    {"min_evidence_count", PolicyKeyType::Integer},
    {"require_severe_precise", PolicyKeyType::Boolean},
    {"colocation_window_minutes", PolicyKeyType::Integer},
    {"scene_window_minutes", PolicyKeyType::Integer},
    {"corroboration_threshold_pct", PolicyKeyType::Integer},
}};

inline std::optional<PolicyKeyType> policy_key_type(std::string_view key) {
  for (const auto& [k, t] : kPolicyKeys) {
    if (k == key) return t;
  }
  return std::nullopt;
}

class PolicyError : public std::invalid_argument {
 public:
  PolicyError(std::string key, const std::string& message) : std::invalid_argument(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Evidence aggregation thresholds. Identity is established when the number
/// of distinct assessments is strictly greater than min_evidence_count and,
/// if require_severe_precise, one of them is severe and precise.
struct Policy {
  std::int64_t min_evidence_count = 1;
  bool require_severe_precise = true;
  std::int64_t colocation_window_minutes = 10;
  std::int64_t scene_window_minutes = 15;
  std::int64_t corroboration_threshold_pct = 80;

  /// Invariant violations as (key, message) pairs; empty when valid.
  std::vector<std::pair<std::string, std::string>> violations() const {
    std::vector<std::pair<std::string, std::string>> out;
    if (min_evidence_count < 0) out.emplace_back("min_evidence_count", "must be >= 0");
    if (colocation_window_minutes < 0) out.emplace_back("colocation_window_minutes", "must be >= 0");
    if (scene_window_minutes < 0) out.emplace_back("scene_window_minutes", "must be >= 0");
    if (corroboration_threshold_pct < 0 || corroboration_threshold_pct > 100) {
      out.emplace_back("corroboration_threshold_pct", "must be within 0..100");
    }
    return out;
  }

  PolicyOverrides settings() const {
    return {{"min_evidence_count", min_evidence_count},
            {"require_severe_precise", require_severe_precise},
            {"colocation_window_minutes", colocation_window_minutes},
            {"scene_window_minutes", scene_window_minutes},
            {"corroboration_threshold_pct", corroboration_threshold_pct}};
  }

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// Throws PolicyError for unknown keys or values of the wrong type.
inline void apply_setting(Policy& p, std::string_view key, const PolicyValue& value) {
  auto type = policy_key_type(key);
  if (!type) throw PolicyError(std::string(key), "unknown policy key '" + std::string(key) + "'");
  if (*type == PolicyKeyType::Boolean) {
    if (!std::holds_alternative<bool>(value)) {
      throw PolicyError(std::string(key), "policy key '" + std::string(key) + "' expects true or false");
    }
    p.require_severe_precise = std::get<bool>(value);
    return;
  }
  if (!std::holds_alternative<std::int64_t>(value)) {
    throw PolicyError(std::string(key), "policy key '" + std::string(key) + "' expects an integer");
  }
  std::int64_t v = std::get<std::int64_t>(value);
  if (key == "min_evidence_count") p.min_evidence_count = v;
  else if (key == "colocation_window_minutes") p.colocation_window_minutes = v;
  else if (key == "scene_window_minutes") p.scene_window_minutes = v;
  else p.corroboration_threshold_pct = v;
}

inline Policy with_overrides(Policy p, const PolicyOverrides& overrides) {
  for (const auto& [k, v] : overrides) apply_setting(p, k, v);
  return p;
}

/// Integer terms and the atoms true/false.
inline std::optional<PolicyValue> policy_value_from_term(const Term& t) {
  if (t.is_int()) return PolicyValue{t.int_value()};
  if (t.is_atom("true")) return PolicyValue{true};
  if (t.is_atom("false")) return PolicyValue{false};
  return std::nullopt;
}

inline Term policy_value_to_term(const PolicyValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return Term::atom(*b ? "true" : "false");
  return Term::integer(std::get<std::int64_t>(v));
}

/// Parses textual values such as "3" or "false" for the given key.
inline PolicyValue parse_policy_value(std::string_view key, std::string_view text) {
  auto type = policy_key_type(key);
  if (!type) throw PolicyError(std::string(key), "unknown policy key '" + std::string(key) + "'");
  if (*type == PolicyKeyType::Boolean) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw PolicyError(std::string(key), "policy key '" + std::string(key) + "' expects true or false");
  }
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw PolicyError(std::string(key), "policy key '" + std::string(key) + "' expects an integer");
  }
  return v;
}

}  // namespace logjudge::legal

#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logjudge/legal/verdict.hpp"
#include "logjudge/scenario/case_file.hpp"

namespace logjudge::scenario {

/// One question put to the court: which evidences count, whom to believe,
/// and which thresholds apply.
struct ScenarioSpec {
  std::optional<std::vector<std::string>> enabled_tags;  // nullopt: every tag
  std::map<std::string, legal::Level, std::less<>> reliability_overrides;
  legal::PolicyOverrides policy_overrides;
  std::optional<std::string> suspect;  // nullopt: the case's defendant
  bool explain = false;
};

struct FieldError {
  std::string field;
  std::string message;
  friend bool operator==(const FieldError&, const FieldError&) = default;
};

/// A scenario rejected before solving. InvalidInput covers unknown names and
/// ill-typed values; PolicyViolation covers well-typed policies outside
/// their invariants.
class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { InvalidInput, PolicyViolation };

  ScenarioError(Kind kind, std::vector<FieldError> fields)
      : std::runtime_error(summarize(fields)), kind_(kind), fields_(std::move(fields)) {}

  Kind kind() const noexcept { return kind_; }
  const std::vector<FieldError>& fields() const noexcept { return fields_; }

 private:
  static std::string summarize(const std::vector<FieldError>& fields) {
    std::string out;
    for (const auto& f : fields) out += (out.empty() ? "" : "; ") + f.field + ": " + f.message;
    return out;
  }
  Kind kind_;
  std::vector<FieldError> fields_;
};

/// The scenario after defaults are filled in.
struct ResolvedScenario {
  std::string case_id;
  std::string suspect;
  std::vector<std::string> enabled_tags;  // case declaration order
  std::map<std::string, legal::Level, std::less<>> reliability_overrides;
  legal::PolicyOverrides policy_overrides;
  bool explain = false;
};

struct RunReport {
  ResolvedScenario scenario;
  legal::Policy policy;
  legal::Judgement judgement;
  std::optional<ProofNode> proof;  // explain requested and verdict Responsible
  double elapsed_ms = 0;

  legal::Outcome outcome() const { return legal::outcome_of(judgement.verdict); }
};

/// 0 for Responsible, 1 for Acquitted.
inline int exit_status(const RunReport& r) { return r.outcome() == legal::Outcome::Responsible ? 0 : 1; }

/// Checks `spec` against the case and fills in defaults. Throws ScenarioError.
inline std::pair<ResolvedScenario, legal::Policy> resolve(const CaseFile& cf, const ScenarioSpec& spec) {
  ResolvedScenario r;
  r.case_id = cf.case_id;
  r.explain = spec.explain;
  std::vector<FieldError> invalid;

  if (spec.suspect) r.suspect = *spec.suspect;
  else if (cf.defendant) r.suspect = *cf.defendant;
  if (r.suspect.empty()) invalid.push_back({"suspect", "no suspect given and the case declares no defendant"});

  if (spec.enabled_tags) {
    for (const auto& t : *spec.enabled_tags) {
      if (!cf.evidence(t)) invalid.push_back({"enabled_tags", "unknown tag '" + t + "'"});
    }
    for (const auto& e : cf.evidences) {
      if (std::find(spec.enabled_tags->begin(), spec.enabled_tags->end(), e.tag) != spec.enabled_tags->end()) {
        r.enabled_tags.push_back(e.tag);
      }
    }
  } else {
    r.enabled_tags = cf.tags();
  }

  for (const auto& [w, level] : spec.reliability_overrides) {
    if (!cf.witness(w)) invalid.push_back({"reliability_overrides." + w, "unknown witness '" + w + "'"});
  }
  r.reliability_overrides = spec.reliability_overrides;

  legal::Policy policy = cf.default_policy;
  for (const auto& [k, v] : spec.policy_overrides) {
    try {
      legal::apply_setting(policy, k, v);
    } catch (const legal::PolicyError& e) {
      invalid.push_back({"policy_overrides." + k, e.what()});
    }
  }
  r.policy_overrides = spec.policy_overrides;
  if (!invalid.empty()) throw ScenarioError(ScenarioError::Kind::InvalidInput, std::move(invalid));

  std::vector<FieldError> violations;
  for (const auto& [k, msg] : policy.violations()) violations.push_back({"policy_overrides." + k, msg});
  if (!violations.empty()) throw ScenarioError(ScenarioError::Kind::PolicyViolation, std::move(violations));
  return {std::move(r), policy};
}

/// The case knowledge base with only `enabled_tags` active and the given
/// reliability facts replacing the file's.
inline KnowledgeBase scenario_kb(const CaseFile& cf, const ResolvedScenario& r) {
  KnowledgeBase kb = cf.kb;
  for (const auto& tag : kb.tags()) {
    bool on = std::find(r.enabled_tags.begin(), r.enabled_tags.end(), tag) != r.enabled_tags.end();
    kb = kb.set_enabled(tag, on);
  }
  if (r.reliability_overrides.empty()) return kb;
  kb = kb.remove_if([&](const Clause& c) {
    return c.body.empty() && c.head.has_functor("reliable", 2) && c.head.arg(0).is_atom() &&
           r.reliability_overrides.contains(c.head.arg(0).name());
  });
  std::vector<Clause> facts;
  for (const auto& [w, level] : r.reliability_overrides) {
    facts.push_back(make_fact(Term::compound("reliable", {Term::atom(w), Term::atom(std::string(legal::to_string(level)))})));
  }
  return kb.load(facts);
}

inline RunReport run_scenario(const CaseFile& cf, const ScenarioSpec& spec, SolveLimits limits = {}) {
  auto start = std::chrono::steady_clock::now();
  auto [resolved, policy] = resolve(cf, spec);
  KnowledgeBase kb = scenario_kb(cf, resolved);
  legal::Judgement j = legal::judge(kb, policy, Term::atom(resolved.suspect), limits);
  std::optional<ProofNode> proof;
  if (resolved.explain) {
    if (const auto* r = std::get_if<legal::Responsible>(&j.verdict)) proof = r->proof;
  }
  RunReport report{std::move(resolved), policy, std::move(j), std::move(proof), 0};
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline ScenarioSpec preset_spec(const Preset& p, bool explain = false) {
  return ScenarioSpec{p.enabled_tags, p.reliability_overrides, p.policy_overrides, std::nullopt, explain};
}

struct SuiteRow {
  std::string id;
  legal::Outcome expected;
  legal::Outcome actual;
  bool pass;
};

/// Runs every preset of the case. Throws ScenarioError when there is none.
inline std::vector<SuiteRow> run_suite(const CaseFile& cf, SolveLimits limits = {}) {
  if (cf.presets.empty()) {
    throw ScenarioError(ScenarioError::Kind::InvalidInput, {{"presets", "the case file declares no presets"}});
  }
  std::vector<SuiteRow> rows;
  for (const auto& p : cf.presets) {
    legal::Outcome actual = run_scenario(cf, preset_spec(p), limits).outcome();
    rows.push_back({p.id, p.expected, actual, actual == p.expected});
  }
  return rows;
}

inline bool all_pass(const std::vector<SuiteRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
}

}  // namespace logjudge::scenario

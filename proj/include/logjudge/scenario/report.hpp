#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "logjudge/caselang/format.hpp"
#include "logjudge/legal/render.hpp"
#include "logjudge/scenario/scenario.hpp"

namespace logjudge::scenario {

using Json = nlohmann::ordered_json;

inline Json policy_value_json(const legal::PolicyValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::int64_t>(v);
}

inline Json policy_json(const legal::PolicyOverrides& settings) {
  Json out = Json::object();
  for (const auto& [k, v] : settings) out[k] = policy_value_json(v);
  return out;
}

/// Policy in key declaration order.
inline Json policy_json(const legal::Policy& p) {
  Json out = Json::object();
  auto settings = p.settings();
  for (const auto& [k, _] : legal::kPolicyKeys) out[std::string(k)] = policy_value_json(settings.find(k)->second);
  return out;
}

inline Json proof_json(const ProofNode& n) {
  Json out = {{"goal", caselang::format_term(n.goal)}, {"justification", to_string(n.justification)}};
  if (n.clause_index) out["clause"] = *n.clause_index;
  if (n.tag) out["tag"] = *n.tag;
  Json children = Json::array();
  for (const auto& c : n.children) children.push_back(proof_json(c));
  out["children"] = std::move(children);
  return out;
}

inline Json assessment_json(const legal::EvidenceAssessment& a) {
  return {{"descriptor", caselang::format_term(a.descriptor)},
          {"severity", legal::to_string(a.severity)},
          {"precision", legal::to_string(a.precision)},
          {"supporting_tags", a.supporting_tags}};
}

inline Json scenario_json(const ResolvedScenario& s) {
  Json rel = Json::object();
  for (const auto& [w, l] : s.reliability_overrides) rel[w] = legal::to_string(l);
  return {{"case", s.case_id},
          {"suspect", s.suspect},
          {"enabled_tags", s.enabled_tags},
          {"reliability_overrides", std::move(rel)},
          {"policy_overrides", policy_json(s.policy_overrides)},
          {"explain", s.explain}};
}

/// The structured report shared by the command line and the service.
inline Json report_json(const RunReport& r) {
  Json out;
  out["verdict"] = legal::to_string(r.outcome());
  if (const auto* a = std::get_if<legal::Acquitted>(&r.judgement.verdict)) {
    out["ground"] = legal::ground_text(a->ground);
    out["finding"] = nullptr;
  } else {
    const auto& resp = std::get<legal::Responsible>(r.judgement.verdict);
    out["ground"] = nullptr;
    Json identity = Json::array();
    for (const auto& e : resp.identity_evidences) identity.push_back(caselang::format_term(e.descriptor));
    out["finding"] = {{"perpetrator", legal::display(resp.perpetrator)},
                      {"crime", legal::display(resp.crime)},
                      {"date", legal::format_date(resp.date)},
                      {"place", legal::display(resp.place)},
                      {"crime_evidence", caselang::format_term(resp.crime_source)},
                      {"identity_evidences", std::move(identity)}};
  }
  Json evidences = Json::array();
  for (const auto& a : r.judgement.assessments) evidences.push_back(assessment_json(a));
  out["evidences"] = std::move(evidences);
  if (r.proof) out["proof"] = proof_json(*r.proof);
  out["policy"] = policy_json(r.policy);
  out["scenario"] = scenario_json(r.scenario);
  out["timings"] = {{"total_ms", r.elapsed_ms}};
  return out;
}

/// Report minus the timings field, for comparing runs.
inline Json without_timings(Json report) {
  report.erase("timings");
  return report;
}

namespace detail {

inline void proof_text(const ProofNode& n, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += caselang::format_term(n.goal) + "  [" + std::string(to_string(n.justification));
  if (n.clause_index) out += " #" + std::to_string(*n.clause_index);
  if (n.tag) out += " " + *n.tag;
  out += "]\n";
  for (const auto& c : n.children) proof_text(c, depth + 1, out);
}

}  // namespace detail

/// Ruling text followed by every assessment considered and the policy.
inline std::string report_text(const RunReport& r,
                               const legal::RulingTemplate& tmpl = legal::RulingTemplate::standard()) {
  std::string out = "Case " + r.scenario.case_id + ", suspect " + r.scenario.suspect + "\nEvidences enabled:";
  for (const auto& t : r.scenario.enabled_tags) out += " " + t;
  if (r.scenario.enabled_tags.empty()) out += " none";
  for (const auto& [w, l] : r.scenario.reliability_overrides) {
    out += "\nReliability override: " + w + " = " + std::string(legal::to_string(l));
  }
  out += "\n\nVerdict: " + std::string(legal::to_string(r.outcome()));
  if (const auto* a = std::get_if<legal::Acquitted>(&r.judgement.verdict)) {
    out += " (" + std::string(legal::ground_text(a->ground)) + ")";
  }
  out += "\n\n" + legal::render_verdict(r.judgement.verdict, tmpl);
  if (!out.ends_with('\n')) out += '\n';
  out += "\nIdentity evidences considered:\n";
  if (r.judgement.assessments.empty()) out += "  none\n";
  for (const auto& a : r.judgement.assessments) out += "  - " + legal::format_assessment(a) + "\n";
  out += "\nPolicy: " + policy_json(r.policy).dump() + "\n";
  if (r.proof) {
    out += "\nProof:\n";
    detail::proof_text(*r.proof, 1, out);
  }
  return out;
}

/// Reads an evaluation request body. Throws ScenarioError (InvalidInput) on
/// unknown fields and ill-typed values; names are checked later by resolve.
inline ScenarioSpec spec_from_json(const Json& body) {
  ScenarioSpec spec;
  std::vector<FieldError> errors;
  if (!body.is_object()) {
    throw ScenarioError(ScenarioError::Kind::InvalidInput, {{"body", "expected a JSON object"}});
  }
  for (const auto& [key, value] : body.items()) {
    if (key == "enabled_tags") {
      if (value.is_null()) continue;
      if (!value.is_array()) {
        errors.push_back({key, "expected an array of tags"});
        continue;
      }
      std::vector<std::string> tags;
      for (const auto& t : value) {
        if (t.is_string()) tags.push_back(t.get<std::string>());
        else errors.push_back({key, "tags must be strings"});
      }
      spec.enabled_tags = std::move(tags);
    } else if (key == "reliability_overrides") {
      if (!value.is_object()) {
        errors.push_back({key, "expected an object mapping witnesses to hi or lo"});
        continue;
      }
      for (const auto& [w, l] : value.items()) {
        auto level = l.is_string() ? legal::parse_level(l.get<std::string>()) : std::nullopt;
        if (!level) errors.push_back({key + "." + w, "expected \"hi\" or \"lo\""});
        else spec.reliability_overrides[w] = *level;
      }
    } else if (key == "policy_overrides") {
      if (!value.is_object()) {
        errors.push_back({key, "expected an object of policy settings"});
        continue;
      }
      for (const auto& [k, v] : value.items()) {
        auto type = legal::policy_key_type(k);
        if (!type) errors.push_back({key + "." + k, "unknown policy key '" + k + "'"});
        else if (*type == legal::PolicyKeyType::Boolean && v.is_boolean()) spec.policy_overrides[k] = v.get<bool>();
        else if (*type == legal::PolicyKeyType::Integer && v.is_number_integer()) {
          spec.policy_overrides[k] = v.get<std::int64_t>();
        } else {
          errors.push_back({key + "." + k, *type == legal::PolicyKeyType::Boolean ? "expected true or false"
                                                                                   : "expected an integer"});
        }
      }
    } else if (key == "explain") {
      if (value.is_boolean()) spec.explain = value.get<bool>();
      else errors.push_back({key, "expected true or false"});
    } else if (key == "suspect") {
      if (value.is_string()) spec.suspect = value.get<std::string>();
      else if (!value.is_null()) errors.push_back({key, "expected a string"});
    } else {
      errors.push_back({key, "unknown field"});
    }
  }
  if (!errors.empty()) throw ScenarioError(ScenarioError::Kind::InvalidInput, std::move(errors));
  return spec;
}

/// Request body reproducing `spec`; inverse of spec_from_json.
inline Json spec_json(const ScenarioSpec& spec) {
  Json out = Json::object();
  if (spec.enabled_tags) out["enabled_tags"] = *spec.enabled_tags;
  Json rel = Json::object();
  for (const auto& [w, l] : spec.reliability_overrides) rel[w] = legal::to_string(l);
  out["reliability_overrides"] = std::move(rel);
  out["policy_overrides"] = policy_json(spec.policy_overrides);
  out["explain"] = spec.explain;
  if (spec.suspect) out["suspect"] = *spec.suspect;
  return out;
}

/// Everything the console needs to present the case.
inline Json case_descriptor(const CaseFile& cf) {
  Json evidences = Json::array();
  for (const auto& e : cf.evidences) {
    evidences.push_back({{"tag", e.tag}, {"summary", e.summary}, {"witnesses", e.witnesses}});
  }
  Json witnesses = Json::array();
  for (const auto& w : cf.witnesses) {
    witnesses.push_back({{"name", w.name}, {"default_reliability", legal::to_string(w.default_reliability)}});
  }
  Json presets = Json::array();
  for (const auto& p : cf.presets) {
    Json body = spec_json(preset_spec(p));
    presets.push_back({{"id", p.id}, {"expected", legal::to_string(p.expected)}, {"request", std::move(body)}});
  }
  return {{"case", cf.case_id},
          {"suspect", cf.defendant ? Json(*cf.defendant) : Json(nullptr)},
          {"evidences", std::move(evidences)},
          {"witnesses", std::move(witnesses)},
          {"default_policy", policy_json(cf.default_policy)},
          {"presets", std::move(presets)}};
}

}  // namespace logjudge::scenario

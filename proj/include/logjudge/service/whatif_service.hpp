#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "logjudge/errors.hpp"
#include "logjudge/scenario/report.hpp"

namespace logjudge::service {

using scenario::Json;

struct Response {
  int status = 200;
  Json body;
};

inline Json error_body(std::string_view error, const std::vector<scenario::FieldError>& fields = {}) {
  Json list = Json::array();
  for (const auto& f : fields) list.push_back({{"field", f.field}, {"message", f.message}});
  return {{"error", error}, {"fields", std::move(list)}};
}

/// Evaluation endpoints over one immutable case. Holds no per-request state,
/// so handle() may run concurrently from any number of threads.
class WhatIfService {
 public:
  explicit WhatIfService(std::shared_ptr<const scenario::CaseFile> case_file, SolveLimits limits = {})
      : case_(std::move(case_file)), limits_(limits), descriptor_(scenario::case_descriptor(*case_)) {}

  const scenario::CaseFile& case_file() const noexcept { return *case_; }
  const Json& descriptor() const noexcept { return descriptor_; }

  Response health() const { return {200, {{"status", "ok"}, {"case", case_->case_id}}}; }

  Response evaluate(std::string_view body) const {
    Json parsed = Json::parse(body, nullptr, false);
    if (parsed.is_discarded()) return {400, error_body("request body is not valid JSON")};
    try {
      return run(scenario::spec_from_json(parsed));
    } catch (const scenario::ScenarioError& e) {
      return scenario_error(e);
    }
  }

  Response evaluate_preset(std::string_view id) const {
    const scenario::Preset* p = case_->preset(id);
    if (!p) return {404, error_body("unknown preset '" + std::string(id) + "'")};
    try {
      return run(scenario::preset_spec(*p));
    } catch (const scenario::ScenarioError& e) {
      return scenario_error(e);
    }
  }

  /// Routes one request by method and path.
  Response handle(std::string_view method, std::string_view path, std::string_view body = {}) const {
    constexpr std::string_view kPresets = "/api/presets/";
    constexpr std::string_view kEvaluate = "/evaluate";
    if (path == "/api/health") return method == "GET" ? health() : not_allowed();
    if (path == "/api/case") return method == "GET" ? Response{200, descriptor_} : not_allowed();
    if (path == "/api/evaluate") return method == "POST" ? evaluate(body) : not_allowed();
    if (path.starts_with(kPresets) && path.ends_with(kEvaluate) && path.size() > kPresets.size() + kEvaluate.size()) {
      std::string_view id = path.substr(kPresets.size(), path.size() - kPresets.size() - kEvaluate.size());
      if (id.find('/') == std::string_view::npos) return method == "GET" ? evaluate_preset(id) : not_allowed();
    }
    return {404, error_body("no such endpoint")};
  }

 private:
  Response run(const scenario::ScenarioSpec& spec) const {
    try {
      return {200, scenario::report_json(scenario::run_scenario(*case_, spec, limits_))};
    } catch (const EngineError& e) {
      return {500, error_body(e.what())};
    }
  }

  static Response scenario_error(const scenario::ScenarioError& e) {
    bool policy = e.kind() == scenario::ScenarioError::Kind::PolicyViolation;
    return {policy ? 422 : 400, error_body(policy ? "policy invariant violated" : "invalid scenario", e.fields())};
  }

  static Response not_allowed() { return {405, error_body("method not allowed")}; }

  std::shared_ptr<const scenario::CaseFile> case_;
  SolveLimits limits_;
  Json descriptor_;
};

}  // namespace logjudge::service

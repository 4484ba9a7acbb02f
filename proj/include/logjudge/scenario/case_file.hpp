#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "logjudge/caselang/parser.hpp"
#include "logjudge/knowledge_base.hpp"
#include "logjudge/legal/policy.hpp"

namespace logjudge::scenario {

/// A case file that cannot be loaded; `errors` carry line/column positions.
class CaseError : public std::runtime_error {
 public:
  explicit CaseError(std::vector<caselang::ParseError> errors)
      : std::runtime_error(summarize(errors)), errors_(std::move(errors)) {}
  const std::vector<caselang::ParseError>& errors() const noexcept { return errors_; }

 private:
  static std::string summarize(const std::vector<caselang::ParseError>& errors) {
    std::string out;
    for (const auto& e : errors) out += (out.empty() ? "" : "\n") + e.describe();
    return out.empty() ? "invalid case file" : out;
  }
  std::vector<caselang::ParseError> errors_;
};

struct EvidenceInfo {
  std::string tag;
  std::string summary;
  std::vector<std::string> witnesses;  // witness(W) and source(S) names, first-seen order
};

struct WitnessInfo {
  std::string name;
  legal::Level default_reliability = legal::Level::Lo;
};

struct Preset {
  std::string id;
  std::vector<std::string> enabled_tags;
  std::map<std::string, legal::Level, std::less<>> reliability_overrides;
  legal::PolicyOverrides policy_overrides;
  legal::Outcome expected = legal::Outcome::Acquitted;
};

/// Everything a scenario needs from one case file. Immutable once loaded.
struct CaseFile {
  std::string case_id;
  std::optional<std::string> defendant;
  KnowledgeBase kb;
  std::vector<EvidenceInfo> evidences;  // in declaration order
  std::vector<WitnessInfo> witnesses;   // reliable/2 facts first, then other named sources
  legal::Policy default_policy;
  std::vector<Preset> presets;

  const EvidenceInfo* evidence(std::string_view tag) const {
    for (const auto& e : evidences) {
      if (e.tag == tag) return &e;
    }
    return nullptr;
  }

  const WitnessInfo* witness(std::string_view name) const {
    for (const auto& w : witnesses) {
      if (w.name == name) return &w;
    }
    return nullptr;
  }

  const Preset* preset(std::string_view id) const {
    for (const auto& p : presets) {
      if (p.id == id) return &p;
    }
    return nullptr;
  }

  std::vector<std::string> tags() const {
    std::vector<std::string> out;
    for (const auto& e : evidences) out.push_back(e.tag);
    return out;
  }
};

namespace detail {

inline void named_sources(const Term& t, std::vector<std::string>& out) {
  if (!t.is_compound()) return;
  if ((t.has_functor("witness", 1) || t.has_functor("source", 1)) && t.arg(0).is_atom()) {
    if (std::find(out.begin(), out.end(), t.arg(0).name()) == out.end()) out.push_back(t.arg(0).name());
    return;
  }
  for (const auto& a : t.args()) named_sources(a, out);
}

inline caselang::ParseError error_at(const caselang::SourcePos& pos, std::string message) {
  return caselang::ParseError{pos.line, pos.column, std::move(message), {}};
}

}  // namespace detail

/// Loads a case from source text. Throws CaseError listing every syntax
/// error, or every inconsistency among directives when the syntax is fine.
inline CaseFile load_case(std::string_view text, std::string fallback_id = "case") {
  auto parsed = caselang::parse_program(text);
  if (!parsed.ok()) throw CaseError(std::move(parsed.errors));

  CaseFile cf;
  cf.case_id = std::move(fallback_id);
  std::vector<caselang::ParseError> errors;
  std::vector<std::pair<caselang::PresetDirective, caselang::SourcePos>> presets;
  std::vector<Clause> clauses;
  std::vector<std::string> other_sources;

  for (const auto& st : parsed.program->statements) {
    if (const auto* c = std::get_if<Clause>(&st.content)) {
      clauses.push_back(*c);
      if (c->body.empty() && c->head.has_functor("reliable", 2) && c->head.arg(0).is_atom() &&
          c->head.arg(1).is_atom()) {
        auto level = legal::parse_level(c->head.arg(1).name());
        if (level && !cf.witness(c->head.arg(0).name())) cf.witnesses.push_back({c->head.arg(0).name(), *level});
      }
      std::vector<std::string> names;
      detail::named_sources(c->head, names);
      for (const auto& n : names) {
        if (std::find(other_sources.begin(), other_sources.end(), n) == other_sources.end()) other_sources.push_back(n);
      }
      if (c->tag) {
        auto info = std::find_if(cf.evidences.begin(), cf.evidences.end(),
                                 [&](const EvidenceInfo& e) { return e.tag == *c->tag; });
        for (const auto& n : names) {
          if (info != cf.evidences.end() &&
              std::find(info->witnesses.begin(), info->witnesses.end(), n) == info->witnesses.end()) {
            info->witnesses.push_back(n);
          }
        }
      }
      continue;
    }
    const auto& d = std::get<caselang::Directive>(st.content);
    if (const auto* t = std::get_if<caselang::TagDirective>(&d)) {
      cf.evidences.push_back({t->id, t->summary.value_or(""), {}});
    } else if (const auto* p = std::get_if<caselang::PolicyDirective>(&d)) {
      try {
        for (const auto& [k, v] : p->settings) legal::apply_setting(cf.default_policy, k, v);
        for (const auto& [k, msg] : cf.default_policy.violations()) {
          errors.push_back(detail::error_at(st.pos, "policy " + k + " " + msg));
        }
      } catch (const legal::PolicyError& e) {
        errors.push_back(detail::error_at(st.pos, e.what()));
      }
    } else if (const auto* def = std::get_if<caselang::DefendantDirective>(&d)) {
      if (cf.defendant) errors.push_back(detail::error_at(st.pos, "defendant declared twice"));
      cf.defendant = def->name;
    } else if (const auto* id = std::get_if<caselang::CaseIdDirective>(&d)) {
      cf.case_id = id->id;
    } else if (const auto* pr = std::get_if<caselang::PresetDirective>(&d)) {
      presets.emplace_back(*pr, st.pos);
    }
  }
  for (const auto& n : other_sources) {
    if (!cf.witness(n)) cf.witnesses.push_back({n, legal::Level::Lo});
  }

  for (const auto& [p, pos] : presets) {
    if (cf.preset(p.id)) {
      errors.push_back(detail::error_at(pos, "preset '" + p.id + "' declared twice"));
      continue;
    }
    Preset out{p.id, {}, {}, {}, p.expected};
    for (const auto& t : p.enabled_tags) {
      if (!cf.evidence(t)) errors.push_back(detail::error_at(pos, "preset '" + p.id + "' names unknown tag '" + t + "'"));
      if (std::find(out.enabled_tags.begin(), out.enabled_tags.end(), t) == out.enabled_tags.end()) {
        out.enabled_tags.push_back(t);
      }
    }
    for (const auto& [w, level] : p.reliability) {
      if (!cf.witness(w)) {
        errors.push_back(detail::error_at(pos, "preset '" + p.id + "' names unknown witness '" + w + "'"));
      }
      out.reliability_overrides[w] = level;
    }
    try {
      legal::Policy check = cf.default_policy;
      for (const auto& [k, v] : p.policy) {
        legal::apply_setting(check, k, v);
        out.policy_overrides[k] = v;
      }
      for (const auto& [k, msg] : check.violations()) {
        errors.push_back(detail::error_at(pos, "preset '" + p.id + "' policy " + k + " " + msg));
      }
    } catch (const legal::PolicyError& e) {
      errors.push_back(detail::error_at(pos, "preset '" + p.id + "': " + e.what()));
    }
    cf.presets.push_back(std::move(out));
  }

  if (!errors.empty()) throw CaseError(std::move(errors));
  cf.kb = KnowledgeBase{}.load(clauses);
  return cf;
}

/// Reads and loads a case file; the file stem is the fallback case id.
inline CaseFile load_case_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CaseError({caselang::ParseError{0, 0, "cannot read case file " + path.string(), {}}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_case(buf.str(), path.stem().string());
}

}  // namespace logjudge::scenario

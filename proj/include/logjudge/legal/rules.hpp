#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "logjudge/caselang/parser.hpp"
#include "logjudge/clause.hpp"
#include "logjudge/embedded_resources.hpp"
#include "logjudge/knowledge_base.hpp"
#include "logjudge/legal/policy.hpp"

namespace logjudge::legal {

/// Clauses of the shipped rule pack, parsed once.
inline const std::vector<Clause>& rule_pack_clauses() {
  static const std::vector<Clause> clauses = [] {
    auto parsed = caselang::parse_program(resources::kStandardRulePack);
    if (!parsed.ok()) {
      throw std::logic_error("standard rule pack does not parse: " + parsed.errors.front().describe());
    }
    return parsed.program->clauses();
  }();
  return clauses;
}

/// policy_setting(Key, Value) facts for every policy key.
inline std::vector<Clause> policy_facts(const Policy& policy) {
  std::vector<Clause> out;
  for (const auto& [key, value] : policy.settings()) {
    out.push_back(make_fact(Term::compound("policy_setting", {Term::atom(key), policy_value_to_term(value)})));
  }
  return out;
}

/// The rule pack followed by the facts describing `policy`.
inline std::vector<Clause> standard_rules(const Policy& policy) {
  std::vector<Clause> out = rule_pack_clauses();
  auto facts = policy_facts(policy);
  out.insert(out.end(), facts.begin(), facts.end());
  return out;
}

/// Case knowledge base extended with the standard rules for `policy`.
inline KnowledgeBase with_standard_rules(const KnowledgeBase& case_kb, const Policy& policy) {
  return case_kb.load(standard_rules(policy));
}

}  // namespace logjudge::legal

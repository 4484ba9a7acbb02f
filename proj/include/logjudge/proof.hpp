#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "logjudge/term.hpp"

namespace logjudge {

enum class Justification : std::uint8_t { Fact, Rule, Builtin, NafSuccess };

inline std::string_view to_string(Justification j) {
  switch (j) {
    case Justification::Fact: return "fact";
    case Justification::Rule: return "rule";
    case Justification::Builtin: return "builtin";
    case Justification::NafSuccess: return "naf";
  }
  return "?";
}

/// One step of a derivation. `goal` is fully instantiated by the answer that
/// produced the tree; facts, builtins and negations have no children.
struct ProofNode {
  Term goal;
  Justification justification;
  std::optional<std::size_t> clause_index;  // into the solved knowledge base
  std::optional<std::string> tag;
  std::vector<ProofNode> children;
};

inline void collect_tags(const ProofNode& node, std::set<std::string>& out) {
  if (node.tag) out.insert(*node.tag);
  for (const auto& c : node.children) collect_tags(c, out);
}

inline std::set<std::string> proof_tags(const ProofNode& node) {
  std::set<std::string> out;
  collect_tags(node, out);
  return out;
}

/// First node (pre-order) whose goal has the given functor/arity.
inline const ProofNode* find_goal(const ProofNode& node, std::string_view functor, std::size_t arity) {
  if (node.goal.has_functor(functor, arity)) return &node;
  for (const auto& c : node.children) {
    if (const ProofNode* hit = find_goal(c, functor, arity)) return hit;
  }
  return nullptr;
}

}  // namespace logjudge

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logjudge/caselang/lexer.hpp"
#include "logjudge/clause.hpp"
#include "logjudge/legal/policy.hpp"

namespace logjudge::caselang {

/// `tag(e3).` or `tag(e3, 'summary').` opens an evidence group; clauses up
/// to the next tag or `end_tag.` carry the id.
struct TagDirective {
  std::string id;
  std::optional<std::string> summary;
  friend bool operator==(const TagDirective&, const TagDirective&) = default;
};

struct EndTagDirective {
  friend bool operator==(const EndTagDirective&, const EndTagDirective&) = default;
};

/// `policy(min_evidence_count(1), require_severe_precise(true), ...).`
struct PolicyDirective {
  std::vector<std::pair<std::string, legal::PolicyValue>> settings;
  friend bool operator==(const PolicyDirective&, const PolicyDirective&) = default;
};

/// `defendant(valjean).` names the default suspect.
struct DefendantDirective {
  std::string name;
  friend bool operator==(const DefendantDirective&, const DefendantDirective&) = default;
};

/// `case_id(valjean).`
struct CaseIdDirective {
  std::string id;
  friend bool operator==(const CaseIdDirective&, const CaseIdDirective&) = default;
};

/// `preset('Q3', [e1, e2, e3, e4], [reliable(thenardier, lo)], acquitted).`
/// with an optional fifth argument listing policy overrides.
struct PresetDirective {
  std::string id;
  std::vector<std::string> enabled_tags;
  std::vector<std::pair<std::string, legal::Level>> reliability;
  legal::Outcome expected = legal::Outcome::Acquitted;
  std::vector<std::pair<std::string, legal::PolicyValue>> policy;
  friend bool operator==(const PresetDirective&, const PresetDirective&) = default;
};

using Directive = std::variant<TagDirective, EndTagDirective, PolicyDirective, DefendantDirective, CaseIdDirective,
                               PresetDirective>;

struct Statement {
  std::variant<Clause, Directive> content;
  SourcePos pos;
};

/// A parsed case file: clauses and directives in textual order.
struct SourceProgram {
  std::vector<Statement> statements;

  std::vector<Clause> clauses() const {
    std::vector<Clause> out;
    for (const auto& s : statements) {
      if (const auto* c = std::get_if<Clause>(&s.content)) out.push_back(*c);
    }
    return out;
  }

  std::vector<Directive> directives() const {
    std::vector<Directive> out;
    for (const auto& s : statements) {
      if (const auto* d = std::get_if<Directive>(&s.content)) out.push_back(*d);
    }
    return out;
  }

  /// Structural equality, ignoring source positions.
  friend bool operator==(const SourceProgram& a, const SourceProgram& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
      if (!(a.statements[i].content == b.statements[i].content)) return false;
    }
    return true;
  }
};

struct ParseError {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;
  std::string expected;    // token class, empty when not applicable

  std::string describe() const {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) out += " (expected " + expected + ")";
    return out;
  }
};

struct ParseResult {
  std::optional<SourceProgram> program;  // absent whenever errors is nonempty
  std::vector<ParseError> errors;

  bool ok() const noexcept { return program.has_value(); }
};

}  // namespace logjudge::caselang

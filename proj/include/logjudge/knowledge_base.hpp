#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logjudge/clause.hpp"
#include "logjudge/errors.hpp"

namespace logjudge {

/// Immutable snapshot of clauses indexed by functor/arity. Every modifier
/// returns a new snapshot; copies are cheap and safe to share across threads.
class KnowledgeBase {
 public:
  using Key = std::pair<std::string, std::size_t>;

  KnowledgeBase() : data_(std::make_shared<const Data>()) {}

  std::span<const Clause> clauses() const noexcept { return data_->clauses; }
  std::size_t size() const noexcept { return data_->clauses.size(); }
  bool empty() const noexcept { return data_->clauses.empty(); }

  /// Indices of clauses (enabled or not) whose head is name/arity, in
  /// insertion order.
  std::span<const std::size_t> candidates(const std::string& name, std::size_t arity) const {
    auto it = data_->index.find(Key{name, arity});
    if (it == data_->index.end()) return {};
    return it->second;
  }

  bool defines(const std::string& name, std::size_t arity) const {
    return data_->index.contains(Key{name, arity});
  }

  const Clause& clause(std::size_t i) const { return data_->clauses.at(i); }

  /// Distinct tags in first-appearance order.
  std::vector<std::string> tags() const {
    std::vector<std::string> out;
    for (const auto& c : data_->clauses) {
      if (c.tag && std::find(out.begin(), out.end(), *c.tag) == out.end()) out.push_back(*c.tag);
    }
    return out;
  }

  bool has_tag(std::string_view tag) const {
    for (const auto& c : data_->clauses) {
      if (c.tag && *c.tag == tag) return true;
    }
    return false;
  }

  std::vector<Key> predicates() const {
    std::vector<Key> out;
    out.reserve(data_->index.size());
    for (const auto& [k, _] : data_->index) out.push_back(k);
    return out;
  }

  /// Appends clauses after the existing ones. Throws MalformedClause.
  [[nodiscard]] KnowledgeBase load(std::span<const Clause> more) const {
    for (const auto& c : more) validate_clause(c);
    if (more.empty()) return *this;
    auto clauses = data_->clauses;
    clauses.insert(clauses.end(), more.begin(), more.end());
    return KnowledgeBase(std::move(clauses));
  }

  [[nodiscard]] KnowledgeBase set_enabled(const std::string& tag, bool on) const {
    if (!has_tag(tag)) throw UnknownTag(tag);
    auto clauses = data_->clauses;
    for (auto& c : clauses) {
      if (c.tag && *c.tag == tag) c.enabled = on;
    }
    return KnowledgeBase(std::move(clauses));
  }

  [[nodiscard]] KnowledgeBase remove_if(const std::function<bool(const Clause&)>& drop) const {
    std::vector<Clause> clauses;
    clauses.reserve(data_->clauses.size());
    for (const auto& c : data_->clauses) {
      if (!drop(c)) clauses.push_back(c);
    }
    return KnowledgeBase(std::move(clauses));
  }

 private:
  struct Data {
    std::vector<Clause> clauses;
    std::map<Key, std::vector<std::size_t>> index;
  };

  explicit KnowledgeBase(std::vector<Clause> clauses) {
    auto d = std::make_shared<Data>();
    d->clauses = std::move(clauses);
    for (std::size_t i = 0; i < d->clauses.size(); ++i) {
      const Term& h = d->clauses[i].head;
      d->index[Key{h.name(), h.arity()}].push_back(i);
    }
    data_ = std::move(d);
  }

  std::shared_ptr<const Data> data_;
};

/// Names of predicates called from some clause body but defined nowhere.
/// Solving treats them as false; this is only a diagnostic.
inline std::vector<std::string> lint_undefined(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  auto note = [&](const Term& g) {
    if (!g.is_callable() || is_builtin(g.name(), g.arity()) || kb.defines(g.name(), g.arity())) return;
    std::string sig = g.name() + "/" + std::to_string(g.arity());
    if (std::find(out.begin(), out.end(), sig) == out.end()) out.push_back(sig);
  };
  for (const auto& c : kb.clauses()) {
    for (const auto& lit : c.body) {
      if (lit.kind() != LiteralKind::Builtin) note(lit.goal());
    }
  }
  return out;
}

}  // namespace logjudge

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logjudge/builtins.hpp"
#include "logjudge/clause.hpp"
#include "logjudge/errors.hpp"
#include "logjudge/knowledge_base.hpp"
#include "logjudge/proof.hpp"
#include "logjudge/substitution.hpp"
#include "logjudge/term.hpp"

namespace logjudge {

struct SolveLimits {
  std::size_t max_depth = 10'000;
};

struct Solution {
  Substitution bindings;  // restricted to the query's variables
  ProofNode proof;
};

/// SLD resolution over one knowledge-base snapshot: leftmost literal first,
/// clauses in insertion order, depth-first with chronological backtracking.
/// Answers are produced lazily by next(). Predicates without clauses simply
/// fail (closed world).
class Solver {
 public:
  Solver(KnowledgeBase kb, const Term& goal, SolveLimits limits = {})
      : Solver(std::move(kb), goal, limits, std::make_shared<std::uint64_t>(0), 0) {}

  /// Next answer, or nullopt once the search space is exhausted.
  std::optional<Solution> next() {
    if (exhausted_) return std::nullopt;
    if (!started_) {
      started_ = true;
      goals_ = std::make_shared<const GoalNode>(GoalNode{Literal::from_term(query_), base_depth_, nullptr});
    } else if (!backtrack()) {
      exhausted_ = true;
      return std::nullopt;
    }
    while (goals_) {
      const GoalList node = goals_;
      if (node->depth > limits_.max_depth) {
        throw DepthLimitExceeded("derivation deeper than " + std::to_string(limits_.max_depth) +
                                 " while proving " + subst_.apply(node->literal.goal()).name());
      }
      ChoicePoint cp{node->next, node->depth, trace_.size(), expand(node->literal, node->depth), 0};
      if (cp.branches.empty()) {
        if (!backtrack()) {
          exhausted_ = true;
          return std::nullopt;
        }
        continue;
      }
      stack_.push_back(std::move(cp));
      take_branch();
    }
    return make_solution();
  }

 private:
  struct Step {
    Term goal;
    Justification justification;
    std::optional<std::size_t> clause_index;
    std::optional<std::string> tag;
    std::size_t children;
    std::vector<ProofNode> subproofs;  // finished derivations, e.g. those collected by setof
  };
  struct GoalNode {
    Literal literal;
    std::size_t depth;
    std::shared_ptr<const GoalNode> next;
  };
  using GoalList = std::shared_ptr<const GoalNode>;
  struct Branch {
    Substitution subst;
    Step step;
    std::vector<Literal> body;
  };
  struct ChoicePoint {
    GoalList rest;
    std::size_t depth;
    std::size_t trace_len;
    std::vector<Branch> branches;
    std::size_t next;
  };

  Solver(KnowledgeBase kb, const Term& goal, SolveLimits limits, std::shared_ptr<std::uint64_t> counter,
         std::size_t base_depth)
      : kb_(std::move(kb)),
        query_(goal),
        query_vars_(variables_of(goal)),
        limits_(limits),
        counter_(std::move(counter)),
        base_depth_(base_depth) {
    if (!goal.is_callable()) throw InstantiationError("goal is not callable");
  }

  Solver nested(const Term& goal, std::size_t depth) const { return Solver(kb_, goal, limits_, counter_, depth); }

  // Applies the next untried branch of the top choice point.
  void take_branch() {
    ChoicePoint& cp = stack_.back();
    Branch& b = cp.branches[cp.next++];
    subst_ = std::move(b.subst);
    trace_.erase(trace_.begin() + static_cast<std::ptrdiff_t>(cp.trace_len), trace_.end());
    trace_.push_back(std::move(b.step));
    GoalList goals = cp.rest;
    for (auto it = b.body.rbegin(); it != b.body.rend(); ++it) {
      goals = std::make_shared<const GoalNode>(GoalNode{std::move(*it), cp.depth + 1, goals});
    }
    goals_ = std::move(goals);
    if (cp.next == cp.branches.size()) stack_.pop_back();
  }

  bool backtrack() {
    if (stack_.empty()) return false;
    take_branch();
    return true;
  }

  std::vector<Branch> expand(const Literal& lit, std::size_t depth) {
    const Term goal = subst_.apply(lit.goal());
    std::vector<Branch> out;
    switch (lit.kind()) {
      case LiteralKind::Call: {
        if (!goal.is_callable()) throw InstantiationError("cannot call " + detail::describe(goal));
        if (is_builtin(goal.name(), goal.arity())) return expand(Literal::builtin(goal), depth);
        for (std::size_t idx : kb_.candidates(goal.name(), goal.arity())) {
          const Clause& stored = kb_.clause(idx);
          if (!stored.enabled) continue;
          Clause c = rename_apart(stored, *counter_);
          auto s = unify(c.head, goal, subst_);
          if (!s) continue;
          Step step{goal, c.is_fact() ? Justification::Fact : Justification::Rule, idx, c.tag, c.body.size(), {}};
          out.push_back(Branch{std::move(*s), std::move(step), std::move(c.body)});
        }
        break;
      }
      case LiteralKind::Naf: {
        if (!goal.is_ground()) {
          throw NonGroundNaf("negation of non-ground goal " + goal.name() + "/" + std::to_string(goal.arity()));
        }
        Solver sub = nested(goal, depth + 1);
        if (!sub.next()) {
          Term shown = Term::compound(std::string(kNafFunctor), {goal});
          out.push_back(Branch{subst_, Step{shown, Justification::NafSuccess, std::nullopt, std::nullopt, 0, {}}, {}});
        }
        break;
      }
      case LiteralKind::Builtin: {
        if (goal.has_functor("setof", 3)) {
          for (auto& [s, proofs] : eval_setof(goal, depth)) {
            Step step{goal, Justification::Builtin, std::nullopt, std::nullopt, 0, std::move(proofs)};
            out.push_back(Branch{std::move(s), std::move(step), {}});
          }
          break;
        }
        for (auto& s : eval_builtin(goal.name(), goal.args(), subst_)) {
          out.push_back(Branch{std::move(s), Step{goal, Justification::Builtin, std::nullopt, std::nullopt, 0, {}}, {}});
        }
        break;
      }
    }
    return out;
  }

  // setof(Template, Goal, Set): one answer per binding of Goal's free
  // variables (those not in Template), ordered by that binding; fails when
  // Goal has no solutions. Each answer carries the derivations of its group.
  std::vector<std::pair<Substitution, std::vector<ProofNode>>> eval_setof(const Term& call, std::size_t depth) {
    const Term& templ = call.arg(0);
    const Term& goal = call.arg(1);
    const Term& result = call.arg(2);
    if (goal.is_variable()) throw InstantiationError("setof: goal is unbound");
    if (!goal.is_callable()) throw TypeError("setof: goal is not callable");

    std::vector<std::string> templ_vars = variables_of(templ);
    std::vector<Term> free;
    for (const auto& v : variables_of(goal)) {
      if (std::find(templ_vars.begin(), templ_vars.end(), v) == templ_vars.end()) free.push_back(Term::variable(v));
    }
    const Term witness = free.empty() ? nil() : tuple_term(free);

    std::map<Term, std::vector<Term>> groups;
    std::map<Term, std::vector<ProofNode>> proofs;
    Solver sub = nested(goal, depth + 1);
    while (auto sol = sub.next()) {
      Term w = sol->bindings.apply(witness);
      groups[w].push_back(sol->bindings.apply(templ));
      proofs[w].push_back(std::move(sol->proof));
    }
    std::vector<std::pair<Substitution, std::vector<ProofNode>>> out;
    for (auto& [w, items] : groups) {
      std::sort(items.begin(), items.end());
      items.erase(std::unique(items.begin(), items.end()), items.end());
      auto s = unify(witness, w, subst_);
      if (s) s = unify(result, make_list(items), *s);
      if (s) out.emplace_back(std::move(*s), std::move(proofs[w]));
    }
    return out;
  }

  ProofNode build(std::size_t& i) const {
    const Step& s = trace_.at(i++);
    ProofNode n{subst_.apply(s.goal), s.justification, s.clause_index, s.tag, {}};
    n.children.reserve(s.children + s.subproofs.size());
    for (std::size_t k = 0; k < s.children; ++k) n.children.push_back(build(i));
    n.children.insert(n.children.end(), s.subproofs.begin(), s.subproofs.end());
    return n;
  }

  Solution make_solution() const {
    std::size_t i = 0;
    ProofNode proof = build(i);
    return Solution{subst_.restricted_to(query_vars_), std::move(proof)};
  }

  KnowledgeBase kb_;
  Term query_;
  std::vector<std::string> query_vars_;
  SolveLimits limits_;
  std::shared_ptr<std::uint64_t> counter_;
  std::size_t base_depth_;

  GoalList goals_;
  Substitution subst_;
  std::vector<Step> trace_;
  std::vector<ChoicePoint> stack_;
  bool started_ = false;
  bool exhausted_ = false;
};

inline std::vector<Solution> solve_all(const KnowledgeBase& kb, const Term& goal, SolveLimits limits = {},
                                       std::size_t max_solutions = std::numeric_limits<std::size_t>::max()) {
  std::vector<Solution> out;
  Solver solver(kb, goal, limits);
  while (out.size() < max_solutions) {
    auto s = solver.next();
    if (!s) break;
    out.push_back(std::move(*s));
  }
  return out;
}

inline std::optional<Solution> solve_first(const KnowledgeBase& kb, const Term& goal, SolveLimits limits = {}) {
  return Solver(kb, goal, limits).next();
}

/// True iff goal has no derivation. The goal must be ground.
inline bool solve_naf(const KnowledgeBase& kb, const Term& goal, SolveLimits limits = {}) {
  if (!goal.is_ground()) throw NonGroundNaf("negation of non-ground goal " + goal.name());
  return !Solver(kb, goal, limits).next().has_value();
}

/// All instances of `templ` over the solutions of `goal`, deduplicated and in
/// standard order; nullopt when goal has no solutions. Every variable not in
/// the template is treated as existentially quantified.
inline std::optional<std::vector<Term>> collect_distinct(const KnowledgeBase& kb, const Term& templ,
                                                         const Term& goal, SolveLimits limits = {}) {
  std::vector<Term> items;
  Solver solver(kb, goal, limits);
  while (auto s = solver.next()) items.push_back(s->bindings.apply(templ));
  if (items.empty()) return std::nullopt;
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

}  // namespace logjudge

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "logjudge/caselang/format.hpp"
#include "logjudge/knowledge_base.hpp"
#include "logjudge/legal/policy.hpp"
#include "logjudge/legal/rules.hpp"
#include "logjudge/proof.hpp"
#include "logjudge/solver.hpp"
#include "logjudge/term.hpp"

namespace logjudge::legal {

/// One derived evidence that subject_x and subject_y are the same person.
struct EvidenceAssessment {
  Term descriptor;  // e.g. colocation(vehicle(scooter, 12345))
  std::string subject_x;
  std::string subject_y;
  Level severity = Level::Lo;
  Level precision = Level::Lo;
  std::vector<std::string> supporting_tags;  // sorted

  bool severe_and_precise() const noexcept { return severity == Level::Hi && precision == Level::Hi; }

  /// The (Ev, severity(S), precision(P)) tuple collected by same_person/3.
  Term as_tuple() const {
    std::vector<Term> items{descriptor, Term::compound("severity", {Term::atom(std::string(to_string(severity)))}),
                            Term::compound("precision", {Term::atom(std::string(to_string(precision)))})};
    return tuple_term(items);
  }

  friend bool operator==(const EvidenceAssessment&, const EvidenceAssessment&) = default;
};

enum class AcquittalGround : std::uint8_t { NoEvidence, InsufficientEvidence };

inline constexpr std::string_view kGroundNoEvidence = "there is no evidence of the crime";
inline constexpr std::string_view kGroundInsufficient = "the evidence is not sufficient";

inline std::string_view ground_text(AcquittalGround g) {
  return g == AcquittalGround::NoEvidence ? kGroundNoEvidence : kGroundInsufficient;
}

struct Responsible {
  std::string suspect;
  Term perpetrator;  // alias under which the crime was committed
  Term crime;
  Term date;
  Term place;
  Term crime_source;         // e.g. testimony(witness(enjolras))
  ProofNode crime_evidence;  // derivation of committed/5
  std::vector<EvidenceAssessment> identity_evidences;
  ProofNode proof;           // derivation of the whole finding
};

struct Acquitted {
  std::string suspect;
  AcquittalGround ground = AcquittalGround::NoEvidence;
};

using Verdict = std::variant<Responsible, Acquitted>;

inline Outcome outcome_of(const Verdict& v) {
  return std::holds_alternative<Responsible>(v) ? Outcome::Responsible : Outcome::Acquitted;
}

/// A verdict together with every identity assessment considered for it.
struct Judgement {
  Verdict verdict;
  std::vector<EvidenceAssessment> assessments;
};

namespace detail {

inline std::string person_name(const Term& t) { return t.is_atom() ? t.name() : caselang::format_term(t); }

inline std::optional<Level> level_in(const Term& wrapped, std::string_view functor) {
  if (!wrapped.has_functor(functor, 1) || !wrapped.arg(0).is_atom()) return std::nullopt;
  return parse_level(wrapped.arg(0).name());
}

/// Assessments over a knowledge base that already holds the standard rules.
inline std::vector<EvidenceAssessment> assess(const KnowledgeBase& kb, const Term& x, const Term& y,
                                              SolveLimits limits) {
  if (x == y) return {};
  const Term ev = Term::variable("Ev");
  const Term sev = Term::variable("S");
  const Term prec = Term::variable("P");
  const Term goal = Term::compound(
      "evidence_same_as",
      {ev, x, y, Term::compound("severity", {sev}), Term::compound("precision", {prec})});

  std::map<Term, EvidenceAssessment> by_key;
  Solver solver(kb, goal, limits);
  while (auto sol = solver.next()) {
    auto s = level_in(sol->bindings.apply(goal.arg(3)), "severity");
    auto p = level_in(sol->bindings.apply(goal.arg(4)), "precision");
    if (!s || !p) continue;
    EvidenceAssessment a{sol->bindings.apply(ev), person_name(x), person_name(y), *s, *p, {}};
    if (!a.descriptor.is_ground()) continue;
    auto [it, inserted] = by_key.try_emplace(a.as_tuple(), a);
    std::set<std::string> tags(it->second.supporting_tags.begin(), it->second.supporting_tags.end());
    collect_tags(sol->proof, tags);
    it->second.supporting_tags.assign(tags.begin(), tags.end());
  }
  std::vector<EvidenceAssessment> out;
  out.reserve(by_key.size());
  for (auto& [_, a] : by_key) out.push_back(std::move(a));
  return out;
}

inline std::vector<EvidenceAssessment> match(const Term& tuples, const std::vector<EvidenceAssessment>& known) {
  std::vector<EvidenceAssessment> out;
  for (const auto& item : list_elements(tuples).value_or(std::vector<Term>{})) {
    for (const auto& a : known) {
      if (a.as_tuple() == item) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

inline std::vector<Term> perpetrators(const KnowledgeBase& kb, SolveLimits limits) {
  const Term y = Term::variable("Y");
  const Term goal = Term::compound("committed", {y, Term::variable("D"), Term::variable("C"), Term::variable("Pl"),
                                                 Term::variable("E")});
  return collect_distinct(kb, y, goal, limits).value_or(std::vector<Term>{});
}

}  // namespace detail

/// Every distinct identity evidence linking x and y under `policy`, in the
/// standard order of their (descriptor, severity, precision) tuples.
inline std::vector<EvidenceAssessment> assess_evidences(const KnowledgeBase& case_kb, const Policy& policy,
                                                        const Term& x, const Term& y, SolveLimits limits = {}) {
  return detail::assess(with_standard_rules(case_kb, policy), x, y, limits);
}

/// The assessments establishing that x and y are the same person, or nullopt
/// when the policy's threshold is not met.
inline std::optional<std::vector<EvidenceAssessment>> same_person(const KnowledgeBase& case_kb, const Policy& policy,
                                                                  const Term& x, const Term& y,
                                                                  SolveLimits limits = {}) {
  KnowledgeBase kb = with_standard_rules(case_kb, policy);
  const Term evs = Term::variable("Evidences");
  auto sol = solve_first(kb, Term::compound("same_person", {x, y, evs}), limits);
  if (!sol) return std::nullopt;
  return detail::match(sol->bindings.apply(evs), detail::assess(kb, x, y, limits));
}

inline Judgement judge(const KnowledgeBase& case_kb, const Policy& policy, const Term& suspect,
                       SolveLimits limits = {}) {
  KnowledgeBase kb = with_standard_rules(case_kb, policy);
  std::vector<Term> vars;
  for (const char* name : {"Y", "Date", "Crime", "Place", "EvidCrimeCommitted", "EvidSamePerson"}) {
    vars.push_back(Term::variable(name));
  }
  std::vector<Term> args{suspect};
  args.insert(args.end(), vars.begin(), vars.end());
  const Term goal = Term::compound("responsible", args);

  if (auto sol = solve_first(kb, goal, limits)) {
    const auto& b = sol->bindings;
    const ProofNode* crime = find_goal(sol->proof, "committed", 5);
    Responsible r{detail::person_name(suspect), b.apply(vars[0]), b.apply(vars[2]), b.apply(vars[1]),
                  b.apply(vars[3]), b.apply(vars[4]), crime ? *crime : sol->proof, {}, sol->proof};
    auto assessments = detail::assess(kb, suspect, r.perpetrator, limits);
    r.identity_evidences = detail::match(b.apply(vars[5]), assessments);
    return Judgement{std::move(r), std::move(assessments)};
  }

  std::vector<EvidenceAssessment> considered;
  for (const auto& y : detail::perpetrators(kb, limits)) {
    auto more = detail::assess(kb, suspect, y, limits);
    considered.insert(considered.end(), more.begin(), more.end());
  }
  Acquitted a{detail::person_name(suspect),
              considered.empty() ? AcquittalGround::NoEvidence : AcquittalGround::InsufficientEvidence};
  return Judgement{std::move(a), std::move(considered)};
}

/// Responsible when a reliably witnessed crime exists whose perpetrator is
/// the same person as the suspect; otherwise an acquittal, on the ground of
/// no evidence when nothing links the suspect to the crime and of
/// insufficient evidence when something does.
inline Verdict adjudicate(const KnowledgeBase& case_kb, const Policy& policy, const Term& suspect,
                          SolveLimits limits = {}) {
  return judge(case_kb, policy, suspect, limits).verdict;
}

}  // namespace logjudge::legal

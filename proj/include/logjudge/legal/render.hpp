#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logjudge/caselang/format.hpp"
#include "logjudge/embedded_resources.hpp"
#include "logjudge/legal/verdict.hpp"

namespace logjudge::legal {

class UnknownPlaceholder : public std::invalid_argument {
 public:
  explicit UnknownPlaceholder(const std::string& name)
      : std::invalid_argument("unknown placeholder {" + name + "}"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class TemplateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::array<std::string_view, 8> kPlaceholders{
    "suspect", "perpetrator", "crime", "date", "place", "crime_evidence", "evidences", "ground"};

/// Fills `text` from the given placeholder values. Throws UnknownPlaceholder
/// for names outside kPlaceholders and TemplateError for unbalanced braces.
inline std::string fill_template(std::string_view text, const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '{' || c == '}') && i + 1 < text.size() && text[i + 1] == c) {
      out.push_back(c);
      ++i;
      continue;
    }
    if (c == '}') throw TemplateError("unbalanced '}' in ruling template");
    if (c != '{') {
      out.push_back(c);
      continue;
    }
    std::size_t close = text.find('}', i);
    if (close == std::string_view::npos) throw TemplateError("unterminated placeholder in ruling template");
    std::string_view name = text.substr(i + 1, close - i - 1);
    if (std::find(kPlaceholders.begin(), kPlaceholders.end(), name) == kPlaceholders.end()) {
      throw UnknownPlaceholder(std::string(name));
    }
    if (auto it = values.find(name); it != values.end()) out += it->second;
    i = close;
  }
  return out;
}

/// Ruling text with two sections, introduced by the lines `[responsible]` and
/// `[acquitted]`. Placeholders are written {name}; `{{` and `}}` are literal
/// braces.
struct RulingTemplate {
  std::string responsible;
  std::string acquitted;

  static RulingTemplate parse(std::string_view text) {
    RulingTemplate t;
    std::string* section = nullptr;
    bool seen_responsible = false;
    bool seen_acquitted = false;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (line == "[responsible]") {
        section = &t.responsible;
        seen_responsible = true;
      } else if (line == "[acquitted]") {
        section = &t.acquitted;
        seen_acquitted = true;
      } else if (section) {
        section->append(line);
        section->push_back('\n');
      } else if (!line.empty()) {
        throw TemplateError("ruling template text before the first section header");
      }
      start = end + 1;
    }
    if (!seen_responsible || !seen_acquitted) {
      throw TemplateError("ruling template needs [responsible] and [acquitted] sections");
    }
    for (auto* s : {&t.responsible, &t.acquitted}) {
      while (s->ends_with("\n\n")) s->pop_back();
      fill_template(*s, {});
    }
    return t;
  }

  static const RulingTemplate& standard() {
    static const RulingTemplate t = parse(resources::kDefaultRulingTemplate);
    return t;
  }
};

/// "2020-05-12 14:45" for date(2020,5,12,14,45); other terms verbatim.
inline std::string format_date(const Term& d) {
  if (!d.has_functor("date", 5)) return caselang::format_term(d);
  for (const auto& a : d.args()) {
    if (!a.is_int()) return caselang::format_term(d);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04lld-%02lld-%02lld %02lld:%02lld", static_cast<long long>(d.arg(0).int_value()),
                static_cast<long long>(d.arg(1).int_value()), static_cast<long long>(d.arg(2).int_value()),
                static_cast<long long>(d.arg(3).int_value()), static_cast<long long>(d.arg(4).int_value()));
  return buf;
}

/// Atoms without quotes, anything else in canonical form.
inline std::string display(const Term& t) { return t.is_atom() ? t.name() : caselang::format_term(t); }

inline std::string describe_source(const Term& source) {
  if (source.has_functor("testimony", 1)) {
    const Term& who = source.arg(0);
    if (who.has_functor("witness", 1)) return "the testimony of " + display(who.arg(0));
    if (who.has_functor("source", 1)) return "the findings of " + display(who.arg(0));
    return "the testimony of " + caselang::format_term(who);
  }
  return caselang::format_term(source);
}

inline std::string format_assessment(const EvidenceAssessment& a) {
  std::string out = caselang::format_term(a.descriptor) + ": severity " + std::string(to_string(a.severity)) +
                    ", precision " + std::string(to_string(a.precision));
  if (!a.supporting_tags.empty()) {
    out += " (";
    for (std::size_t i = 0; i < a.supporting_tags.size(); ++i) out += (i ? ", " : "") + a.supporting_tags[i];
    out += ")";
  }
  return out;
}

/// Human-readable ruling for a verdict.
inline std::string render_verdict(const Verdict& v, const RulingTemplate& tmpl = RulingTemplate::standard()) {
  std::map<std::string, std::string, std::less<>> values;
  if (const auto* r = std::get_if<Responsible>(&v)) {
    std::string evidences;
    for (const auto& a : r->identity_evidences) evidences += "  - " + format_assessment(a) + "\n";
    if (!evidences.empty()) evidences.pop_back();
    values = {{"suspect", r->suspect},
              {"perpetrator", display(r->perpetrator)},
              {"crime", display(r->crime)},
              {"date", format_date(r->date)},
              {"place", display(r->place)},
              {"crime_evidence", describe_source(r->crime_source)},
              {"evidences", evidences}};
    return fill_template(tmpl.responsible, values);
  }
  const auto& a = std::get<Acquitted>(v);
  values = {{"suspect", a.suspect}, {"ground", std::string(ground_text(a.ground))}};
  return fill_template(tmpl.acquitted, values);
}

}  // namespace logjudge::legal

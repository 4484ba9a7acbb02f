// Command-line judge: load a case, apply a scenario, print the ruling.
//
// Exit status: 0 Responsible, 1 Acquitted, 2 invalid input. With --suite,
// 0 when every preset gets its expected outcome and 1 otherwise.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logjudge/legal/rules.hpp"
#include "logjudge/scenario/report.hpp"

namespace {

using namespace logjudge;

constexpr int kInputError = 2;

std::vector<std::string> split_tags(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const std::string& flag) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw scenario::ScenarioError(scenario::ScenarioError::Kind::InvalidInput,
                                  {{flag, "expected NAME=VALUE, got '" + text + "'"}});
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

int print_input_error(const std::string& what) {
  std::cerr << "logjudge: " << what << "\n";
  return kInputError;
}

int run_suite(const scenario::CaseFile& cf, bool json) {
  auto rows = scenario::run_suite(cf);
  if (json) {
    scenario::Json out = scenario::Json::array();
    for (const auto& r : rows) {
      out.push_back({{"id", r.id},
                     {"expected", legal::to_string(r.expected)},
                     {"actual", legal::to_string(r.actual)},
                     {"pass", r.pass}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::size_t passed = 0;
    for (const auto& r : rows) {
      std::cout << r.id << "  expected " << legal::to_string(r.expected) << "  actual " << legal::to_string(r.actual)
                << "  " << (r.pass ? "pass" : "FAIL") << "\n";
      passed += r.pass;
    }
    std::cout << passed << "/" << rows.size() << " presets pass\n";
  }
  return scenario::all_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjudicate a case file under a what-if scenario"};
  std::string case_path;
  std::optional<std::string> enable;
  std::vector<std::string> reliability;
  std::vector<std::string> policy;
  std::optional<std::string> suspect;
  std::string format = "text";
  std::optional<std::string> template_path;
  bool explain = false;
  bool suite = false;
  bool lint = false;

  app.add_option("--case", case_path, "Case file (.case)")->required();
  app.add_option("--enable", enable, "Comma-separated evidence tags to enable (default: all)");
  app.add_option("--reliability", reliability, "Witness reliability override NAME=hi|lo (repeatable)");
  app.add_option("--policy", policy, "Policy override KEY=VALUE (repeatable)");
  app.add_option("--suspect", suspect, "Suspect (default: the case's defendant)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--template", template_path, "Ruling template file");
  app.add_flag("--explain", explain, "Include the proof of a Responsible verdict");
  app.add_flag("--suite", suite, "Run every preset declared in the case file");
  app.add_flag("--lint", lint, "Warn about called predicates that nothing defines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    scenario::CaseFile cf = scenario::load_case_file(case_path);
    if (lint) {
      auto kb = legal::with_standard_rules(cf.kb, cf.default_policy);
      for (const auto& w : lint_undefined(kb)) std::cerr << "warning: no clause defines " << w << "\n";
    }
    if (suite) return run_suite(cf, format == "json");

    scenario::ScenarioSpec spec;
    if (enable) spec.enabled_tags = split_tags(*enable);
    spec.suspect = suspect;
    spec.explain = explain;
    std::vector<scenario::FieldError> bad;
    for (const auto& r : reliability) {
      auto [name, value] = split_assignment(r, "--reliability");
      auto level = legal::parse_level(value);
      if (!level) bad.push_back({"--reliability", "expected hi or lo for '" + name + "'"});
      else spec.reliability_overrides[name] = *level;
    }
    for (const auto& p : policy) {
      auto [key, value] = split_assignment(p, "--policy");
      try {
        spec.policy_overrides[key] = legal::parse_policy_value(key, value);
      } catch (const legal::PolicyError& e) {
        bad.push_back({"--policy", e.what()});
      }
    }
    if (!bad.empty()) throw scenario::ScenarioError(scenario::ScenarioError::Kind::InvalidInput, bad);

    legal::RulingTemplate tmpl = legal::RulingTemplate::standard();
    if (template_path) {
      std::ifstream in(*template_path, std::ios::binary);
      if (!in) return print_input_error("cannot read template " + *template_path);
      std::ostringstream text;
      text << in.rdbuf();
      tmpl = legal::RulingTemplate::parse(text.str());
    }

    scenario::RunReport report = scenario::run_scenario(cf, spec);
    if (format == "json") {
      std::cout << scenario::report_json(report).dump(2) << "\n";
    } else {
      std::cout << scenario::report_text(report, tmpl);
    }
    return scenario::exit_status(report);
  } catch (const scenario::CaseError& e) {
    for (const auto& err : e.errors()) std::cerr << case_path << ":" << err.describe() << "\n";
    return kInputError;
  } catch (const scenario::ScenarioError& e) {
    for (const auto& f : e.fields()) std::cerr << "logjudge: " << f.field << ": " << f.message << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    return print_input_error(e.what());
  } catch (const logjudge::EngineError& e) {
    return print_input_error(e.what());
  }
}

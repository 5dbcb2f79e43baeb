#include "propcov/automaton.hpp"
#include "propcov/coverage.hpp"
#include "propcov/generator.hpp"
#include "propcov/matcher.hpp"
#include "propcov/model_mutator.hpp"
#include "propcov/model_parser.hpp"
#include "propcov/mutation.hpp"
#include "propcov/property.hpp"
#include "propcov/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace propcov;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_unsatisfied = 1;
constexpr int exit_input = 2;
constexpr int exit_internal = 3;

struct options {
  std::string model;
  std::string properties;
  std::vector<std::string> suites;
  std::vector<std::string> only;
  std::string criterion_name = "alpha";
  int k = 2;
  int depth = 12;
  std::size_t input_cap = 0;
  std::string out;
  std::string format = "text";
  std::vector<std::string> operators;
  bool with_mutants = false;
};

/// Loaded model, properties and automata sharing one event legend.
struct workspace {
  std::shared_ptr<const model> m;
  std::vector<property> props;
  std::vector<property_automaton> automata;
};

class usage_error : public error {
public:
  using error::error;
};

workspace load(const options& o, bool need_properties = true) {
  workspace w;
  w.m = load_model(o.model);
  if (!need_properties) return w;
  auto all = load_properties(o.properties, *w.m);
  event_legend legend;
  for (auto& p : all) {
    auto a = build_automaton(p, legend, w.m.get());
    bool selected = o.only.empty() || std::find(o.only.begin(), o.only.end(), p.name) != o.only.end();
    if (!selected) continue;
    w.props.push_back(p);
    w.automata.push_back(std::move(a));
  }
  for (const auto& name : o.only) {
    bool found = std::any_of(w.props.begin(), w.props.end(), [&](const property& p) { return p.name == name; });
    if (!found) throw usage_error("no property named '" + name + "' in " + o.properties);
  }
  return w;
}

std::vector<test_case> load_suites(const model& m, const std::vector<std::string>& paths) {
  std::vector<test_case> out;
  for (const auto& p : paths) {
    auto tests = replay_and_verify(m, load_suite(p));
    out.insert(out.end(), tests.begin(), tests.end());
  }
  return out;
}

void emit(const options& o, const std::string& file, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  fs::path path = fs::path(o.out) / file;
  std::ofstream f(path);
  if (!f) throw usage_error("cannot write " + path.string());
  f << text;
  std::cerr << "wrote " << path.string() << "\n";
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  return out;
}

criterion chosen_criterion(const options& o) {
  auto c = parse_criterion(o.criterion_name);
  if (!c) throw usage_error("unknown criterion '" + o.criterion_name + "'");
  return *c;
}

std::string fmt_check(const property_automaton& a) {
  return a.prop.name + ": " + std::to_string(a.states.size()) + " states, " + std::to_string(a.alpha_count()) +
         " \xCE\xB1, rejection: " + (a.has_rejection() ? "yes" : "no");
}

int cmd_check(const options& o) {
  auto w = load(o);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : w.automata) {
      j.push_back({{"property", a.prop.name},
                   {"states", a.states.size()},
                   {"alpha", a.alpha_count()},
                   {"rejection", a.has_rejection()},
                   {"warnings", a.warnings}});
    }
    std::cout << j.dump(2) << "\n";
    return exit_ok;
  }
  for (const auto& a : w.automata) {
    std::cout << fmt_check(a) << "\n";
    for (const auto& warn : a.warnings) std::cout << "  warning: " << warn << "\n";
  }
  return exit_ok;
}

/// Runs `body` per automaton, skipping inapplicable ones unless every
/// property is inapplicable.
template <typename F>
int per_property(const workspace& w, F body) {
  int status = exit_ok;
  std::size_t applicable = 0;
  std::string last_error;
  for (const auto& a : w.automata) {
    try {
      if (!body(a)) status = exit_unsatisfied;
      ++applicable;
    } catch (const criterion_not_applicable& e) {
      if (w.automata.size() == 1) throw;
      std::cerr << "skipped: " << e.what() << "\n";
      last_error = e.what();
    } catch (const property_not_mutable& e) {
      if (w.automata.size() == 1) throw;
      std::cerr << "skipped: " << e.what() << "\n";
      last_error = e.what();
    }
  }
  if (applicable == 0) throw usage_error(last_error.empty() ? "no property selected" : last_error);
  return status;
}

void print_report(const options& o, const coverage_report& r, nlohmann::json& collected) {
  if (o.format == "json") collected.push_back(to_json(r));
  else std::cout << format_report(r);
}

int cmd_measure(const options& o) {
  auto w = load(o);
  criterion c = chosen_criterion(o);
  auto suite = load_suites(*w.m, o.suites);
  nlohmann::json collected = nlohmann::json::array();
  int status;
  if (c == criterion::tags) {
    auto r = tag_coverage(*w.m, suite);
    print_report(o, r, collected);
    status = r.satisfied() ? exit_ok : exit_unsatisfied;
  } else {
    status = per_property(w, [&](const property_automaton& a) {
      coverage_report r;
      if (c == criterion::robustness) {
        auto mutants = mutate_automaton(a);
        std::vector<std::vector<automaton_run>> runs;
        for (const auto& m : mutants) runs.push_back(run_suite(m.automaton, suite));
        r = robustness_coverage(mutants, runs);
      } else {
        r = measure(a, run_suite(a, suite), c, o.k);
      }
      print_report(o, r, collected);
      return r.satisfied();
    });
  }
  if (o.format == "json") std::cout << collected.dump(2) << "\n";
  return status;
}

void print_generation(const options& o, const generation_result& g, nlohmann::json& collected) {
  if (o.format == "json") {
    auto j = to_json(g.report);
    j["unreachable"] = g.unreachable;
    j["generation_notes"] = g.notes;
    collected.push_back(std::move(j));
    return;
  }
  std::cout << format_report(g.report);
  for (const auto& u : g.unreachable) std::cout << "  " << u << "\n";
  for (const auto& n : g.notes) std::cout << "  note: " << n << "\n";
}

int cmd_generate(const options& o) {
  criterion c = chosen_criterion(o);
  auto w = load(o, c != criterion::tags);
  generation_options opt{o.depth, o.input_cap};
  nlohmann::json collected = nlohmann::json::array();
  std::string suites;
  auto keep = [&](const std::string& name, const generation_result& g) {
    print_generation(o, g, collected);
    if (o.out.empty()) suites += write_suite(*w.m, g.suite);
    else emit(o, name + ".suite", write_suite(*w.m, g.suite));
    return g.report.satisfied();
  };
  int status;
  if (c == criterion::tags) {
    status = keep("functional", generate_tag_suite(*w.m, opt)) ? exit_ok : exit_unsatisfied;
  } else {
    status = per_property(w, [&](const property_automaton& a) {
      std::string name = file_stem(a.prop.name) + "_" + to_string(c);
      if (c == criterion::robustness) return keep(name, generate_robustness(*w.m, a, mutate_automaton(a), opt));
      return keep(name, generate_for_criterion(*w.m, a, c, o.k, opt));
    });
  }
  if (o.format == "json") std::cout << collected.dump(2) << "\n";
  if (!suites.empty()) std::cout << "\n" << suites;
  return status;
}

int cmd_mutate_automata(const options& o) {
  auto w = load(o);
  std::vector<mutated_automaton> all;
  for (const auto& a : w.automata) {
    std::vector<std::string> skipped;
    try {
      auto mutants = mutate_automaton(a, &skipped);
      all.insert(all.end(), mutants.begin(), mutants.end());
    } catch (const property_not_mutable& e) {
      if (w.automata.size() == 1) throw;
      std::cerr << "skipped: " << e.what() << "\n";
    }
    for (const auto& s : skipped) std::cerr << "inapplicable: " << s << "\n";
  }
  if (o.format == "json") {
    emit(o, "mutants.json", mutant_manifest(all).dump(2) + "\n");
  } else if (o.format == "dot") {
    for (const auto& m : all) emit(o, file_stem(m.id) + ".dot", emit_dot(m.automaton));
  } else {
    std::string text;
    for (const auto& m : all) {
      text += m.id + "  " + to_string(m.change.original) + " ~> " + to_string(m.change.mutated) + "\n";
      for (const auto& n : m.notes) text += "  note: " + n + "\n";
    }
    emit(o, "mutants.txt", text);
  }
  return exit_ok;
}

int cmd_mutate_model(const options& o) {
  auto w = load(o);
  std::set<model_operator> ops;
  for (const auto& name : o.operators) {
    auto op = parse_model_operator(name);
    if (!op) throw usage_error("unknown model mutation operator '" + name + "'");
    ops.insert(*op);
  }
  if (o.operators.empty()) ops = all_model_operators();
  auto suite = load_suites(*w.m, o.suites);
  auto mutants = generate_mutants(*w.m, ops);
  auto report = run_experiment(mutants, suite, w.automata);

  if (o.format == "csv") {
    emit(o, "verdicts.csv", to_csv(report, ops));
  } else if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < mutants.size(); ++i) {
      const auto& r = report.results[i];
      j.push_back({{"id", r.mutant_id},
                   {"operator", to_string(r.op)},
                   {"description", mutants[i].description},
                   {"verdict", to_string(r.v)},
                   {"detail", r.detail},
                   {"violated", r.violated}});
    }
    emit(o, "verdicts.json", j.dump(2) + "\n");
  } else {
    std::string text = format_table(report, ops);
    std::string stillborn;
    for (std::size_t i = 0; i < mutants.size(); ++i) {
      if (report.results[i].v == verdict::stillborn)
        stillborn += "  " + mutants[i].id + "  " + mutants[i].description + "\n";
    }
    if (!stillborn.empty()) text += "\nstillborn (excluded from the counts):\n" + stillborn;
    emit(o, "verdicts.txt", text);
  }
  return exit_ok;
}

int cmd_dot(const options& o) {
  auto w = load(o);
  for (const auto& a : w.automata) {
    emit(o, file_stem(a.prop.name) + ".dot", emit_dot(a));
    if (!o.with_mutants || !a.has_rejection()) continue;
    for (const auto& m : mutate_automaton(a)) emit(o, file_stem(m.id) + ".dot", emit_dot(m.automaton));
  }
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property-based coverage, mutation and test generation for behavioral models"};
  app.require_subcommand(1);
  options o;

  auto common = [&](CLI::App* sub, bool properties = true) {
    sub->add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
    auto* p = sub->add_option("--properties", o.properties, "Property file")->check(CLI::ExistingFile);
    if (properties) p->required();
    sub->add_option("--property", o.only, "Restrict to the named properties");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv", "dot"}));
    sub->add_option("--out", o.out, "Output directory");
  };
  auto criterion_opts = [&](CLI::App* sub) {
    sub->add_option("--criterion", o.criterion_name, "alpha | alpha-pair | k-pattern | k-scope | robustness | tags");
    sub->add_option("--k", o.k, "Bound of k-pattern and k-scope")->check(CLI::NonNegativeNumber);
  };

  auto* check = app.add_subcommand("check", "Load, typecheck and build every property automaton");
  common(check);
  auto* measure = app.add_subcommand("measure", "Measure the coverage of suites");
  common(measure);
  criterion_opts(measure);
  measure->add_option("--suite", o.suites, "Suite file (repeatable)");
  auto* generate = app.add_subcommand("generate", "Generate a suite for a coverage criterion");
  common(generate, false);
  criterion_opts(generate);
  generate->add_option("--depth", o.depth, "Maximum test length")->check(CLI::PositiveNumber);
  generate->add_option("--input-cap", o.input_cap, "Maximum inputs tried per operation and step (0: all)");
  auto* mut_a = app.add_subcommand("mutate-automata", "List the robustness mutants of each property");
  common(mut_a);
  auto* mut_m = app.add_subcommand("mutate-model", "Classify model mutants against suites and properties");
  common(mut_m);
  mut_m->add_option("--suite", o.suites, "Suite file (repeatable)");
  mut_m->add_option("--operators", o.operators, "SSOR, SNO, SAF, AD (default: all)")->delimiter(',');
  auto* dot = app.add_subcommand("dot", "Write one DOT file per automaton");
  common(dot);
  dot->add_flag("--with-mutants", o.with_mutants, "Also write the robustness mutants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (generate->parsed() && o.properties.empty() && o.criterion_name != "tags") {
      throw usage_error("--properties is required unless --criterion tags");
    }
    if (check->parsed()) return cmd_check(o);
    if (measure->parsed()) return cmd_measure(o);
    if (generate->parsed()) return cmd_generate(o);
    if (mut_a->parsed()) return cmd_mutate_automata(o);
    if (mut_m->parsed()) return cmd_mutate_model(o);
    if (dot->parsed()) return cmd_dot(o);
  } catch (const invariant_violation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_input;
}

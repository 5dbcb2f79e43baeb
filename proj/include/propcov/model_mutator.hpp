#pragma once

#include "propcov/automaton.hpp"
#include "propcov/model.hpp"

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace propcov {

/// SSOR replaces a relational operator (the kernel has no set operators),
/// SNO negates an atomic condition, SAF makes a guard false and AD deletes
/// one effect assignment.
enum class model_operator { ssor, sno, saf, ad };

const char* to_string(model_operator op);
std::optional<model_operator> parse_model_operator(std::string_view name);
const std::set<model_operator>& all_model_operators();

struct model_mutant {
  std::string id;
  model_operator op = model_operator::ssor;
  std::string operation;
  int behavior = -1;
  std::string location;     // "guard" or "effect <n>"
  std::string description;  // original -> mutated
  std::shared_ptr<const model> mutated;
};

/// Every single-location mutant of `m` for the chosen operators, in
/// operator, operation, behavior and position order.
std::vector<model_mutant> generate_mutants(const model& m, const std::set<model_operator>& ops);

/// C = every step returns the tags and message recorded on the base model;
/// E = some property automaton reaches its rejection state.
enum class verdict { c_ne, nc_na, nc_e, c_a, stillborn };

const char* to_string(verdict v);

struct mutant_result {
  std::string mutant_id;
  model_operator op = model_operator::ssor;
  verdict v = verdict::c_ne;
  /// First diverging step as "test@step", or the model defect for
  /// stillborn mutants.
  std::string detail;
  std::vector<std::string> violated;  // properties whose rejection state was reached
};

/// `suite` holds test cases animated on the base model; their steps are the
/// expected results. A model defect while replaying on the mutant makes it
/// stillborn.
mutant_result classify_mutant(const model_mutant& mut, const std::vector<test_case>& suite,
                              const std::vector<property_automaton>& automata);

struct experiment_report {
  std::vector<mutant_result> results;

  /// Verdict counts per operator, columns C-NE, NC-NA, NC-E, C-A.
  std::array<std::size_t, 4> row(model_operator op) const;
  std::size_t stillborn(model_operator op) const;
};

experiment_report run_experiment(const std::vector<model_mutant>& mutants, const std::vector<test_case>& suite,
                                 const std::vector<property_automaton>& automata);

/// Verdict table with rows SSOR, SNO, SAF, AD.
std::string format_table(const experiment_report& r, const std::set<model_operator>& ops = all_model_operators());
std::string to_csv(const experiment_report& r, const std::set<model_operator>& ops = all_model_operators());

} // namespace propcov

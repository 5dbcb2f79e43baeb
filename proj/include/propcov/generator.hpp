#pragma once

#include "propcov/automaton.hpp"
#include "propcov/coverage.hpp"
#include "propcov/model.hpp"
#include "propcov/mutation.hpp"

#include <string>
#include <vector>

namespace propcov {

struct generation_options {
  int depth = 12;
  /// Maximum input valuations tried per operation and step; 0 means all.
  std::size_t input_cap = 0;
};

struct generation_result {
  std::vector<test_case> suite;
  /// Coverage of `suite`, measured by replaying it through the coverage
  /// module.
  coverage_report report;
  /// Obligations with no witness within the depth bound.
  std::vector<std::string> unreachable;
  std::vector<std::string> notes;
};

/// Breadth-first search over the product of the model and the automaton,
/// one shortest test per obligation. A test must also visit a final state
/// of the automaton when some test of that length can; otherwise the
/// shortest witness is kept and a note records it. Identical call sequences
/// are merged. Throws invariant_violation when the measured coverage of the
/// result disagrees with the search.
generation_result generate_for_criterion(const model& m, const property_automaton& a, criterion c, int k,
                                         const generation_options& opt = {});

/// Robustness: one test per mutant firing its mutated transition, while
/// preferring runs that visit a final state of the base automaton `a`.
generation_result generate_robustness(const model& m, const property_automaton& a,
                                      const std::vector<mutated_automaton>& mutants,
                                      const generation_options& opt = {});

/// One shortest test per behavior tag of the model, in declaration order:
/// a functional suite that ignores the properties.
generation_result generate_tag_suite(const model& m, const generation_options& opt = {});

} // namespace propcov

#pragma once

#include "propcov/automaton.hpp"
#include "propcov/model.hpp"

#include <json.hpp>

#include <vector>

namespace propcov {

/// Path of one test case through an automaton: `fired[i]` is the
/// transition taken by step i.
struct automaton_run {
  std::string test_id;
  std::vector<int> fired;
  int end_state = 0;
  bool reached_final = false;
  bool reached_rejection = false;
};

/// Operation names compare case-insensitively; an absent component of
/// `q` matches anything; tags match when they share at least one tag with
/// the step.
bool match_step(const step& s, const event_quad& q);

/// Transition taken from `state` by `s`. When several alpha guards match
/// and their targets differ, the single `preferred` one wins; otherwise
/// ambiguous_property is thrown.
int fire(const property_automaton& a, int state, const step& s);

automaton_run run_test_case(const property_automaton& a, const test_case& t);
std::vector<automaton_run> run_suite(const property_automaton& a, const std::vector<test_case>& suite);

nlohmann::json trace_to_json(const property_automaton& a, const automaton_run& r);

} // namespace propcov

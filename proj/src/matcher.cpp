#include "propcov/matcher.hpp"

#include "lexer.hpp"

#include <algorithm>

namespace propcov {

bool match_step(const step& s, const event_quad& q) {
  if (q.op && !detail::iequals(*q.op, s.operation)) return false;
  if (q.pre && !evaluate(q.pre, s.before, s.inputs)) return false;
  if (q.post && !evaluate(q.post, s.after, s.inputs)) return false;
  if (q.tags && std::none_of(q.tags->begin(), q.tags->end(), [&](const std::string& t) { return s.tags.contains(t); })) {
    return false;
  }
  return true;
}

int fire(const property_automaton& a, int state, const step& s) {
  const auto& ids = a.outgoing(state);
  std::vector<int> hits;
  for (std::size_t i = 0; i + 1 < ids.size(); ++i)
    if (match_step(s, a.tr(ids[i]).quad)) hits.push_back(ids[i]);
  if (hits.empty()) return ids.back();
  int target = a.tr(hits.front()).target;
  if (std::all_of(hits.begin(), hits.end(), [&](int id) { return a.tr(id).target == target; })) return hits.front();
  std::vector<int> preferred;
  std::copy_if(hits.begin(), hits.end(), std::back_inserter(preferred), [&](int id) { return a.tr(id).preferred; });
  if (preferred.size() == 1) return preferred.front();
  std::string names;
  for (int id : hits) names += (names.empty() ? "" : ", ") + a.describe(id);
  throw ambiguous_property("ambiguous property " + a.prop.name + ": " + s.operation + " step matches " + names);
}

automaton_run run_test_case(const property_automaton& a, const test_case& t) {
  automaton_run r;
  r.test_id = t.id;
  int state = a.initial;
  r.reached_final = a.st(state).final_;
  r.reached_rejection = a.st(state).rejection;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    int id;
    try {
      id = fire(a, state, t.steps[i]);
    } catch (const ambiguous_property& e) {
      throw ambiguous_property(std::string(e.what()) + " (test '" + t.id + "', step " + std::to_string(i + 1) + ")");
    }
    r.fired.push_back(id);
    state = a.tr(id).target;
    r.reached_final = r.reached_final || a.st(state).final_;
    r.reached_rejection = r.reached_rejection || a.st(state).rejection;
  }
  r.end_state = state;
  return r;
}

std::vector<automaton_run> run_suite(const property_automaton& a, const std::vector<test_case>& suite) {
  std::vector<automaton_run> out;
  out.reserve(suite.size());
  for (const auto& t : suite) out.push_back(run_test_case(a, t));
  return out;
}

nlohmann::json trace_to_json(const property_automaton& a, const automaton_run& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < r.fired.size(); ++i) {
    steps.push_back({{"step", i + 1}, {"transition", a.describe(r.fired[i])}, {"alpha", a.tr(r.fired[i]).alpha}});
  }
  return {{"test", r.test_id},
          {"property", a.prop.name},
          {"steps", steps},
          {"end_state", a.st(r.end_state).label},
          {"reached_final", r.reached_final},
          {"reached_rejection", r.reached_rejection}};
}

} // namespace propcov

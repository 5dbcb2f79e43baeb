#pragma once

#include "propcov/model.hpp"
#include "propcov/property.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <vector>

namespace propcov {

/// Which part of the property a state or transition was built from.
enum class origin { scope, pattern };

const char* to_string(origin o);

struct aut_state {
  int id = 0;
  std::string label;  // "0", "1", ... and "X" for the rejection state
  bool initial = false;
  bool final_ = false;
  bool rejection = false;
  origin prov = origin::pattern;
};

/// Alpha-transitions carry one of the property's events; each state also
/// has exactly one sigma-rest transition taken by every step matching none
/// of its sibling alpha guards.
struct transition {
  int id = 0;
  int source = 0;
  int target = 0;
  bool alpha = false;
  event_quad quad;                     // alpha only
  int event = -1;                      // legend index, alpha only
  std::string event_label;             // "E0", or "E'0" once mutated
  std::vector<event_quad> excluded;    // sigma-rest only
  origin prov = origin::pattern;
  bool loop = false;       // alpha loop inside the pattern part
  bool preferred = false;  // mutated transition, wins overlaps
};

/// Event numbering shared by every automaton of a property set, so that the
/// same quadruplet gets the same `E<n>` label everywhere.
class event_legend {
public:
  /// Index of `q`, appending it when new.
  int index_of(const event_quad& q);
  int find(const event_quad& q) const;
  const std::vector<event_quad>& events() const { return events_; }
  static std::string label(int index) { return "E" + std::to_string(index); }

private:
  std::vector<event_quad> events_;
};

struct property_automaton {
  property prop;
  std::vector<aut_state> states;
  std::vector<transition> transitions;
  int initial = 0;
  int rejection = -1;
  /// Static overlap diagnostics found while building.
  std::vector<std::string> warnings;

  bool has_rejection() const { return rejection >= 0; }
  std::size_t alpha_count() const;
  /// Alpha-transitions of `state` in order, followed by its sigma-rest.
  const std::vector<int>& outgoing(int state) const { return out_.at(static_cast<std::size_t>(state)); }
  int sigma_of(int state) const { return outgoing(state).back(); }
  const transition& tr(int id) const { return transitions.at(static_cast<std::size_t>(id)); }
  const aut_state& st(int id) const { return states.at(static_cast<std::size_t>(id)); }

  /// `0->1:E0`, `1->1:sigma`.
  std::string describe(int transition_id) const;

  /// Rebuilds the outgoing index and every sigma-rest exclusion set after
  /// transitions were edited.
  void reindex();

private:
  std::vector<std::vector<int>> out_;
};

/// Compiles `p` by embedding the pattern sub-automaton into its scope
/// wrapper. When `m` is given, alpha guards of one state that can match the
/// same behavior are reported in `warnings`. Throws unsupported_combination
/// when one state would need two transitions on the same event.
property_automaton build_automaton(const property& p, event_legend& legend, const model* m = nullptr);
property_automaton build_automaton(const property& p, const model* m = nullptr);

struct transition_partition {
  std::vector<int> alpha;
  std::vector<int> sigma;
};

transition_partition classify_transitions(const property_automaton& a);

/// Transitions into states from which every path stays doomed to the
/// rejection state; transitions leaving the rejection state are omitted.
std::set<int> uncoverable_transitions(const property_automaton& a);

std::string emit_dot(const property_automaton& a);
nlohmann::json to_json(const property_automaton& a);

} // namespace propcov

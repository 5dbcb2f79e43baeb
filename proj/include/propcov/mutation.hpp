#pragma once

#include "propcov/automaton.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace propcov {

enum class mutation_rule { post_tag_removal, pre_removal, weakening };

const char* to_string(mutation_rule r);

/// `[op, pre, post, T]` to `[op, pre, _, _]`; nullopt when neither post nor
/// tags is present.
std::optional<event_quad> mutate_post_tag_removal(const event_quad& q);

/// `[op, pre, post, T]` to `[op, _, _, _]`; nullopt without a pre.
std::optional<event_quad> mutate_pre_removal(const event_quad& q);

/// Drops one conjunct at a time: from a conjunctive pre, `[op, pre\i, _, _]`;
/// from a conjunctive post, `[op, pre, post\i, _]`. Atomic pre and post
/// yield nothing.
std::vector<event_quad> mutate_weaken(const event_quad& q);

struct mutated_transition {
  int transition = -1;
  event_quad original;
  event_quad mutated;
  mutation_rule rule = mutation_rule::post_tag_removal;
  int variant = 0;  // 1-based for weakening, 0 otherwise
};

/// Copy of a safety automaton where one rejection-bound guard is weakened,
/// the former rejection state is the only final state and the mutated
/// transition wins overlaps with its siblings.
struct mutated_automaton {
  std::string id;  // <property>/<transition>/<rule>[#variant]
  std::string base_property;
  mutated_transition change;
  property_automaton automaton;
  std::vector<std::string> notes;
};

/// One mutant per applicable (rejection-bound alpha-transition, rule,
/// variant). Throws property_not_mutable when `a` has no rejection state.
/// Inapplicable rules are described in `skipped` when given.
std::vector<mutated_automaton> mutate_automaton(const property_automaton& a,
                                                std::vector<std::string>* skipped = nullptr);

nlohmann::json mutant_manifest(const std::vector<mutated_automaton>& mutants);

} // namespace propcov

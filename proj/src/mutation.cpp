#include "propcov/mutation.hpp"

#include "lexer.hpp"

namespace propcov {

const char* to_string(mutation_rule r) {
  switch (r) {
  case mutation_rule::post_tag_removal: return "post-tag-removal";
  case mutation_rule::pre_removal: return "pre-removal";
  case mutation_rule::weakening: return "weakening";
  }
  return "?";
}

std::optional<event_quad> mutate_post_tag_removal(const event_quad& q) {
  if (!q.post && !q.tags) return std::nullopt;
  return event_quad{q.op, q.pre, nullptr, std::nullopt};
}

std::optional<event_quad> mutate_pre_removal(const event_quad& q) {
  if (!q.pre) return std::nullopt;
  return event_quad{q.op, nullptr, nullptr, std::nullopt};
}

namespace {

std::vector<expr> drop_each(const expr& e) {
  std::vector<expr> out;
  if (!e) return out;
  auto parts = conjuncts(e);
  if (parts.size() < 2) return out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<expr> rest;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) rest.push_back(parts[j]);
    out.push_back(make_and(std::move(rest)));
  }
  return out;
}

bool ops_compatible(const event_quad& a, const event_quad& b) {
  return !a.op || !b.op || detail::iequals(*a.op, *b.op);
}

} // namespace

std::vector<event_quad> mutate_weaken(const event_quad& q) {
  std::vector<event_quad> out;
  for (auto& pre : drop_each(q.pre)) out.push_back(event_quad{q.op, pre, nullptr, std::nullopt});
  for (auto& post : drop_each(q.post)) out.push_back(event_quad{q.op, q.pre, post, std::nullopt});
  return out;
}

std::vector<mutated_automaton> mutate_automaton(const property_automaton& a, std::vector<std::string>* skipped) {
  if (!a.has_rejection()) {
    throw property_not_mutable("property " + a.prop.name + " is not mutable: its automaton has no rejection state");
  }
  auto skip = [&](const std::string& why) {
    if (skipped) skipped->push_back(why);
  };

  std::vector<mutated_automaton> out;
  for (const auto& t : a.transitions) {
    if (!t.alpha || t.target != a.rejection) continue;
    const std::string where = a.prop.name + "/" + a.describe(t.id);

    std::vector<mutated_transition> candidates;
    if (auto m = mutate_post_tag_removal(t.quad)) candidates.push_back({t.id, t.quad, *m, mutation_rule::post_tag_removal, 0});
    else skip(where + ": post-tag-removal inapplicable, no post or tags");
    if (auto m = mutate_pre_removal(t.quad)) candidates.push_back({t.id, t.quad, *m, mutation_rule::pre_removal, 0});
    else skip(where + ": pre-removal inapplicable, no pre");
    auto weak = mutate_weaken(t.quad);
    if (weak.empty()) skip(where + ": weakening inapplicable, no conjunction");
    for (std::size_t i = 0; i < weak.size(); ++i)
      candidates.push_back({t.id, t.quad, weak[i], mutation_rule::weakening, static_cast<int>(i) + 1});

    for (auto& c : candidates) {
      std::string id = where + "/" + to_string(c.rule) + (c.variant ? "#" + std::to_string(c.variant) : "");
      mutated_automaton mut;
      mut.id = id;
      mut.base_property = a.prop.name;
      mut.change = c;
      mut.automaton = a;

      bool duplicate = false;
      for (int sib : a.outgoing(t.source)) {
        const transition& s = a.tr(sib);
        if (!s.alpha || s.id == t.id) continue;
        if (s.quad == c.mutated) duplicate = true;
        else if (s.target != t.target && ops_compatible(s.quad, c.mutated))
          mut.notes.push_back("mutated guard may overlap " + s.event_label + " (" + a.describe(s.id) +
                              "); the mutated transition is preferred");
      }
      if (duplicate) {
        skip(id + ": mutated guard equals a sibling guard");
        continue;
      }

      property_automaton& m = mut.automaton;
      for (auto& s : m.states) s.final_ = false;
      aut_state& r = m.states[static_cast<std::size_t>(a.rejection)];
      r.final_ = true;
      r.rejection = false;
      m.rejection = -1;
      m.warnings.clear();
      transition& mt = m.transitions[static_cast<std::size_t>(t.id)];
      mt.quad = c.mutated;
      mt.event_label = "E'" + std::to_string(t.event);
      mt.preferred = true;
      m.prop.name = id;
      m.reindex();
      out.push_back(std::move(mut));
    }
  }
  return out;
}

nlohmann::json mutant_manifest(const std::vector<mutated_automaton>& mutants) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : mutants) {
    out.push_back({{"id", m.id},
                   {"property", m.base_property},
                   {"transition", m.automaton.describe(m.change.transition)},
                   {"rule", to_string(m.change.rule)},
                   {"variant", m.change.variant},
                   {"original", to_string(m.change.original)},
                   {"mutated", to_string(m.change.mutated)},
                   {"notes", m.notes}});
  }
  return out;
}

} // namespace propcov

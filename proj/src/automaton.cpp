#include "propcov/automaton.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace propcov {

const char* to_string(origin o) { return o == origin::scope ? "scope" : "pattern"; }

int event_legend::find(const event_quad& q) const {
  for (std::size_t i = 0; i < events_.size(); ++i)
    if (events_[i] == q) return static_cast<int>(i);
  return -1;
}

int event_legend::index_of(const event_quad& q) {
  int i = find(q);
  if (i >= 0) return i;
  events_.push_back(q);
  return static_cast<int>(events_.size()) - 1;
}

std::size_t property_automaton::alpha_count() const {
  return static_cast<std::size_t>(
      std::count_if(transitions.begin(), transitions.end(), [](const transition& t) { return t.alpha; }));
}

std::string property_automaton::describe(int id) const {
  const transition& t = tr(id);
  return st(t.source).label + "->" + st(t.target).label + ":" + (t.alpha ? t.event_label : "sigma");
}

void property_automaton::reindex() {
  out_.assign(states.size(), {});
  std::vector<int> sigma(states.size(), -1);
  for (const auto& t : transitions) {
    if (t.alpha) out_[static_cast<std::size_t>(t.source)].push_back(t.id);
    else sigma[static_cast<std::size_t>(t.source)] = t.id;
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (sigma[s] < 0) throw invariant_violation("state " + states[s].label + " has no sigma-rest transition");
    transition& rest = transitions[static_cast<std::size_t>(sigma[s])];
    rest.excluded.clear();
    for (int id : out_[s]) rest.excluded.push_back(tr(id).quad);
    out_[s].push_back(sigma[s]);
  }
}

namespace {

struct raw_state {
  origin prov = origin::pattern;
  bool ok = false;
  bool final_ = false;
  bool rejection = false;
  int sigma_target = -1;  // -1: self-loop
};

struct raw_transition {
  int source = 0;
  int target = 0;
  event_quad quad;
  int event = -1;
  origin prov = origin::pattern;
  bool loop = false;
};

bool ops_overlap(const std::optional<std::string>& a, const std::optional<std::string>& b, const std::string& op) {
  return (!a || detail::iequals(*a, op)) && (!b || detail::iequals(*b, op));
}

bool tags_overlap(const std::optional<tag_set>& q, const std::set<std::string>& fired) {
  if (!q) return true;
  return std::any_of(q->begin(), q->end(), [&](const std::string& t) { return fired.contains(t); });
}

class builder {
public:
  builder(const property& p, event_legend& legend) : p_(p), legend_(legend) {}

  property_automaton build(const model* m) {
    std::visit([&](const auto& s) { wrap(s); }, p_.scp);
    mark_loops();
    return finish(m);
  }

private:
  int add_state(origin prov, bool ok = false) {
    states_.push_back(raw_state{prov, ok});
    return static_cast<int>(states_.size()) - 1;
  }

  int rejection() {
    if (reject_ < 0) {
      reject_ = add_state(origin::pattern);
      states_[static_cast<std::size_t>(reject_)].rejection = true;
    }
    return reject_;
  }

  void alpha(int source, const event_expr& e, int target, origin prov) {
    event_quad q = normalize_event(e);
    for (const auto& t : transitions_) {
      if (t.source == source && t.quad == q) {
        throw unsupported_combination("unsupported combination: '" + pattern_name(p_.pat) + "' pattern with '" +
                                      scope_name(p_.scp) + "' scope needs two transitions on " + to_string(q) +
                                      " from one state");
      }
    }
    transitions_.push_back(raw_transition{source, target, q, legend_.index_of(q), prov});
  }

  // Legend order is scope opening event, pattern events, scope closing
  // event; registering up front keeps it independent of construction order.
  void register_events() {
    for (const auto& e : events_in_order(p_)) legend_.index_of(normalize_event(e));
  }

  std::vector<int> build_pattern() {
    register_events();
    return std::visit([&](const auto& pat) { return pattern_part(pat); }, p_.pat);
  }

  std::vector<int> pattern_part(const never_pattern& pat) {
    int p0 = add_state(origin::pattern, true);
    alpha(p0, pat.event, rejection(), origin::pattern);
    return {p0};
  }

  std::vector<int> pattern_part(const always_pattern& pat) {
    int p0 = add_state(origin::pattern, true);
    event_quad violation{std::nullopt, nullptr, make_not(pat.condition), std::nullopt};
    int r = rejection();
    transitions_.push_back(raw_transition{p0, r, violation, legend_.index_of(violation), origin::pattern});
    return {p0};
  }

  std::vector<int> pattern_part(const eventually_pattern& pat) {
    occurrence_bound b = pat.bound.value_or(occurrence_bound{occurrence_bound::kind::at_least, 1});
    std::vector<int> chain;
    for (int i = 0; i <= b.count; ++i) {
      bool ok = b.k == occurrence_bound::kind::at_most || i == b.count;
      chain.push_back(add_state(origin::pattern, ok));
    }
    for (int i = 0; i < b.count; ++i) alpha(chain[static_cast<std::size_t>(i)], pat.event, chain[static_cast<std::size_t>(i) + 1], origin::pattern);
    int last = chain.back();
    if (b.k == occurrence_bound::kind::at_least) alpha(last, pat.event, last, origin::pattern);
    else alpha(last, pat.event, rejection(), origin::pattern);
    return chain;
  }

  std::vector<int> pattern_part(const precedes_pattern& pat) {
    int p0 = add_state(origin::pattern, true);
    int p1 = add_state(origin::pattern, true);
    alpha(p0, pat.first, p1, origin::pattern);
    alpha(p0, pat.second, rejection(), origin::pattern);
    if (pat.direct) {
      alpha(p1, pat.first, p1, origin::pattern);
      alpha(p1, pat.second, p0, origin::pattern);
      states_[static_cast<std::size_t>(p1)].sigma_target = p0;
    } else {
      alpha(p1, pat.second, p1, origin::pattern);
    }
    return {p0, p1};
  }

  std::vector<int> pattern_part(const follows_pattern& pat) {
    int p0 = add_state(origin::pattern, true);
    int p1 = add_state(origin::pattern, false);
    alpha(p0, pat.trigger, p1, origin::pattern);
    alpha(p1, pat.response, p0, origin::pattern);
    if (pat.direct) states_[static_cast<std::size_t>(p1)].sigma_target = rejection();
    return {p0, p1};
  }

  bool ok(int s) const { return states_[static_cast<std::size_t>(s)].ok; }
  void set_final(int s) { states_[static_cast<std::size_t>(s)].final_ = true; }

  void wrap(const globally_scope&) {
    pattern_ = build_pattern();
    initial_ = pattern_.front();
    for (int s : pattern_)
      if (ok(s)) set_final(s);
  }

  void wrap(const before_scope& sc) {
    pattern_ = build_pattern();
    initial_ = pattern_.front();
    int done = -1;
    for (int s : pattern_) {
      if (ok(s)) {
        if (done < 0) {
          done = add_state(origin::scope);
          set_final(done);
        }
        alpha(s, sc.event, done, origin::scope);
      } else {
        alpha(s, sc.event, rejection(), origin::scope);
      }
    }
  }

  void wrap(const after_scope& sc) {
    initial_ = add_state(origin::scope);
    pattern_ = build_pattern();
    alpha(initial_, sc.event, pattern_.front(), origin::scope);
    for (int s : pattern_)
      if (ok(s)) set_final(s);
  }

  void wrap(const between_scope& sc) {
    initial_ = add_state(origin::scope);
    pattern_ = build_pattern();
    alpha(initial_, sc.open, pattern_.front(), origin::scope);
    int closed = -1;
    for (int s : pattern_) {
      if (ok(s)) {
        if (closed < 0) {
          closed = add_state(origin::scope);
          set_final(closed);
        }
        alpha(s, sc.close, closed, origin::scope);
      } else {
        alpha(s, sc.close, rejection(), origin::scope);
      }
    }
    if (closed >= 0) alpha(closed, sc.open, pattern_.front(), origin::scope);
  }

  void wrap(const after_until_scope& sc) {
    initial_ = add_state(origin::scope);
    pattern_ = build_pattern();
    alpha(initial_, sc.open, pattern_.front(), origin::scope);
    for (int s : pattern_) {
      if (ok(s)) {
        set_final(s);
        alpha(s, sc.close, initial_, origin::scope);
      } else {
        alpha(s, sc.close, rejection(), origin::scope);
      }
    }
  }

  // Back edges of a depth-first walk over the pattern's own alpha
  // transitions, self-loops included.
  void mark_loops() {
    std::vector<int> colour(states_.size(), 0);
    std::function<void(int)> dfs = [&](int s) {
      colour[static_cast<std::size_t>(s)] = 1;
      for (auto& t : transitions_) {
        if (t.source != s || t.prov != origin::pattern || states_[static_cast<std::size_t>(t.target)].rejection) continue;
        if (states_[static_cast<std::size_t>(t.target)].prov != origin::pattern) continue;
        int c = colour[static_cast<std::size_t>(t.target)];
        if (c == 1) t.loop = true;
        else if (c == 0) dfs(t.target);
      }
      colour[static_cast<std::size_t>(s)] = 2;
    };
    dfs(pattern_.front());
  }

  std::vector<std::size_t> ordered_out(int s) const {
    std::vector<std::size_t> out;
    for (int pass = 0; pass < 2; ++pass) {
      origin want = pass == 0 ? origin::pattern : origin::scope;
      for (std::size_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i].source == s && transitions_[i].prov == want) out.push_back(i);
    }
    return out;
  }

  int sigma_target(int s) const {
    int t = states_[static_cast<std::size_t>(s)].sigma_target;
    return t < 0 ? s : t;
  }

  property_automaton finish(const model* m) {
    // Number states breadth-first from the initial state; the rejection
    // state always comes last.
    std::vector<int> number(states_.size(), -1);
    std::vector<int> order;
    std::deque<int> queue{initial_};
    number[static_cast<std::size_t>(initial_)] = 0;
    bool reject_seen = false;
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      if (states_[static_cast<std::size_t>(s)].rejection) {
        reject_seen = true;
        continue;
      }
      order.push_back(s);
      std::vector<int> targets;
      for (std::size_t i : ordered_out(s)) targets.push_back(transitions_[i].target);
      targets.push_back(sigma_target(s));
      for (int t : targets) {
        if (number[static_cast<std::size_t>(t)] >= 0) continue;
        number[static_cast<std::size_t>(t)] = 0;
        queue.push_back(t);
      }
    }
    if (reject_seen) order.push_back(reject_);
    for (std::size_t i = 0; i < order.size(); ++i) number[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    property_automaton a;
    a.prop = p_;
    int counter = 0;
    for (int s : order) {
      const raw_state& r = states_[static_cast<std::size_t>(s)];
      aut_state st;
      st.id = number[static_cast<std::size_t>(s)];
      st.label = r.rejection ? "X" : std::to_string(counter++);
      st.initial = s == initial_;
      st.final_ = r.final_;
      st.rejection = r.rejection;
      st.prov = r.prov;
      if (r.rejection) a.rejection = st.id;
      a.states.push_back(st);
    }
    a.initial = 0;
    for (int s : order) {
      for (std::size_t i : ordered_out(s)) {
        const raw_transition& r = transitions_[i];
        transition t;
        t.id = static_cast<int>(a.transitions.size());
        t.source = number[static_cast<std::size_t>(r.source)];
        t.target = number[static_cast<std::size_t>(r.target)];
        t.alpha = true;
        t.quad = r.quad;
        t.event = r.event;
        t.event_label = event_legend::label(r.event);
        t.prov = r.prov;
        t.loop = r.loop;
        a.transitions.push_back(std::move(t));
      }
      transition rest;
      rest.id = static_cast<int>(a.transitions.size());
      rest.source = number[static_cast<std::size_t>(s)];
      rest.target = number[static_cast<std::size_t>(sigma_target(s))];
      rest.prov = states_[static_cast<std::size_t>(s)].prov;
      a.transitions.push_back(std::move(rest));
    }
    a.reindex();
    if (m) a.warnings = overlap_warnings(a, *m);
    return a;
  }

  static std::vector<std::string> overlap_warnings(const property_automaton& a, const model& m) {
    std::vector<std::string> out;
    for (const auto& s : a.states) {
      const auto& ids = a.outgoing(s.id);
      for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        for (std::size_t j = i + 1; j + 1 < ids.size(); ++j) {
          const transition& x = a.tr(ids[i]);
          const transition& y = a.tr(ids[j]);
          if (x.target == y.target) continue;
          for (const auto& op : m.operations) {
            if (!ops_overlap(x.quad.op, y.quad.op, op.name)) continue;
            for (const auto& b : op.behaviors) {
              if (tags_overlap(x.quad.tags, b.tags) && tags_overlap(y.quad.tags, b.tags)) {
                out.push_back(a.prop.name + ": state " + s.label + ": " + x.event_label + " and " + y.event_label +
                              " may both match " + op.name + " steps tagged " + *b.tags.begin());
                goto next_pair;
              }
            }
          }
        next_pair:;
        }
      }
    }
    return out;
  }

  const property& p_;
  event_legend& legend_;
  std::vector<raw_state> states_;
  std::vector<raw_transition> transitions_;
  std::vector<int> pattern_;
  int initial_ = 0;
  int reject_ = -1;
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

property_automaton build_automaton(const property& p, event_legend& legend, const model* m) {
  return builder(p, legend).build(m);
}

property_automaton build_automaton(const property& p, const model* m) {
  event_legend legend;
  return build_automaton(p, legend, m);
}

transition_partition classify_transitions(const property_automaton& a) {
  transition_partition out;
  for (const auto& t : a.transitions) (t.alpha ? out.alpha : out.sigma).push_back(t.id);
  return out;
}

std::set<int> uncoverable_transitions(const property_automaton& a) {
  std::set<int> out;
  if (!a.has_rejection()) return out;
  std::vector<bool> doomed(a.states.size(), false);
  doomed[static_cast<std::size_t>(a.rejection)] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& s : a.states) {
      if (doomed[static_cast<std::size_t>(s.id)]) continue;
      const auto& ids = a.outgoing(s.id);
      bool all = std::all_of(ids.begin(), ids.end(),
                             [&](int id) { return doomed[static_cast<std::size_t>(a.tr(id).target)]; });
      if (all) {
        doomed[static_cast<std::size_t>(s.id)] = true;
        changed = true;
      }
    }
  }
  for (const auto& t : a.transitions)
    if (t.source != a.rejection && doomed[static_cast<std::size_t>(t.target)]) out.insert(t.id);
  return out;
}

std::string emit_dot(const property_automaton& a) {
  std::map<int, std::string> legend;
  for (const auto& t : a.transitions)
    if (t.alpha) legend.emplace(t.event, t.event_label + ": " + to_string(t.quad));
  std::string label = a.prop.name;
  for (const auto& [_, line] : legend) label += (label.empty() ? "" : "\\l") + dot_escape(line);
  if (!legend.empty()) label += "\\l";

  std::string out = "digraph \"" + dot_escape(a.prop.name.empty() ? "automaton" : a.prop.name) + "\" {\n";
  out += "  rankdir=LR;\n";
  out += "  label=\"" + label + "\";\n";
  out += "  labeljust=l;\n";
  out += "  node [shape=circle];\n";
  for (const auto& s : a.states) {
    std::vector<std::string> attrs;
    if (s.final_) attrs.push_back("shape=doublecircle");
    if (s.initial) attrs.push_back("style=bold");
    if (s.rejection) attrs.push_back("color=red");
    std::string line = "  \"" + s.label + "\"";
    if (!attrs.empty()) {
      line += " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) line += (i ? ", " : "") + attrs[i];
      line += "]";
    }
    out += line + ";\n";
  }
  for (const auto& t : a.transitions) {
    out += "  \"" + a.st(t.source).label + "\" -> \"" + a.st(t.target).label + "\"";
    if (t.alpha) out += " [label=\"" + dot_escape(t.event_label) + "\"" + (t.preferred ? ", penwidth=2" : "") + "]";
    else out += " [label=\"sigma\", style=dashed]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

nlohmann::json to_json(const property_automaton& a) {
  using nlohmann::json;
  json states = json::array();
  for (const auto& s : a.states) {
    states.push_back({{"id", s.label},
                      {"initial", s.initial},
                      {"final", s.final_},
                      {"rejection", s.rejection},
                      {"provenance", to_string(s.prov)}});
  }
  json transitions = json::array();
  for (const auto& t : a.transitions) {
    json j = {{"id", a.describe(t.id)},
              {"source", a.st(t.source).label},
              {"target", a.st(t.target).label},
              {"kind", t.alpha ? "alpha" : "sigma"},
              {"provenance", to_string(t.prov)}};
    if (t.alpha) {
      j["event"] = t.event_label;
      j["guard"] = to_string(t.quad);
      j["loop"] = t.loop;
      if (t.preferred) j["preferred"] = true;
    } else {
      json ex = json::array();
      for (const auto& q : t.excluded) ex.push_back(to_string(q));
      j["excluded"] = ex;
    }
    transitions.push_back(std::move(j));
  }
  return {{"property", a.prop.name},
          {"source", a.prop.source},
          {"pattern", pattern_name(a.prop.pat)},
          {"scope", scope_name(a.prop.scp)},
          {"states", states},
          {"transitions", transitions}};
}

} // namespace propcov

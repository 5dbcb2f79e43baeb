#include "propcov/coverage.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <set>

namespace propcov {

const char* to_string(criterion c) {
  switch (c) {
  case criterion::alpha: return "alpha";
  case criterion::alpha_pair: return "alpha-pair";
  case criterion::k_pattern: return "k-pattern";
  case criterion::k_scope: return "k-scope";
  case criterion::robustness: return "robustness";
  case criterion::tags: return "tags";
  }
  return "?";
}

std::optional<criterion> parse_criterion(std::string_view name) {
  for (criterion c : {criterion::alpha, criterion::alpha_pair, criterion::k_pattern, criterion::k_scope,
                      criterion::robustness, criterion::tags}) {
    if (detail::iequals(name, to_string(c))) return c;
  }
  return std::nullopt;
}

std::size_t coverage_report::covered_count() const {
  return static_cast<std::size_t>(
      std::count_if(obligations.begin(), obligations.end(), [](const obligation& o) { return o.covered(); }));
}

namespace {

using steps_t = std::vector<std::size_t>;

bool in_pattern_region(const property_automaton& a, int state) {
  const aut_state& s = a.st(state);
  return s.prov == origin::pattern && !s.rejection;
}

class transition_tracker final : public obligation_tracker {
public:
  explicit transition_tracker(int t) : t_(t) {}
  std::unique_ptr<obligation_tracker> clone() const override { return std::make_unique<transition_tracker>(*this); }
  void advance(std::size_t step, int id) override {
    if (!at_ && id == t_) at_ = step;
  }
  std::optional<steps_t> witness() const override {
    if (!at_) return std::nullopt;
    return steps_t{*at_};
  }
  std::string key() const override { return at_ ? "D" : "-"; }

private:
  int t_;
  std::optional<std::size_t> at_;
};

class pair_tracker final : public obligation_tracker {
public:
  pair_tracker(const property_automaton& a, int t1, int t2) : a_(&a), t1_(t1), t2_(t2) {}
  std::unique_ptr<obligation_tracker> clone() const override { return std::make_unique<pair_tracker>(*this); }
  void advance(std::size_t step, int id) override {
    if (done_) return;
    if (armed_ && id == t2_) {
      done_ = steps_t{*armed_, step};
    } else if (id == t1_) {
      armed_ = step;
    } else if (a_->tr(id).alpha) {
      armed_.reset();
    }
  }
  std::optional<steps_t> witness() const override { return done_; }
  std::string key() const override { return done_ ? "D" : armed_ ? "A" : "-"; }

private:
  const property_automaton* a_;
  int t1_;
  int t2_;
  std::optional<std::size_t> armed_;
  std::optional<steps_t> done_;
};

// A segment is a maximal run of steps leaving pattern-region states; it is
// closed by a step into a state outside the region.
class k_pattern_tracker final : public obligation_tracker {
public:
  k_pattern_tracker(const property_automaton& a, int n) : a_(&a), n_(n) {}
  std::unique_ptr<obligation_tracker> clone() const override { return std::make_unique<k_pattern_tracker>(*this); }
  void advance(std::size_t step, int id) override {
    if (done_) return;
    const transition& t = a_->tr(id);
    if (!in_pattern_region(*a_, t.source)) return;
    if (!open_) {
      open_ = true;
      start_ = step;
      count_ = 0;
    }
    if (t.alpha && t.loop) count_ = std::min(count_ + 1, n_ + 1);
    last_ = step;
    if (!in_pattern_region(*a_, t.target)) {
      if (count_ == n_) done_ = range();
      open_ = false;
    }
  }
  std::optional<steps_t> witness() const override {
    if (done_) return done_;
    if (open_ && count_ == n_) return range();
    return std::nullopt;
  }
  std::string key() const override {
    if (done_) return "D";
    return open_ ? "S" + std::to_string(count_) : "-";
  }

private:
  steps_t range() const {
    steps_t out;
    for (std::size_t i = start_; i <= last_; ++i) out.push_back(i);
    return out;
  }

  const property_automaton* a_;
  int n_;
  bool open_ = false;
  int count_ = 0;
  std::size_t start_ = 0;
  std::size_t last_ = 0;
  std::optional<steps_t> done_;
};

// Activations are counted from the start of the run: obligation n needs
// the first n activations to each fire a pattern alpha-transition.
class k_scope_tracker final : public obligation_tracker {
public:
  k_scope_tracker(const property_automaton& a, int n, bool open_tail_counts)
    : a_(&a), n_(n), open_tail_counts_(open_tail_counts) {}
  std::unique_ptr<obligation_tracker> clone() const override { return std::make_unique<k_scope_tracker>(*this); }
  void advance(std::size_t step, int id) override {
    if (done_ || broken_) return;
    const transition& t = a_->tr(id);
    last_ = step;
    bool scope_alpha = t.alpha && t.prov == origin::scope;
    if (!active_) {
      if (scope_alpha && in_pattern_region(*a_, t.target)) {
        active_ = true;
        fired_pattern_ = false;
        if (!first_) first_ = step;
      }
      return;
    }
    if (t.alpha && t.prov == origin::pattern) fired_pattern_ = true;
    if (scope_alpha && in_pattern_region(*a_, t.source) && !in_pattern_region(*a_, t.target)) {
      active_ = false;
      if (!fired_pattern_) {
        broken_ = true;
        return;
      }
      if (++completed_ == n_) done_ = range(step);
    }
  }
  std::optional<steps_t> witness() const override {
    if (done_) return done_;
    if (!broken_ && open_tail_counts_ && active_ && fired_pattern_ && completed_ + 1 == n_) return range(last_);
    return std::nullopt;
  }
  std::string key() const override {
    if (done_) return "D";
    if (broken_) return "B";
    return std::to_string(completed_) + (active_ ? (fired_pattern_ ? "+" : "a") : "-");
  }

private:
  steps_t range(std::size_t end) const {
    steps_t out;
    for (std::size_t i = *first_; i <= end; ++i) out.push_back(i);
    return out;
  }

  const property_automaton* a_;
  int n_;
  bool open_tail_counts_;
  bool active_ = false;
  bool fired_pattern_ = false;
  bool broken_ = false;
  int completed_ = 0;
  std::optional<std::size_t> first_;
  std::size_t last_ = 0;
  std::optional<steps_t> done_;
};

std::vector<int> coverable_alpha(const property_automaton& a) {
  auto excluded = uncoverable_transitions(a);
  std::vector<int> out;
  for (const auto& t : a.transitions)
    if (t.alpha && !excluded.contains(t.id)) out.push_back(t.id);
  return out;
}

std::vector<std::string> describe_excluded(const property_automaton& a) {
  std::vector<std::string> out;
  for (int id : uncoverable_transitions(a))
    if (a.tr(id).alpha) out.push_back(a.describe(id));
  return out;
}

std::string pair_id(const property_automaton& a, int t1, int t2) {
  return "(" + a.describe(t1) + ", " + a.describe(t2) + ")";
}

} // namespace

bool has_pattern_loop(const property_automaton& a) {
  return std::any_of(a.transitions.begin(), a.transitions.end(), [](const transition& t) { return t.alpha && t.loop; });
}

std::vector<std::pair<int, int>> alpha_pairs(const property_automaton& a) {
  auto alphas = coverable_alpha(a);
  // sigma-closure of every state
  std::vector<std::set<int>> reach(a.states.size());
  for (const auto& s : a.states) {
    std::vector<int> todo{s.id};
    auto& r = reach[static_cast<std::size_t>(s.id)];
    r.insert(s.id);
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      int next = a.tr(a.sigma_of(x)).target;
      if (r.insert(next).second) todo.push_back(next);
    }
  }
  std::vector<std::pair<int, int>> out;
  for (int t1 : alphas) {
    for (int t2 : alphas) {
      if (t1 == t2) continue;
      if (reach[static_cast<std::size_t>(a.tr(t1).target)].contains(a.tr(t2).source)) out.emplace_back(t1, t2);
    }
  }
  return out;
}

std::vector<obligation_def> obligations_for(const property_automaton& a, criterion c, int k) {
  std::vector<obligation_def> out;
  switch (c) {
  case criterion::alpha:
    for (int t : coverable_alpha(a))
      out.push_back({a.describe(t), "fire " + a.describe(t), std::make_shared<transition_tracker>(t)});
    break;
  case criterion::alpha_pair:
    for (auto [t1, t2] : alpha_pairs(a)) {
      out.push_back({pair_id(a, t1, t2), "fire " + a.describe(t1) + " then " + a.describe(t2) + " with only sigma steps between",
                     std::make_shared<pair_tracker>(a, t1, t2)});
    }
    break;
  case criterion::k_pattern: {
    bool kind_ok = std::holds_alternative<precedes_pattern>(a.prop.pat) ||
                   std::holds_alternative<follows_pattern>(a.prop.pat) ||
                   std::holds_alternative<eventually_pattern>(a.prop.pat);
    if (!kind_ok || !has_pattern_loop(a)) {
      throw criterion_not_applicable("criterion k-pattern is not applicable to " + a.prop.name + ": the '" +
                                     pattern_name(a.prop.pat) + "' pattern has no loop in its pattern part");
    }
    if (k < 0) throw criterion_not_applicable("k-pattern needs k >= 0");
    for (int n = 0; n <= k; ++n) {
      out.push_back({"n=" + std::to_string(n),
                     "pattern segment with exactly " + std::to_string(n) + " loop iteration(s)",
                     std::make_shared<k_pattern_tracker>(a, n)});
    }
    break;
  }
  case criterion::k_scope: {
    bool between = std::holds_alternative<between_scope>(a.prop.scp);
    bool until = std::holds_alternative<after_until_scope>(a.prop.scp);
    if (!between && !until) {
      throw criterion_not_applicable("criterion k-scope is not applicable to " + a.prop.name + ": the '" +
                                     scope_name(a.prop.scp) + "' scope cannot be iterated");
    }
    if (k < 1) throw criterion_not_applicable("k-scope needs k >= 1, got " + std::to_string(k));
    for (int n = 1; n <= k; ++n) {
      out.push_back({"n=" + std::to_string(n),
                     std::to_string(n) + " scope activation(s), each firing a pattern alpha-transition",
                     std::make_shared<k_scope_tracker>(a, n, until)});
    }
    break;
  }
  case criterion::robustness:
    throw criterion_not_applicable("robustness obligations are defined on mutated automata");
  case criterion::tags:
    throw criterion_not_applicable("tag obligations are defined on the model");
  }
  return out;
}

obligation_def robustness_obligation(const mutated_automaton& m) {
  return {m.id, "fire " + m.automaton.describe(m.change.transition) + " with " + to_string(m.change.mutated),
          std::make_shared<transition_tracker>(m.change.transition)};
}

namespace {

obligation evaluate_obligation(const obligation_def& def, const std::vector<automaton_run>& runs) {
  obligation o{def.id, def.description, {}};
  for (const auto& r : runs) {
    auto t = def.prototype->clone();
    for (std::size_t i = 0; i < r.fired.size(); ++i) t->advance(i, r.fired[i]);
    if (auto w = t->witness()) {
      witness wit{r.test_id, {}};
      for (auto s : *w) wit.steps.push_back(s + 1);
      o.witnesses.push_back(std::move(wit));
    }
  }
  return o;
}

void add_run_flags(coverage_report& rep, const std::vector<automaton_run>& runs) {
  for (const auto& r : runs)
    if (!r.reached_final) rep.scope_not_executed.push_back(r.test_id);
}

} // namespace

coverage_report measure(const property_automaton& a, const std::vector<automaton_run>& runs, criterion c, int k) {
  coverage_report rep;
  rep.property = a.prop.name;
  rep.crit = c;
  rep.k = k;
  for (const auto& def : obligations_for(a, c, k)) rep.obligations.push_back(evaluate_obligation(def, runs));
  if (c == criterion::alpha || c == criterion::alpha_pair) rep.excluded = describe_excluded(a);
  add_run_flags(rep, runs);

  if (c == criterion::alpha_pair) {
    auto pairs = alpha_pairs(a);
    std::vector<std::string> alone;
    for (int t : coverable_alpha(a)) {
      bool in_pair = std::any_of(pairs.begin(), pairs.end(), [&](auto p) { return p.first == t || p.second == t; });
      if (!in_pair) alone.push_back(a.describe(t));
    }
    if (alone.empty()) {
      rep.notes.push_back("every coverable alpha-transition occurs in a pair: alpha-pair subsumes alpha-transition here");
    } else {
      std::string list;
      for (const auto& s : alone) list += (list.empty() ? "" : ", ") + s;
      auto alpha = measure(a, runs, criterion::alpha);
      bool witnessed = std::all_of(alpha.obligations.begin(), alpha.obligations.end(), [&](const obligation& o) {
        return o.covered() || std::find(alone.begin(), alone.end(), o.id) == alone.end();
      });
      rep.notes.push_back("alpha-transitions in no pair: " + list + (witnessed ? " (witnessed alone)" : " (not witnessed)"));
    }
  }
  return rep;
}

coverage_report alpha_transition_coverage(const property_automaton& a, const std::vector<automaton_run>& runs) {
  return measure(a, runs, criterion::alpha);
}

coverage_report alpha_pair_coverage(const property_automaton& a, const std::vector<automaton_run>& runs) {
  return measure(a, runs, criterion::alpha_pair);
}

coverage_report k_pattern_coverage(const property_automaton& a, const std::vector<automaton_run>& runs, int k) {
  return measure(a, runs, criterion::k_pattern, k);
}

coverage_report k_scope_coverage(const property_automaton& a, const std::vector<automaton_run>& runs, int k) {
  return measure(a, runs, criterion::k_scope, k);
}

coverage_report robustness_coverage(const std::vector<mutated_automaton>& mutants,
                                     const std::vector<std::vector<automaton_run>>& runs) {
  if (runs.size() != mutants.size()) throw invariant_violation("robustness coverage needs one run list per mutant");
  coverage_report rep;
  rep.crit = criterion::robustness;
  std::set<std::string> props;
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    props.insert(mutants[i].base_property);
    rep.obligations.push_back(evaluate_obligation(robustness_obligation(mutants[i]), runs[i]));
    for (const auto& n : mutants[i].notes) rep.notes.push_back(mutants[i].id + ": " + n);
  }
  for (const auto& p : props) rep.property += (rep.property.empty() ? "" : ",") + p;
  return rep;
}

coverage_report tag_coverage(const model& m, const std::vector<test_case>& suite) {
  coverage_report rep;
  rep.property = m.name;
  rep.crit = criterion::tags;
  for (const auto& tag : m.tags_in_order()) {
    obligation o{tag, "fire " + tag, {}};
    for (const auto& t : suite) {
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (t.steps[i].tags.contains(tag)) {
          o.witnesses.push_back({t.id, {i + 1}});
          break;
        }
      }
    }
    rep.obligations.push_back(std::move(o));
  }
  return rep;
}

std::string format_report(const coverage_report& r) {
  std::string out = r.property + "  " + to_string(r.crit);
  if (r.crit == criterion::k_pattern || r.crit == criterion::k_scope) out += " (k=" + std::to_string(r.k) + ")";
  out += "  " + std::to_string(r.covered_count()) + "/" + std::to_string(r.obligations.size()) + " covered  " +
         (r.satisfied() ? "satisfied" : "NOT satisfied") + "\n";
  std::size_t width = 0;
  for (const auto& o : r.obligations) width = std::max(width, o.id.size());
  for (const auto& o : r.obligations) {
    std::string line = std::string("  [") + (o.covered() ? "x" : " ") + "] " + o.id;
    line += std::string(width - o.id.size() + 2, ' ');
    if (o.covered()) {
      std::string ws;
      for (const auto& w : o.witnesses) {
        std::string steps;
        for (auto s : w.steps) steps += (steps.empty() ? "" : ",") + std::to_string(s);
        ws += (ws.empty() ? "" : " ") + w.test_id + "@" + steps;
      }
      line += ws;
    } else {
      line += "uncovered";
    }
    out += line + "\n";
  }
  for (const auto& e : r.excluded) out += "  excluded: " + e + "\n";
  if (!r.scope_not_executed.empty()) {
    std::string ids;
    for (const auto& t : r.scope_not_executed) ids += (ids.empty() ? "" : ", ") + t;
    out += "  scope never executed (no final state reached): " + ids + "\n";
  }
  for (const auto& n : r.notes) out += "  note: " + n + "\n";
  return out;
}

nlohmann::json to_json(const coverage_report& r) {
  nlohmann::json obligations = nlohmann::json::array();
  for (const auto& o : r.obligations) {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : o.witnesses) ws.push_back({{"test", w.test_id}, {"steps", w.steps}});
    obligations.push_back({{"id", o.id},
                           {"description", o.description},
                           {"status", o.covered() ? "covered" : "uncovered"},
                           {"witnesses", ws}});
  }
  nlohmann::json j = {{"property", r.property},
                      {"criterion", to_string(r.crit)},
                      {"covered", r.covered_count()},
                      {"total", r.obligations.size()},
                      {"satisfied", r.satisfied()},
                      {"obligations", obligations},
                      {"excluded", r.excluded},
                      {"scope_not_executed", r.scope_not_executed},
                      {"notes", r.notes}};
  if (r.crit == criterion::k_pattern || r.crit == criterion::k_scope) j["k"] = r.k;
  return j;
}

} // namespace propcov

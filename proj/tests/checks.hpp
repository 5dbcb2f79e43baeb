#pragma once

#include "fixture.hpp"

#include "propcov/coverage.hpp"
#include "propcov/matcher.hpp"
#include "propcov/mutation.hpp"

#include <deque>
#include <random>
#include <unordered_set>

namespace propcov::testing {

struct check_result {
  bool ok = true;
  std::size_t cases = 0;
  /// Cases where the checked implication was not vacuous.
  std::size_t hits = 0;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

/// Every automaton of the fixture and every robustness mutant.
inline std::vector<property_automaton> automata_and_mutants(const ecinema& fx) {
  std::vector<property_automaton> out = fx.automata;
  for (const auto& a : fx.automata) {
    if (!a.has_rejection()) continue;
    for (auto& m : mutate_automaton(a)) out.push_back(std::move(m.automaton));
  }
  return out;
}

/// For each (reachable product state, step) pair, the enabled transitions
/// after preference resolution lead to exactly one target, and the matcher
/// fires one of them.
inline check_result exactly_one_transition(const ecinema& fx, int depth) {
  check_result res;
  const model& m = *fx.m;
  auto automata = automata_and_mutants(fx);
  for (const auto& a : automata) {
    std::deque<std::tuple<model_state, int, int>> queue{{m.initial, a.initial, 0}};
    std::unordered_set<std::string> seen;
    while (!queue.empty()) {
      auto [ms, q, d] = queue.front();
      queue.pop_front();
      std::string key = std::to_string(q) + "|" + m.format_state(ms);
      if (!seen.insert(key).second) continue;
      for (int o = 0; o < static_cast<int>(m.operations.size()); ++o) {
        for (const auto& in : enumerate_inputs(m, o)) {
          step s = execute(m, ms, o, in);
          ++res.cases;
          std::vector<int> enabled;
          for (int id : a.outgoing(q))
            if (a.tr(id).alpha && match_step(s, a.tr(id).quad)) enabled.push_back(id);
          std::vector<int> preferred;
          for (int id : enabled)
            if (a.tr(id).preferred) preferred.push_back(id);
          std::set<int> targets;
          for (int id : preferred.empty() ? enabled : preferred) targets.insert(a.tr(id).target);
          if (enabled.empty()) targets.insert(a.tr(a.sigma_of(q)).target);
          int fired = -1;
          try {
            fired = fire(a, q, s);
          } catch (const ambiguous_property& e) {
            res.fail(e.what());
            continue;
          }
          if (targets.size() != 1 || !targets.contains(a.tr(fired).target) || a.tr(fired).source != q) {
            res.fail(a.prop.name + ": " + std::to_string(targets.size()) + " targets from state " +
                     a.st(q).label + " on " + s.operation);
          }
          if (d + 1 < depth) queue.emplace_back(s.after, a.tr(fired).target, d + 1);
        }
      }
    }
  }
  return res;
}

/// Independent coverable set: states that can avoid the rejection state
/// forever, found by pruning dead ends from the graph without it.
inline std::set<int> coverable_alpha_oracle(const property_automaton& a) {
  std::set<int> alive;
  for (const auto& s : a.states)
    if (!s.rejection) alive.insert(s.id);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      bool has_exit = false;
      for (int id : a.outgoing(*it)) has_exit = has_exit || alive.contains(a.tr(id).target);
      if (!has_exit) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::set<int> out;
  for (const auto& t : a.transitions)
    if (t.alpha && (alive.contains(t.target) || (a.has_rejection() && t.source == a.rejection))) out.insert(t.id);
  return out;
}

inline std::set<std::pair<int, int>> pair_oracle(const property_automaton& a) {
  auto coverable = coverable_alpha_oracle(a);
  std::set<std::pair<int, int>> out;
  for (int t1 : coverable) {
    std::set<int> reach{a.tr(t1).target};
    std::vector<int> stack{a.tr(t1).target};
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (const auto& t : a.transitions)
        if (!t.alpha && t.source == q && reach.insert(t.target).second) stack.push_back(t.target);
    }
    for (int t2 : coverable)
      if (t1 != t2 && reach.contains(a.tr(t2).source)) out.emplace(t1, t2);
  }
  return out;
}

inline check_result pair_oracle_equality(const std::vector<property_automaton>& automata) {
  check_result res;
  for (const auto& a : automata) {
    ++res.cases;
    auto expected = pair_oracle(a);
    auto got = alpha_pairs(a);
    std::set<std::pair<int, int>> got_set(got.begin(), got.end());
    if (got_set != expected || got.size() != got_set.size()) {
      res.fail(a.prop.name + ": " + std::to_string(got.size()) + " pairs, oracle " + std::to_string(expected.size()));
      continue;
    }
    std::set<std::string> ids;
    for (auto [t1, t2] : expected) ids.insert("(" + a.describe(t1) + ", " + a.describe(t2) + ")");
    std::set<std::string> reported;
    for (const auto& o : alpha_pair_coverage(a, {}).obligations) reported.insert(o.id);
    if (ids != reported) res.fail(a.prop.name + ": pair obligations differ from the oracle");
  }
  return res;
}

/// Random test case: a walk of `length` calls with uniformly drawn inputs.
inline test_case random_test(const model& m, std::mt19937& rng, std::size_t length, const std::string& id) {
  std::vector<std::pair<int, valuation>> calls;
  for (std::size_t i = 0; i < length; ++i) {
    int o = static_cast<int>(rng() % m.operations.size());
    auto inputs = enumerate_inputs(m, o);
    calls.emplace_back(o, inputs[rng() % inputs.size()]);
  }
  return animate(m, id, "", calls);
}

/// Random quadruplet over the fixture, built from concrete syntax. Two
/// thirds of the atoms and tags are drawn among those that hold on `s`, so
/// that a fair share of quadruplets match it.
inline event_quad random_quad(const model& m, std::mt19937& rng, const step& s) {
  static const std::vector<std::string> state_atoms{
    "current_user = none",        "current_user != REGISTERED_USER", "basket[TITLE1] > 0",
    "available_tickets[TITLE2] >= 1", "basket[TITLE2] = 0",        "current_user = REGISTERED_USER",
    "available_tickets[TITLE1] < 1"};
  static const std::vector<std::string> param_atoms{"in_title = TITLE1", "in_title != TITLE2"};
  auto pick = [&](std::size_t n) { return rng() % n; };
  auto pred = [&](const std::string& atom) {
    auto p = parse_property("never isCalled(buyTicket, pre: " + atom + ")", m);
    return normalize_event(std::get<never_pattern>(p.pat).event).pre;
  };
  bool buy = pick(2) == 0;
  bool on_buy = s.operation == "buyTicket";
  auto conj = [&](const model_state& st) {
    std::size_t n = pick(4);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
      bool param = buy && pick(3) == 0;
      const auto& pool = param ? param_atoms : state_atoms;
      std::vector<std::string> holding;
      if (!param || on_buy) {
        for (const auto& atom : pool)
          if (evaluate(pred(atom), st, param ? s.inputs : valuation{})) holding.push_back(atom);
      }
      const auto& from = (pick(3) != 0 && !holding.empty()) ? holding : pool;
      out += (out.empty() ? "" : " and ") + from[pick(from.size())];
    }
    return out;
  };
  std::string pre = conj(s.before), post = conj(s.after);
  std::string tags;
  if (pick(2) || (!buy && pre.empty() && post.empty())) {
    auto all = m.all_tags();
    std::vector<std::string> v(all.begin(), all.end());
    std::size_t n = 1 + pick(3);
    for (std::size_t i = 0; i < n; ++i) {
      std::string tag = pick(3) != 0 ? *std::next(s.tags.begin(), static_cast<long>(pick(s.tags.size())))
                                     : v[pick(v.size())];
      tags += (tags.empty() ? "" : ", ") + tag;
    }
    tags = "{" + tags + "}";
  }
  std::string text = std::string("isCalled(") + (buy ? "buyTicket" : "_") + ", " + (pre.empty() ? "_" : pre) + ", " +
                     (post.empty() ? "_" : post) + (tags.empty() ? "" : ", " + tags) + ")";
  auto p = parse_property("never " + text, m);
  return normalize_event(std::get<never_pattern>(p.pat).event);
}

/// A step matching a quadruplet also matches each of its mutants.
inline check_result weakening_soundness(const model& m, std::size_t n, unsigned seed) {
  check_result res;
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    ++res.cases;
    auto t = random_test(m, rng, 1 + rng() % 6, "W");
    const step& s = t.steps.back();
    auto q = random_quad(m, rng, s);
    std::vector<event_quad> mutants = mutate_weaken(q);
    if (auto x = mutate_post_tag_removal(q)) mutants.push_back(*x);
    if (auto x = mutate_pre_removal(q)) mutants.push_back(*x);
    if (!match_step(s, q)) continue;
    ++res.hits;
    for (const auto& w : mutants)
      if (!match_step(s, w)) res.fail(to_string(q) + " matches but " + to_string(w) + " does not");
  }
  return res;
}

/// Extending a suite never uncovers an obligation.
inline check_result coverage_monotonicity(const ecinema& fx, std::size_t trials, unsigned seed) {
  check_result res;
  std::mt19937 rng(seed);
  const model& m = *fx.m;
  struct target {
    const property_automaton* a;
    criterion c;
    int k;
  };
  std::vector<target> targets;
  for (const auto& a : fx.automata) {
    for (auto c : {criterion::alpha, criterion::alpha_pair, criterion::k_pattern, criterion::k_scope}) {
      for (int k = 1; k <= 3; ++k) {
        try {
          obligations_for(a, c, k);
          targets.push_back({&a, c, k});
        } catch (const criterion_not_applicable&) {
        }
        if (c == criterion::alpha || c == criterion::alpha_pair) break;
      }
    }
  }
  std::vector<std::vector<mutated_automaton>> mutants;
  for (const auto& a : fx.automata)
    if (a.has_rejection()) mutants.push_back(mutate_automaton(a));

  auto covered_ids = [](const coverage_report& r) {
    std::set<std::string> out;
    for (const auto& o : r.obligations)
      if (o.covered()) out.insert(o.id);
    return out;
  };
  for (std::size_t i = 0; i < trials; ++i) {
    ++res.cases;
    std::vector<test_case> suite;
    std::size_t size = rng() % 4;
    for (std::size_t j = 0; j < size; ++j) suite.push_back(random_test(m, rng, 1 + rng() % 10, "S" + std::to_string(j)));
    std::vector<test_case> bigger = suite;
    std::size_t extra = 1 + rng() % 3;
    for (std::size_t j = 0; j < extra; ++j)
      bigger.insert(bigger.begin() + static_cast<long>(rng() % (bigger.size() + 1)),
                    random_test(m, rng, 1 + rng() % 10, "X" + std::to_string(j)));

    if (i % 5 == 4) {
      const auto& ms = mutants[rng() % mutants.size()];
      std::vector<std::vector<automaton_run>> small_runs, big_runs;
      for (const auto& mu : ms) {
        small_runs.push_back(run_suite(mu.automaton, suite));
        big_runs.push_back(run_suite(mu.automaton, bigger));
      }
      auto before = covered_ids(robustness_coverage(ms, small_runs));
      auto after = covered_ids(robustness_coverage(ms, big_runs));
      if (!std::includes(after.begin(), after.end(), before.begin(), before.end()))
        res.fail("robustness coverage shrank for " + ms.front().base_property);
      continue;
    }
    const auto& t = targets[rng() % targets.size()];
    auto before = covered_ids(measure(*t.a, run_suite(*t.a, suite), t.c, t.k));
    auto after = covered_ids(measure(*t.a, run_suite(*t.a, bigger), t.c, t.k));
    if (!std::includes(after.begin(), after.end(), before.begin(), before.end()))
      res.fail(t.a->prop.name + " " + to_string(t.c) + ": coverage shrank");
  }
  return res;
}

} // namespace propcov::testing

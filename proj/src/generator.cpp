#include "propcov/generator.hpp"

#include "propcov/matcher.hpp"
#include "propcov/suite.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace propcov {

namespace {

using call_path = std::vector<std::pair<int, valuation>>;

/// Search-side view of one obligation, advanced step by step.
class probe {
public:
  virtual ~probe() = default;
  virtual std::unique_ptr<probe> clone() const = 0;
  virtual void advance(const step& s) = 0;
  virtual bool witnessed() const = 0;
  /// Witnessed and, when required, a final state was visited.
  virtual bool complete() const = 0;
  virtual std::string key() const = 0;
};

class automaton_probe final : public probe {
public:
  automaton_probe(const property_automaton& target, const property_automaton* base,
                  std::unique_ptr<obligation_tracker> tracker)
    : target_(&target), base_(base), tracker_(std::move(tracker)), ts_(target.initial),
      bs_(base ? base->initial : 0), final_seen_(base && base->st(bs_).final_) {}

  automaton_probe(const automaton_probe& o)
    : target_(o.target_), base_(o.base_), tracker_(o.tracker_->clone()), ts_(o.ts_), bs_(o.bs_),
      final_seen_(o.final_seen_), steps_(o.steps_) {}

  std::unique_ptr<probe> clone() const override { return std::make_unique<automaton_probe>(*this); }

  void advance(const step& s) override {
    int id = fire(*target_, ts_, s);
    tracker_->advance(steps_++, id);
    ts_ = target_->tr(id).target;
    if (base_) {
      bs_ = base_ == target_ ? ts_ : base_->tr(fire(*base_, bs_, s)).target;
      final_seen_ = final_seen_ || base_->st(bs_).final_;
    }
  }
  bool witnessed() const override { return tracker_->witness().has_value(); }
  bool complete() const override { return witnessed() && (!base_ || final_seen_); }
  std::string key() const override {
    return std::to_string(ts_) + "/" + std::to_string(bs_) + (final_seen_ ? "F" : "-") + tracker_->key();
  }

private:
  const property_automaton* target_;
  const property_automaton* base_;
  std::unique_ptr<obligation_tracker> tracker_;
  int ts_;
  int bs_;
  bool final_seen_;
  std::size_t steps_ = 0;
};

class tag_probe final : public probe {
public:
  explicit tag_probe(std::string tag) : tag_(std::move(tag)) {}
  std::unique_ptr<probe> clone() const override { return std::make_unique<tag_probe>(*this); }
  void advance(const step& s) override { found_ = found_ || s.tags.contains(tag_); }
  bool witnessed() const override { return found_; }
  bool complete() const override { return found_; }
  std::string key() const override { return found_ ? "D" : "-"; }

private:
  std::string tag_;
  bool found_ = false;
};

struct search_outcome {
  std::optional<call_path> path;
  bool reached_goal = false;  // false: fallback witness without a final state
};

struct node {
  model_state state;
  int parent = -1;
  int op = -1;
  valuation inputs;
  std::unique_ptr<probe> p;
};

call_path path_to(const std::vector<node>& nodes, int i) {
  call_path out;
  for (; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
    out.emplace_back(nodes[static_cast<std::size_t>(i)].op, nodes[static_cast<std::size_t>(i)].inputs);
  return {out.rbegin(), out.rend()};
}

search_outcome search(const model& m, const probe& root, const generation_options& opt) {
  std::vector<std::vector<valuation>> inputs;
  for (int o = 0; o < static_cast<int>(m.operations.size()); ++o) {
    auto all = enumerate_inputs(m, o);
    if (opt.input_cap > 0 && all.size() > opt.input_cap) all.resize(opt.input_cap);
    inputs.push_back(std::move(all));
  }

  std::vector<node> nodes;
  nodes.push_back(node{m.initial, -1, -1, {}, root.clone()});
  std::unordered_set<std::string> seen;
  auto key_of = [](const node& n) {
    std::string k;
    for (int v : n.state.slots) k += std::to_string(v) + ",";
    return k + n.p->key();
  };
  seen.insert(key_of(nodes.front()));

  std::optional<int> fallback;
  std::size_t begin = 0;
  for (int depth = 0; depth < opt.depth; ++depth) {
    std::size_t end = nodes.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int o = 0; o < static_cast<int>(m.operations.size()); ++o) {
        for (const auto& in : inputs[static_cast<std::size_t>(o)]) {
          step s = execute(m, nodes[i].state, o, in);
          auto p = nodes[i].p->clone();
          p->advance(s);
          node next{std::move(s.after), static_cast<int>(i), o, in, std::move(p)};
          if (!seen.insert(key_of(next)).second) continue;
          nodes.push_back(std::move(next));
          const node& added = nodes.back();
          int idx = static_cast<int>(nodes.size()) - 1;
          if (added.p->complete()) return {path_to(nodes, idx), true};
          if (!fallback && added.p->witnessed()) fallback = idx;
        }
      }
    }
    begin = end;
    if (begin == nodes.size()) break;
  }
  if (fallback) return {path_to(nodes, *fallback), false};
  return {};
}

struct suite_builder {
  std::string prefix;
  std::vector<call_path> paths;
  std::vector<std::string> notes;
  /// Test index claimed for each obligation id.
  std::vector<std::pair<std::string, std::size_t>> claims;

  std::size_t add(const call_path& p, const std::string& obligation) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (paths[i] == p) {
        notes[i] += "; " + obligation;
        claims.emplace_back(obligation, i);
        return i;
      }
    }
    paths.push_back(p);
    notes.push_back(obligation);
    claims.emplace_back(obligation, paths.size() - 1);
    return paths.size() - 1;
  }

  std::string id(std::size_t i) const {
    std::string n = std::to_string(i + 1);
    if (n.size() < 2) n = "0" + n;
    return prefix + "_" + n;
  }

  std::vector<test_case> build(const model& m) const {
    std::vector<test_case> out;
    for (std::size_t i = 0; i < paths.size(); ++i) out.push_back(animate(m, id(i), notes[i], paths[i]));
    return out;
  }

  void verify(const coverage_report& r) const {
    for (const auto& [obligation, test] : claims) {
      auto it = std::find_if(r.obligations.begin(), r.obligations.end(),
                             [&](const struct obligation& o) { return o.id == obligation; });
      bool ok = it != r.obligations.end() &&
                std::any_of(it->witnesses.begin(), it->witnesses.end(),
                            [&](const witness& w) { return w.test_id == id(test); });
      if (!ok) {
        throw invariant_violation("generated test " + id(test) + " does not witness " + obligation +
                                  " when measured");
      }
    }
  }
};

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

void record(generation_result& res, suite_builder& b, const search_outcome& o, const std::string& obligation,
            const std::string& property, int depth) {
  if (!o.path) {
    res.unreachable.push_back(obligation + ": uncovered within depth " + std::to_string(depth));
    return;
  }
  std::size_t i = b.add(*o.path, obligation);
  if (!o.reached_goal) {
    res.notes.push_back(b.id(i) + " witnesses " + obligation + " without visiting a final state of " + property +
                        " within depth " + std::to_string(depth));
  }
}

} // namespace

generation_result generate_for_criterion(const model& m, const property_automaton& a, criterion c, int k,
                                         const generation_options& opt) {
  generation_result res;
  suite_builder b{sanitize(a.prop.name) + "_" + sanitize(to_string(c)), {}, {}, {}};
  for (const auto& def : obligations_for(a, c, k)) {
    automaton_probe root(a, &a, def.prototype->clone());
    record(res, b, search(m, root, opt), def.id, a.prop.name, opt.depth);
  }
  res.suite = b.build(m);
  res.report = measure(a, run_suite(a, res.suite), c, k);
  b.verify(res.report);
  return res;
}

generation_result generate_robustness(const model& m, const property_automaton& a,
                                      const std::vector<mutated_automaton>& mutants,
                                      const generation_options& opt) {
  generation_result res;
  suite_builder b{sanitize(a.prop.name) + "_robustness", {}, {}, {}};
  for (const auto& mut : mutants) {
    auto def = robustness_obligation(mut);
    automaton_probe root(mut.automaton, &a, def.prototype->clone());
    record(res, b, search(m, root, opt), def.id, a.prop.name, opt.depth);
  }
  res.suite = b.build(m);
  std::vector<std::vector<automaton_run>> runs;
  for (const auto& mut : mutants) runs.push_back(run_suite(mut.automaton, res.suite));
  res.report = robustness_coverage(mutants, runs);
  b.verify(res.report);
  return res;
}

generation_result generate_tag_suite(const model& m, const generation_options& opt) {
  generation_result res;
  suite_builder b{"F", {}, {}, {}};
  for (const auto& tag : m.tags_in_order()) record(res, b, search(m, tag_probe(tag), opt), tag, m.name, opt.depth);
  res.suite = b.build(m);
  res.report = tag_coverage(m, res.suite);
  b.verify(res.report);
  return res;
}

} // namespace propcov

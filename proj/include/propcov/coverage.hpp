#pragma once

#include "propcov/automaton.hpp"
#include "propcov/matcher.hpp"
#include "propcov/mutation.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace propcov {

/// `tags` is functional coverage of every behavior tag of the model.
enum class criterion { alpha, alpha_pair, k_pattern, k_scope, robustness, tags };

const char* to_string(criterion c);
std::optional<criterion> parse_criterion(std::string_view name);

/// Incremental recogniser for one obligation, fed the transitions of a run
/// one step at a time.
class obligation_tracker {
public:
  virtual ~obligation_tracker() = default;
  virtual std::unique_ptr<obligation_tracker> clone() const = 0;
  /// `step` is the 0-based index of the step that fired `transition`.
  virtual void advance(std::size_t step, int transition) = 0;
  /// Witnessing steps (0-based) if the run ended after the last advance.
  virtual std::optional<std::vector<std::size_t>> witness() const = 0;
  /// Trackers with equal keys accept the same continuations.
  virtual std::string key() const = 0;
};

struct obligation_def {
  std::string id;
  std::string description;
  std::shared_ptr<const obligation_tracker> prototype;
};

struct witness {
  std::string test_id;
  std::vector<std::size_t> steps;  // 1-based
};

struct obligation {
  std::string id;
  std::string description;
  std::vector<witness> witnesses;
  bool covered() const { return !witnesses.empty(); }
};

struct coverage_report {
  std::string property;
  criterion crit = criterion::alpha;
  int k = 0;
  std::vector<obligation> obligations;
  /// Coverable-set exclusions (alpha and alpha-pair) or inapplicable
  /// mutation rules (robustness).
  std::vector<std::string> excluded;
  /// Tests whose run never visits a final state.
  std::vector<std::string> scope_not_executed;
  std::vector<std::string> notes;

  std::size_t covered_count() const;
  bool satisfied() const { return covered_count() == obligations.size(); }
};

/// Obligations of `c` on `a`. Trackers keep a pointer to `a`. Throws
/// criterion_not_applicable for k-pattern on patterns without a loop,
/// k-scope outside between/after-until scopes or with k < 1, and for
/// robustness and tags, whose obligations are not on `a`.
std::vector<obligation_def> obligations_for(const property_automaton& a, criterion c, int k = 0);

/// One obligation on the mutated transition of `m`.
obligation_def robustness_obligation(const mutated_automaton& m);

/// Ordered pairs (t1, t2), t1 != t2, of coverable alpha-transitions where
/// the target of t1 reaches the source of t2 through sigma-rest
/// transitions only.
std::vector<std::pair<int, int>> alpha_pairs(const property_automaton& a);

/// True when some alpha-transition loops inside the pattern part, which is
/// what makes k-pattern applicable.
bool has_pattern_loop(const property_automaton& a);

coverage_report measure(const property_automaton& a, const std::vector<automaton_run>& runs, criterion c, int k = 0);

coverage_report alpha_transition_coverage(const property_automaton& a, const std::vector<automaton_run>& runs);
coverage_report alpha_pair_coverage(const property_automaton& a, const std::vector<automaton_run>& runs);
coverage_report k_pattern_coverage(const property_automaton& a, const std::vector<automaton_run>& runs, int k);
coverage_report k_scope_coverage(const property_automaton& a, const std::vector<automaton_run>& runs, int k);

/// `runs[i]` are the runs of the suite on `mutants[i]`.
coverage_report robustness_coverage(const std::vector<mutated_automaton>& mutants,
                                     const std::vector<std::vector<automaton_run>>& runs);

/// One obligation per behavior tag of `m`, covered by any step firing it.
coverage_report tag_coverage(const model& m, const std::vector<test_case>& suite);

std::string format_report(const coverage_report& r);
nlohmann::json to_json(const coverage_report& r);

} // namespace propcov

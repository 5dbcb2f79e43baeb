#include "propcov/model_mutator.hpp"

#include "lexer.hpp"
#include "propcov/matcher.hpp"
#include "propcov/suite.hpp"

#include <algorithm>
#include <cstdio>

namespace propcov {

const char* to_string(model_operator op) {
  switch (op) {
  case model_operator::ssor: return "SSOR";
  case model_operator::sno: return "SNO";
  case model_operator::saf: return "SAF";
  case model_operator::ad: return "AD";
  }
  return "?";
}

std::optional<model_operator> parse_model_operator(std::string_view name) {
  for (auto op : all_model_operators())
    if (detail::iequals(name, to_string(op))) return op;
  return std::nullopt;
}

const std::set<model_operator>& all_model_operators() {
  static const std::set<model_operator> all{model_operator::ssor, model_operator::sno, model_operator::saf,
                                            model_operator::ad};
  return all;
}

const char* to_string(verdict v) {
  switch (v) {
  case verdict::c_ne: return "C-NE";
  case verdict::nc_na: return "NC-NA";
  case verdict::nc_e: return "NC-E";
  case verdict::c_a: return "C-A";
  case verdict::stillborn: return "stillborn";
  }
  return "?";
}

namespace {

bool is_atomic_condition(const expr_node& n) {
  if (is_comparison(n.op)) return true;
  return n.ty.is_bool() && (n.op == expr_op::var || n.op == expr_op::array_cell || n.op == expr_op::param);
}

std::vector<expr_op> ssor_alternatives(const expr_node& n) {
  if (!is_comparison(n.op)) return {};
  if (!n.args.front()->ty.is_int()) {
    if (n.op == expr_op::eq) return {expr_op::ne};
    if (n.op == expr_op::ne) return {expr_op::eq};
    return {};
  }
  std::vector<expr_op> out;
  for (auto op : {expr_op::eq, expr_op::ne, expr_op::lt, expr_op::le, expr_op::gt, expr_op::ge})
    if (op != n.op) out.push_back(op);
  return out;
}

class mutant_factory {
public:
  mutant_factory(const model& m, std::vector<model_mutant>& out) : m_(m), out_(out) {}

  template <typename Edit>
  void emit(model_operator op, int o, int b, std::string location, std::string description, Edit edit) {
    auto copy = std::make_shared<model>(m_);
    edit(copy->operations[static_cast<std::size_t>(o)].behaviors[static_cast<std::size_t>(b)]);
    model_mutant mut;
    const operation& oper = m_.op(o);
    char seq[16];
    std::snprintf(seq, sizeof seq, "%03zu", ++count_[static_cast<std::size_t>(op)]);
    mut.id = std::string(to_string(op)) + "-" + seq;
    mut.op = op;
    mut.operation = oper.name;
    mut.behavior = b;
    mut.location = std::move(location);
    mut.description = oper.name + " " + *oper.behaviors[static_cast<std::size_t>(b)].tags.begin() + " " +
                      mut.location + ": " + description;
    mut.mutated = std::move(copy);
    out_.push_back(std::move(mut));
  }

private:
  const model& m_;
  std::vector<model_mutant>& out_;
  std::array<std::size_t, 4> count_{};
};

std::string assignment_text(const model& m, const assignment& a) {
  std::string target = a.var >= 0 ? m.vars[static_cast<std::size_t>(a.var)].name
                                   : m.arrays[static_cast<std::size_t>(a.array)].name + "[" + to_string(a.index) + "]";
  return target + " := " + to_string(a.value);
}

} // namespace

std::vector<model_mutant> generate_mutants(const model& m, const std::set<model_operator>& ops) {
  std::vector<model_mutant> out;
  mutant_factory f(m, out);
  for (auto op : ops) {
    for (int o = 0; o < static_cast<int>(m.operations.size()); ++o) {
      const auto& behaviors = m.op(o).behaviors;
      for (int b = 0; b < static_cast<int>(behaviors.size()); ++b) {
        const behavior& beh = behaviors[static_cast<std::size_t>(b)];
        const std::string guard = to_string(beh.guard);
        switch (op) {
        case model_operator::ssor:
        case model_operator::sno: {
          auto nodes = preorder(beh.guard);
          for (std::size_t i = 0; i < nodes.size(); ++i) {
            const expr_node& n = *nodes[i];
            std::vector<expr> replacements;
            if (op == model_operator::ssor) {
              for (auto alt : ssor_alternatives(n)) {
                auto copy = std::make_shared<expr_node>(n);
                copy->op = alt;
                replacements.push_back(copy);
              }
            } else if (is_atomic_condition(n)) {
              replacements.push_back(make_not(std::make_shared<expr_node>(n)));
            }
            for (const auto& r : replacements) {
              expr mutated = replace_at(beh.guard, i, r);
              f.emit(op, o, b, "guard", guard + " -> " + to_string(mutated),
                     [&](behavior& target) { target.guard = mutated; });
            }
          }
          break;
        }
        case model_operator::saf:
          f.emit(op, o, b, "guard", guard + " -> false", [](behavior& target) { target.guard = make_bool(false); });
          break;
        case model_operator::ad:
          for (std::size_t e = 0; e < beh.effects.size(); ++e) {
            f.emit(op, o, b, "effect " + std::to_string(e + 1), "delete " + assignment_text(m, beh.effects[e]),
                   [e](behavior& target) { target.effects.erase(target.effects.begin() + static_cast<long>(e)); });
          }
          break;
        }
      }
    }
  }
  return out;
}

mutant_result classify_mutant(const model_mutant& mut, const std::vector<test_case>& suite,
                              const std::vector<property_automaton>& automata) {
  mutant_result r;
  r.mutant_id = mut.id;
  r.op = mut.op;
  bool conform = true;
  std::set<std::string> violated;
  for (const auto& expected : suite) {
    test_case actual;
    try {
      actual = reanimate(*mut.mutated, expected);
    } catch (const model_defect& d) {
      r.v = verdict::stillborn;
      r.detail = "test " + expected.id + ": " + d.what();
      r.violated.clear();
      return r;
    }
    for (std::size_t i = 0; i < actual.steps.size() && conform; ++i) {
      const step& a = actual.steps[i];
      const step& e = expected.steps[i];
      if (a.tags != e.tags || a.message != e.message) {
        conform = false;
        r.detail = expected.id + "@" + std::to_string(i + 1);
      }
    }
    for (const auto& aut : automata)
      if (run_test_case(aut, actual).reached_rejection) violated.insert(aut.prop.name);
  }
  r.violated.assign(violated.begin(), violated.end());
  bool error = !violated.empty();
  r.v = conform ? (error ? verdict::c_a : verdict::c_ne) : (error ? verdict::nc_e : verdict::nc_na);
  return r;
}

std::array<std::size_t, 4> experiment_report::row(model_operator op) const {
  std::array<std::size_t, 4> out{};
  for (const auto& r : results)
    if (r.op == op && r.v != verdict::stillborn) ++out[static_cast<std::size_t>(r.v)];
  return out;
}

std::size_t experiment_report::stillborn(model_operator op) const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [&](const mutant_result& r) {
    return r.op == op && r.v == verdict::stillborn;
  }));
}

experiment_report run_experiment(const std::vector<model_mutant>& mutants, const std::vector<test_case>& suite,
                                 const std::vector<property_automaton>& automata) {
  experiment_report rep;
  for (const auto& m : mutants) rep.results.push_back(classify_mutant(m, suite, automata));
  return rep;
}

std::string format_table(const experiment_report& r, const std::set<model_operator>& ops) {
  char line[128];
  std::string out;
  std::snprintf(line, sizeof line, "%-6s %6s %6s %6s %6s %6s %10s\n", "", "C-NE", "NC-NA", "NC-E", "C-A", "total",
                "stillborn");
  out += line;
  for (auto op : ops) {
    auto row = r.row(op);
    std::size_t total = row[0] + row[1] + row[2] + row[3];
    std::snprintf(line, sizeof line, "%-6s %6zu %6zu %6zu %6zu %6zu %10zu\n", to_string(op), row[0], row[1], row[2],
                  row[3], total, r.stillborn(op));
    out += line;
  }
  return out;
}

std::string to_csv(const experiment_report& r, const std::set<model_operator>& ops) {
  std::string out = "operator,C-NE,NC-NA,NC-E,C-A,total,stillborn\n";
  for (auto op : ops) {
    auto row = r.row(op);
    std::size_t total = row[0] + row[1] + row[2] + row[3];
    out += std::string(to_string(op)) + "," + std::to_string(row[0]) + "," + std::to_string(row[1]) + "," +
           std::to_string(row[2]) + "," + std::to_string(row[3]) + "," + std::to_string(total) + "," +
           std::to_string(r.stillborn(op)) + "\n";
  }
  return out;
}

} // namespace propcov

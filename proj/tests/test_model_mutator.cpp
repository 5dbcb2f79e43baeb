#include "fixture.hpp"

#include "propcov/model_mutator.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace propcov;
using namespace propcov::testing;

namespace {

std::size_t count_op(const std::vector<model_mutant>& ms, model_operator op) {
  return static_cast<std::size_t>(std::count_if(ms.begin(), ms.end(), [&](const model_mutant& m) { return m.op == op; }));
}

const model_mutant& by_description(const std::vector<model_mutant>& ms, const std::string& needle) {
  for (const auto& m : ms)
    if (m.description.find(needle) != std::string::npos) return m;
  throw std::out_of_range(needle);
}

/// Mutation sites counted straight off the guard trees.
std::array<std::size_t, 4> expected_counts(const model& m) {
  std::array<std::size_t, 4> n{};
  for (const auto& op : m.operations) {
    for (const auto& b : op.behaviors) {
      ++n[2];
      n[3] += b.effects.size();
      std::function<void(const expr_node&)> walk = [&](const expr_node& e) {
        if (is_comparison(e.op)) {
          ++n[1];
          bool relational = e.args.front()->ty.is_int();
          n[0] += relational ? 5 : (e.op == expr_op::eq || e.op == expr_op::ne ? 1 : 0);
        } else if (e.ty.is_bool() && (e.op == expr_op::var || e.op == expr_op::param || e.op == expr_op::array_cell)) {
          ++n[1];
        }
        for (const auto& c : e.args) walk(*c);
      };
      walk(*b.guard);
    }
  }
  return n;
}

} // namespace

TEST(ModelMutator, OperatorNames) {
  EXPECT_EQ(parse_model_operator("ssor"), model_operator::ssor);
  EXPECT_EQ(parse_model_operator("AD"), model_operator::ad);
  EXPECT_FALSE(parse_model_operator("ROR"));
  EXPECT_STREQ(to_string(verdict::nc_e), "NC-E");
}

TEST(ModelMutator, MutantCountsMatchSites) {
  auto fx = ecinema::shared();
  auto ms = generate_mutants(*fx->m, all_model_operators());
  auto n = expected_counts(*fx->m);
  EXPECT_EQ(count_op(ms, model_operator::ssor), n[0]);
  EXPECT_EQ(count_op(ms, model_operator::sno), n[1]);
  EXPECT_EQ(count_op(ms, model_operator::saf), n[2]);
  EXPECT_EQ(count_op(ms, model_operator::ad), n[3]);
  EXPECT_EQ(n, (std::array<std::size_t, 4>{28, 12, 17, 10}));
  EXPECT_EQ(ms.front().id, "SSOR-001");
}

TEST(ModelMutator, MutantsLeaveTheOriginalAlone) {
  auto fx = ecinema::shared();
  std::string before = write_model(*fx->m);
  auto ms = generate_mutants(*fx->m, all_model_operators());
  EXPECT_EQ(write_model(*fx->m), before);
  for (const auto& m : ms) EXPECT_NE(write_model(*m.mutated), before) << m.id;
}

TEST(ModelMutator, SsorOnRelationalAndEnumOperands) {
  auto fx = ecinema::shared();
  auto ms = generate_mutants(*fx->m, {model_operator::ssor});
  EXPECT_NO_THROW(by_description(ms, "available_tickets[in_title] = 0 -> available_tickets[in_title] <= 0"));
  EXPECT_NO_THROW(by_description(ms, "current_user != none -> current_user = none"));
  EXPECT_THROW(by_description(ms, "current_user < none"), std::out_of_range);
}

TEST(ModelMutator, DeletedLogoutEffect) {
  auto fx = ecinema::shared();
  auto ms = generate_mutants(*fx->m, {model_operator::ad});
  const auto& ad = by_description(ms, "delete current_user := none");
  std::vector<test_case> quiet{fx->test("A", std::string(login_ok) + logout)};
  std::vector<test_case> loud{fx->test("B", std::string(login_ok) + logout + buy1)};

  auto r1 = classify_mutant(ad, quiet, fx->automata);
  EXPECT_EQ(r1.v, verdict::c_a);
  EXPECT_EQ(r1.violated, std::vector<std::string>{"P7"});

  auto r2 = classify_mutant(ad, loud, fx->automata);
  EXPECT_EQ(r2.v, verdict::nc_e);
  EXPECT_EQ(r2.detail, "B@3");
}

TEST(ModelMutator, UnexercisedMutantIsConformant) {
  auto fx = ecinema::shared();
  auto ms = generate_mutants(*fx->m, {model_operator::ad});
  const auto& ad = by_description(ms, "delete basket[TITLE1] := 0");
  auto r = classify_mutant(ad, {fx->test("A", login_ok)}, fx->automata);
  EXPECT_EQ(r.v, verdict::c_ne);
}

TEST(ModelMutator, DefectiveMutantIsStillborn) {
  auto fx = ecinema::shared();
  auto ms = generate_mutants(*fx->m, {model_operator::saf});
  const auto& saf = by_description(ms, "login @AIM:LOG_Success guard: true -> false");
  auto r = classify_mutant(saf, {fx->test("A", login_ok)}, fx->automata);
  EXPECT_EQ(r.v, verdict::stillborn);
  auto rep = run_experiment({saf}, {fx->test("A", login_ok)}, fx->automata);
  EXPECT_EQ(rep.stillborn(model_operator::saf), 1u);
  EXPECT_EQ(rep.row(model_operator::saf), (std::array<std::size_t, 4>{}));
}

TEST(ModelMutator, TableAndCsv) {
  auto fx = ecinema::shared();
  auto ms = generate_mutants(*fx->m, {model_operator::ad});
  auto rep = run_experiment(ms, {fx->test("A", std::string(login_ok) + logout + buy1)}, fx->automata);
  auto row = rep.row(model_operator::ad);
  EXPECT_EQ(row[0] + row[1] + row[2] + row[3] + rep.stillborn(model_operator::ad), ms.size());
  std::string csv = to_csv(rep, {model_operator::ad});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "operator,C-NE,NC-NA,NC-E,C-A,total,stillborn");
  EXPECT_NE(format_table(rep, {model_operator::ad}).find("AD"), std::string::npos);
}

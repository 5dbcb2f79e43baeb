#include "fixture.hpp"

#include "propcov/matcher.hpp"
#include "propcov/mutation.hpp"

#include <gtest/gtest.h>

using namespace propcov;
using namespace propcov::testing;

namespace {

event_quad quad(const std::string& event) {
  auto p = parse_property("never " + event, *ecinema::shared()->m);
  return normalize_event(std::get<never_pattern>(p.pat).event);
}

const mutated_automaton* find_rule(const std::vector<mutated_automaton>& ms, mutation_rule r) {
  for (const auto& m : ms)
    if (m.change.rule == r) return &m;
  return nullptr;
}

} // namespace

TEST(Mutation, RulesOnQuadruplets) {
  auto q = quad("isCalled(buyTicket, pre: current_user != none and in_title = TITLE1, post: basket[TITLE1] > 0, "
                "{@AIM:BUY_Success})");
  EXPECT_EQ(to_string(*mutate_post_tag_removal(q)), "[buyTicket,current_user != none and in_title = TITLE1,_,_]");
  EXPECT_EQ(to_string(*mutate_pre_removal(q)), "[buyTicket,_,_,_]");
  auto weak = mutate_weaken(q);
  ASSERT_EQ(weak.size(), 2u);
  EXPECT_EQ(to_string(weak[0]), "[buyTicket,in_title = TITLE1,_,_]");
  EXPECT_EQ(to_string(weak[1]), "[buyTicket,current_user != none,_,_]");

  auto tags_only = quad("isCalled(buyTicket, {@AIM:BUY_Success})");
  EXPECT_EQ(to_string(*mutate_post_tag_removal(tags_only)), "[buyTicket,_,_,_]");
  EXPECT_FALSE(mutate_pre_removal(tags_only));
  EXPECT_TRUE(mutate_weaken(tags_only).empty());
  EXPECT_FALSE(mutate_post_tag_removal(quad("isCalled(buyTicket, pre: current_user = none)")));

  auto post_conj = quad("isCalled(buyTicket, _, basket[TITLE1] > 0 and basket[TITLE2] = 0)");
  auto pw = mutate_weaken(post_conj);
  ASSERT_EQ(pw.size(), 2u);
  EXPECT_EQ(to_string(pw[0]), "[buyTicket,_,basket[TITLE2] = 0,_]");
}

TEST(Mutation, NeverBeforeMutant) {
  auto fx = ecinema::shared();
  std::vector<std::string> skipped;
  auto ms = mutate_automaton(fx->aut("P1"), &skipped);
  ASSERT_EQ(ms.size(), 1u);
  const auto& m = ms.front();
  EXPECT_EQ(m.id, "P1/0->X:E1/post-tag-removal");
  EXPECT_EQ(to_string(m.change.mutated), "[buyTicket,_,_,_]");
  const auto& a = m.automaton;
  const auto& t = a.tr(m.change.transition);
  EXPECT_EQ(t.event_label, "E'1");
  EXPECT_TRUE(t.preferred);
  EXPECT_EQ(a.describe(t.id), "0->X:E'1");
  EXPECT_FALSE(a.has_rejection());
  for (const auto& s : a.states) EXPECT_EQ(s.final_, s.label == "X");
  EXPECT_EQ(skipped.size(), 2u);
  EXPECT_EQ(mutant_manifest(ms)[0]["rule"], "post-tag-removal");
}

TEST(Mutation, NeverAfterUntilMutant) {
  auto fx = ecinema::shared();
  auto ms = mutate_automaton(fx->aut("P3"));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].automaton.describe(ms[0].change.transition), "1->X:E'1");
  auto r = run_test_case(ms[0].automaton, fx->test("T", std::string(login_ok) + logout + buy1));
  EXPECT_EQ(r.fired.back(), ms[0].change.transition);
  EXPECT_TRUE(r.reached_final);
}

TEST(Mutation, NonSafetyIsNotMutable) {
  EXPECT_THROW(mutate_automaton(ecinema::shared()->aut("P2")), property_not_mutable);
}

TEST(Mutation, AllRulesOnConjunctiveGuard) {
  auto fx = ecinema::shared();
  auto p = parse_property("never isCalled(buyTicket, pre: current_user != none and in_title = TITLE1, "
                          "{@AIM:BUY_Success}) globally",
                          *fx->m, "W");
  auto ms = mutate_automaton(build_automaton(p, fx->m.get()));
  ASSERT_EQ(ms.size(), 4u);
  EXPECT_TRUE(find_rule(ms, mutation_rule::pre_removal));
  EXPECT_EQ(ms[2].id, "W/0->X:E0/weakening#1");
  EXPECT_EQ(ms[3].id, "W/0->X:E0/weakening#2");
}

TEST(Mutation, SiblingDuplicateIsSkipped) {
  auto fx = ecinema::shared();
  auto p = parse_property("isCalled(logout) precedes isCalled(logout, {@AIM:LOG_Logout})", *fx->m, "D");
  auto a = build_automaton(p, fx->m.get());
  std::vector<std::string> skipped;
  auto ms = mutate_automaton(a, &skipped);
  EXPECT_TRUE(ms.empty());
  bool noted = std::any_of(skipped.begin(), skipped.end(),
                           [](const std::string& s) { return s.find("equals a sibling guard") != std::string::npos; });
  EXPECT_TRUE(noted);
}

TEST(Mutation, PreferredTransitionWinsOverlap) {
  auto fx = ecinema::shared();
  auto p = parse_property("isCalled(login, {@AIM:LOG_Success}) precedes isCalled(_, {@AIM:BUY_Success})", *fx->m, "O");
  auto ms = mutate_automaton(build_automaton(p, fx->m.get()));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_FALSE(ms[0].notes.empty());
  auto r = run_test_case(ms[0].automaton, fx->test("T", login_ok));
  EXPECT_EQ(r.fired.front(), ms[0].change.transition);
}

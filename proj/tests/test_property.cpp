#include "fixture.hpp"

#include <gtest/gtest.h>

using namespace propcov;
using propcov::testing::ecinema;

namespace {

property parse(const std::string& text) { return parse_property(text, *ecinema::shared()->m, "T"); }

} // namespace

TEST(Property, FixtureFileParses) {
  const auto& props = ecinema::shared()->props;
  ASSERT_EQ(props.size(), 7u);
  EXPECT_EQ(props[0].name, "P1");
  EXPECT_EQ(pattern_name(props[0].pat), "never");
  EXPECT_EQ(scope_name(props[0].scp), "before");
  EXPECT_EQ(pattern_name(props[1].pat), "eventually");
  EXPECT_EQ(scope_name(props[1].scp), "between-and");
  EXPECT_EQ(scope_name(props[2].scp), "after-until");
  EXPECT_EQ(pattern_name(props[4].pat), "precedes");
  EXPECT_EQ(scope_name(props[4].scp), "globally");
  EXPECT_NE(props[0].source.find("never isCalled(buyTicket"), std::string::npos);
}

TEST(Property, NormalizesIsCalled) {
  auto p = parse("never isCalled(buyTicket, {@AIM:BUY_Success})");
  auto q = normalize_event(std::get<never_pattern>(p.pat).event);
  EXPECT_EQ(to_string(q), "[buyTicket,_,_,{@AIM:BUY_Success}]");
  EXPECT_EQ(scope_name(p.scp), "globally");
}

TEST(Property, NormalizesBecomesTrue) {
  auto p = parse("eventually becomesTrue(current_user = REGISTERED_USER)");
  auto q = normalize_event(std::get<eventually_pattern>(p.pat).event);
  EXPECT_FALSE(q.op);
  EXPECT_FALSE(q.tags);
  ASSERT_TRUE(q.pre);
  ASSERT_TRUE(q.post);
  EXPECT_EQ(to_string(q.pre), "not(current_user = REGISTERED_USER)");
  EXPECT_EQ(to_string(q.post), "current_user = REGISTERED_USER");
}

TEST(Property, NamedAndSkippedSlots) {
  auto a = normalize_event(
    std::get<never_pattern>(parse("never isCalled(logout, _, current_user != none)").pat).event);
  EXPECT_FALSE(a.pre);
  ASSERT_TRUE(a.post);
  auto b = normalize_event(
    std::get<never_pattern>(parse("never isCalled(logout, post: current_user != none)").pat).event);
  EXPECT_EQ(a, b);
  auto c = normalize_event(std::get<never_pattern>(parse("never isCalled(buyTicket, pre: in_title = TITLE1)").pat).event);
  ASSERT_TRUE(c.pre);
  EXPECT_FALSE(c.post);
  auto d = normalize_event(std::get<never_pattern>(parse("never isCalled(_, {@AIM:LOG_Logout})").pat).event);
  EXPECT_FALSE(d.op);
  EXPECT_EQ(d.tags, (tag_set{"@AIM:LOG_Logout"}));
}

TEST(Property, KeywordsIgnoreCase) {
  auto p = parse("NEVER isCalled(buyTicket) Between isCalled(login) AND isCalled(logout)");
  EXPECT_EQ(scope_name(p.scp), "between-and");
}

TEST(Property, BoundsAndDirectVariants) {
  auto e = std::get<eventually_pattern>(parse("eventually isCalled(login) at most 2 times").pat);
  ASSERT_TRUE(e.bound);
  EXPECT_EQ(e.bound->k, occurrence_bound::kind::at_most);
  EXPECT_EQ(e.bound->count, 2);
  auto p = std::get<precedes_pattern>(parse("isCalled(login) directly precedes isCalled(logout)").pat);
  EXPECT_TRUE(p.direct);
  auto f = std::get<follows_pattern>(parse("isCalled(logout) follows isCalled(login)").pat);
  EXPECT_FALSE(f.direct);
}

TEST(Property, TypeErrors) {
  EXPECT_THROW(parse("never isCalled(fly)"), type_error);
  EXPECT_THROW(parse("never isCalled(login, {@AIM:NOPE})"), type_error);
  EXPECT_THROW(parse("never isCalled(login, pre: nobody = none)"), type_error);
  EXPECT_THROW(parse("never isCalled(login, pre: current_user + 1)"), type_error);
  EXPECT_THROW(parse("never isCalled(login, pre: in_title = TITLE1)"), type_error);
  EXPECT_THROW(parse("never isCalled(login) at least 2 times"), type_error);
  EXPECT_THROW(parse("always current_user"), type_error);
}

TEST(Property, SyntaxErrors) {
  EXPECT_THROW(parse("never"), parse_error);
  EXPECT_THROW(parse("isCalled(login) causes isCalled(logout)"), parse_error);
  EXPECT_THROW(parse("never isCalled(login) between isCalled(logout)"), parse_error);
  EXPECT_THROW(parse("never isCalled(login) globally extra"), parse_error);
  EXPECT_THROW(parse_property_file("property A: never isCalled(login);\nproperty A: never isCalled(logout);",
                                   *ecinema::shared()->m),
               type_error);
}

TEST(Property, EventsInLegendOrder) {
  const auto& p2 = ecinema::shared()->props[1];
  auto evs = events_in_order(p2);
  ASSERT_EQ(evs.size(), 3u);
  EXPECT_EQ(*normalize_event(evs[0]).op, "login");
  EXPECT_EQ(*normalize_event(evs[1]).op, "buyTicket");
  EXPECT_EQ(*normalize_event(evs[2]).op, "logout");
}

TEST(Property, FixtureRoundTrips) {
  for (const auto& p : ecinema::shared()->props) {
    auto back = parse_property(to_string(p), *ecinema::shared()->m, p.name);
    EXPECT_TRUE(equal(p, back)) << to_string(p);
    EXPECT_EQ(to_string(back), to_string(p));
  }
}

TEST(Property, RandomPropertiesRoundTrip) {
  std::vector<std::string> events = propcov::testing::disjoint_events;
  events.push_back("becomesTrue(current_user = none)");
  events.push_back("isCalled(buyTicket, pre: in_title = TITLE2 and current_user != none)");
  events.push_back("isCalled(deleteTicket, _, basket[TITLE1] > 0, {@AIM:DEL_Success, @AIM:DEL_No_Ticket})");
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::string text = propcov::testing::random_property(rng, events);
    auto p = parse(text);
    auto back = parse(to_string(p));
    ASSERT_TRUE(equal(p, back)) << text << "\n" << to_string(p);
    ASSERT_EQ(to_string(back), to_string(p));
  }
}

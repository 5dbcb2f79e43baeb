#include "fixture.hpp"

#include "propcov/suite.hpp"

#include <gtest/gtest.h>

using namespace propcov;
using propcov::testing::ecinema;

TEST(Suite, ParsesEntries) {
  auto s = parse_suite(R"(
# comment
test A "two calls" {
  login(REGISTERED_USER, REGISTERED_PWD);
  buyTicket(TITLE1);   # trailing annotations are ignored
}
test B { }
)");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].id, "A");
  EXPECT_EQ(s[0].note, "two calls");
  ASSERT_EQ(s[0].calls.size(), 2u);
  EXPECT_EQ(s[0].calls[0].args, (std::vector<std::string>{"REGISTERED_USER", "REGISTERED_PWD"}));
  EXPECT_TRUE(s[1].calls.empty());
}

TEST(Suite, ReplayRecomputesTags) {
  auto fx = ecinema::shared();
  auto t = fx->test("A", "buyTicket(TITLE1); login(REGISTERED_USER, REGISTERED_PWD);");
  EXPECT_EQ(t.steps[0].tags, std::set<std::string>{"@AIM:BUY_Login_Mandatory"});
  EXPECT_EQ(t.steps[1].tags, std::set<std::string>{"@AIM:LOG_Success"});
  EXPECT_EQ(t.steps[1].before, t.steps[0].after);
}

TEST(Suite, ReplayErrorsNameTheStep) {
  auto m = ecinema::shared()->m;
  try {
    replay_and_verify(*m, parse_suite("test A { logout(); fly(); }"));
    FAIL();
  } catch (const replay_error& e) {
    EXPECT_EQ(e.test(), "A");
    EXPECT_EQ(e.step(), 1u);
  }
  EXPECT_THROW(replay_and_verify(*m, parse_suite("test A { login(REGISTERED_USER); }")), replay_error);
  EXPECT_THROW(replay_and_verify(*m, parse_suite("test A { buyTicket(TITLE9); }")), replay_error);
  EXPECT_THROW(parse_suite("test A { login( }"), parse_error);
  EXPECT_THROW(parse_suite("test A { } test A { }"), parse_error);
}

TEST(Suite, WriteThenParseIsIdentity) {
  auto fx = ecinema::shared();
  std::vector<test_case> suite{fx->test("A", "login(REGISTERED_USER, REGISTERED_PWD); buyTicket(TITLE2);"),
                               fx->test("B", "viewBasket();")};
  std::string text = write_suite(*fx->m, suite);
  EXPECT_NE(text.find("# @AIM:BUY_Success / NONE"), std::string::npos);
  auto back = replay_and_verify(*fx->m, parse_suite(text));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    ASSERT_EQ(back[i].steps.size(), suite[i].steps.size());
    for (std::size_t j = 0; j < suite[i].steps.size(); ++j) {
      EXPECT_EQ(back[i].steps[j].inputs, suite[i].steps[j].inputs);
      EXPECT_EQ(back[i].steps[j].tags, suite[i].steps[j].tags);
    }
  }
  EXPECT_EQ(write_suite(*fx->m, back), text);
}

TEST(Suite, ReanimateOnSameModelIsIdentity) {
  auto fx = ecinema::shared();
  auto t = fx->test("A", "login(REGISTERED_USER, REGISTERED_PWD); buyTicket(TITLE1); buyTicket(TITLE1);");
  auto again = reanimate(*fx->m, t);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    EXPECT_EQ(again.steps[i].after, t.steps[i].after);
    EXPECT_EQ(again.steps[i].message, t.steps[i].message);
  }
}

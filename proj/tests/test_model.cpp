#include "fixture.hpp"

#include "propcov/model.hpp"
#include "propcov/model_parser.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace propcov;
using propcov::testing::ecinema;

namespace {

const char* tiny = R"(
model tiny;
enums { COLOR = { red, green }; }
vars { c : COLOR; n : int[0..2]; on : bool; }
init { c = red; n = 0; on = false; }
operation bump(by : int[1..2]) {
  behavior {@T:Full} when n + by > 2 then skip;
  behavior {@T:Bump} when true then n := n + by, on := true;
}
operation paint(to : COLOR) {
  behavior {@T:Same} when to = c then skip;
  behavior {@T:Paint, @T:Any} when true then c := to;
}
)";

} // namespace

TEST(Model, ParsesFixtureDeclarations) {
  auto m = ecinema::shared()->m;
  EXPECT_EQ(m->name, "ecinema");
  EXPECT_EQ(m->operations.size(), 6u);
  EXPECT_EQ(m->all_tags().size(), 17u);
  EXPECT_EQ(m->op(m->find_operation("buyTicket")).behaviors.size(), 3u);
  EXPECT_EQ(m->format(m->read(m->initial, "current_user")), "none");
  EXPECT_EQ(m->format(m->read_cell(m->initial, "available_tickets", "TITLE2")), "2");
}

TEST(Model, OperationLookupIgnoresCase) {
  auto m = ecinema::shared()->m;
  EXPECT_EQ(m->find_operation("buyticket"), m->find_operation("buyTicket"));
  EXPECT_EQ(m->find_operation("nope"), -1);
}

TEST(Model, FirstTrueGuardWins) {
  auto m = ecinema::shared()->m;
  step s = execute(*m, m->initial, "buyTicket", {0});
  EXPECT_EQ(s.tags, std::set<std::string>{"@AIM:BUY_Login_Mandatory"});
  EXPECT_EQ(s.message, "LOGIN_FIRST");
  EXPECT_EQ(s.after, s.before);

  step in = execute(*m, m->initial, "login", {1, 0});
  EXPECT_EQ(in.tags, std::set<std::string>{"@AIM:LOG_Success"});
  step bought = execute(*m, in.after, "buyTicket", {0});
  EXPECT_EQ(bought.tags, std::set<std::string>{"@AIM:BUY_Success"});
  EXPECT_EQ(m->format(m->read_cell(bought.after, "basket", "TITLE1")), "1");
  EXPECT_EQ(m->format(m->read_cell(bought.after, "available_tickets", "TITLE1")), "0");
  step sold_out = execute(*m, bought.after, "buyTicket", {0});
  EXPECT_EQ(sold_out.message, "NO_MORE_TICKET");
}

TEST(Model, EnumeratesInputsFirstParameterSlowest) {
  auto m = ecinema::shared()->m;
  auto in = enumerate_inputs(*m, m->find_operation("login"));
  ASSERT_EQ(in.size(), 6u);
  EXPECT_EQ(in[0], (valuation{0, 0}));
  EXPECT_EQ(in[1], (valuation{0, 1}));
  EXPECT_EQ(in[2], (valuation{1, 0}));
  EXPECT_EQ(enumerate_inputs(*m, m->find_operation("logout")).size(), 1u);
  EXPECT_EQ(format_call(*m, m->find_operation("login"), in[2]), "login(REGISTERED_USER, REGISTERED_PWD)");
}

TEST(Model, IntegerParametersAndMultiTagBehaviors) {
  auto m = parse_model(tiny);
  step s = execute(*m, m->initial, "bump", {2});
  EXPECT_EQ(m->format(m->read(s.after, "n")), "2");
  EXPECT_EQ(m->format(m->read(s.after, "on")), "true");
  EXPECT_EQ(execute(*m, s.after, "bump", {1}).tags, std::set<std::string>{"@T:Full"});
  step p = execute(*m, m->initial, "paint", {1});
  EXPECT_EQ(p.tags, (std::set<std::string>{"@T:Any", "@T:Paint"}));
  EXPECT_EQ(m->parse_value(m->op(1).params[0].ty, "COLOR::green"), 1);
  EXPECT_FALSE(m->parse_value(m->op(1).params[0].ty, "blue"));
}

TEST(Model, DefectsAreReported) {
  auto m = parse_model(R"(
model broken;
vars { n : int[0..1]; }
init { n = 0; }
operation inc() { behavior {@B:Inc} when n < 5 then n := n + 1; }
operation never() { behavior {@B:Never} when n > 3 then skip; }
)");
  step s = execute(*m, m->initial, "inc", {});
  EXPECT_THROW(execute(*m, s.after, "inc", {}), model_defect);
  EXPECT_THROW(execute(*m, m->initial, "never", {}), model_defect);
}

TEST(Model, RejectsMalformedSources) {
  EXPECT_THROW(parse_model("model m; vars { x : int[0..1]; }"), parse_error);  // missing init
  EXPECT_THROW(parse_model("model m; vars { x : FOO; } init { x = 0; }"), type_error);
  EXPECT_THROW(parse_model(R"(model m; vars { x : bool; } init { x = false; }
operation o() { behavior {@A} when x + 1 then skip; })"),
               type_error);
  EXPECT_THROW(parse_model(R"(model m; vars { x : bool; } init { x = false; }
operation o() { behavior {@A} when y then skip; })"),
               type_error);
}

TEST(Model, ParseErrorsCarryPositions) {
  try {
    parse_model("model m;\nvars { x : bool }\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position().line, 2);
  }
}

TEST(Model, WriteModelRoundTrips) {
  auto m = ecinema::shared()->m;
  std::string once = write_model(*m);
  auto again = parse_model(once);
  EXPECT_EQ(write_model(*again), once);
  EXPECT_EQ(again->initial, m->initial);
  EXPECT_EQ(again->all_tags(), m->all_tags());
}

TEST(Model, RandomWalksChainStates) {
  auto m = ecinema::shared()->m;
  std::mt19937 rng(7);
  for (int walk = 0; walk < 200; ++walk) {
    model_state s = m->initial;
    for (int i = 0; i < 15; ++i) {
      int o = static_cast<int>(rng() % m->operations.size());
      auto inputs = enumerate_inputs(*m, o);
      step st = execute(*m, s, o, inputs[rng() % inputs.size()]);
      ASSERT_EQ(st.before, s);
      ASSERT_FALSE(st.tags.empty());
      s = st.after;
    }
  }
}

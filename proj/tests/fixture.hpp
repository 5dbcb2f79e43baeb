#pragma once

#include "propcov/automaton.hpp"
#include "propcov/model_parser.hpp"
#include "propcov/property.hpp"
#include "propcov/suite.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <memory>
#include <string>
#include <vector>

namespace propcov::testing {

inline std::string fixture(const std::string& name) { return std::string(PROPCOV_FIXTURES) + "/" + name; }

/// The eCinema model with its properties, all built against one legend.
struct ecinema {
  std::shared_ptr<const model> m = load_model(fixture("ecinema.model"));
  std::vector<property> props = load_properties(fixture("ecinema.props"), *m);
  event_legend legend;
  std::vector<property_automaton> automata;

  ecinema() {
    for (const auto& p : props) automata.push_back(build_automaton(p, legend, m.get()));
  }

  const property_automaton& aut(const std::string& name) const {
    for (const auto& a : automata)
      if (a.prop.name == name) return a;
    throw std::out_of_range(name);
  }

  /// Animates `body`, a semicolon separated call list.
  test_case test(const std::string& id, const std::string& body) const {
    return replay_and_verify(*m, parse_suite("test " + id + " {" + body + "}")).front();
  }

  static std::shared_ptr<const ecinema> shared() {
    static auto instance = std::make_shared<const ecinema>();
    return instance;
  }
};

inline const char* login_ok = "login(REGISTERED_USER, REGISTERED_PWD);";
inline const char* buy1 = "buyTicket(TITLE1);";
inline const char* logout = "logout();";

/// Transition id of the alpha-transition described like `0->1:E0`.
inline int alpha_id(const property_automaton& a, const std::string& description) {
  for (const auto& t : a.transitions)
    if (a.describe(t.id) == description) return t.id;
  throw std::out_of_range(description);
}


/// Events of the fixture whose tag sets are pairwise disjoint, so no two of
/// them match one step.
inline const std::vector<std::string> disjoint_events{
  "isCalled(login, {@AIM:LOG_Success})",
  "isCalled(logout, {@AIM:LOG_Logout})",
  "isCalled(buyTicket, {@AIM:BUY_Success})",
  "isCalled(deleteTicket, {@AIM:DEL_Success})",
  "isCalled(deleteAllTickets, {@AIM:DALL_Success})",
  "isCalled(viewBasket, {@AIM:VIEW_Basket})",
  "isCalled(login, {@AIM:LOG_Already_Logged})",
  "isCalled(_, {@AIM:BUY_Sold_Out})",
};

/// Random property text over `events`, every event used at most once.
inline std::string random_property(std::mt19937& rng, const std::vector<std::string>& events) {
  std::vector<std::string> pool = events;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t next = 0;
  auto ev = [&] { return pool.at(next++); };
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

  std::string pat;
  switch (pick(6)) {
  case 0: pat = "always current_user != UNREGISTERED_USER"; break;
  case 1: pat = "never " + ev(); break;
  case 2: {
    pat = "eventually " + ev();
    const char* kinds[] = {"", " at least ", " at most ", " exactly "};
    int k = pick(4);
    if (k > 0) pat += kinds[k] + std::to_string(pick(3)) + " times";
    break;
  }
  case 3: pat = ev() + (pick(2) ? " directly" : "") + " precedes " + ev(); break;
  default: pat = ev() + (pick(2) ? " directly" : "") + " follows " + ev(); break;
  }
  switch (pick(5)) {
  case 0: return pat + " globally";
  case 1: return pat + " before " + ev();
  case 2: return pat + " after " + ev();
  case 3: return pat + " between " + ev() + " and " + ev();
  default: return pat + " after " + ev() + " until " + ev();
  }
}

} // namespace propcov::testing

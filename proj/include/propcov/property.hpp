#pragma once

#include "propcov/expr.hpp"
#include "propcov/model.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace propcov {

using tag_set = std::set<std::string>;

/// `isCalled(op, pre, post, {tags})`; every component is optional but at
/// least one is present. `op` holds the operation name as declared in the
/// model.
struct is_called {
  std::optional<std::string> op;
  expr pre;
  expr post;
  std::optional<tag_set> tags;
};

/// `becomesTrue(P)`: any call from a state where P is false into a state
/// where P is true.
struct becomes_true {
  expr condition;
};

using event_expr = std::variant<is_called, becomes_true>;

/// Normalised event `[op, pre, post, {tags}]`. An absent component (null
/// expression, empty optional) is the wildcard `_`.
struct event_quad {
  std::optional<std::string> op;
  expr pre;
  expr post;
  std::optional<tag_set> tags;

  bool is_wildcard() const { return !op && !pre && !post && !tags; }
};

bool operator==(const event_quad& a, const event_quad& b);
/// Rendered like `[login,_,_,{@AIM:LOG_Success}]`.
std::string to_string(const event_quad& q);

event_quad normalize_event(const event_expr& e);

struct occurrence_bound {
  enum class kind { at_least, at_most, exactly };
  kind k = kind::at_least;
  int count = 0;
};

struct always_pattern { expr condition; };
struct never_pattern { event_expr event; };
struct eventually_pattern {
  event_expr event;
  std::optional<occurrence_bound> bound;
};
/// `first (directly) precedes second`.
struct precedes_pattern {
  event_expr first;
  event_expr second;
  bool direct = false;
};
/// `response (directly) follows trigger`: every trigger is (directly)
/// followed by a response.
struct follows_pattern {
  event_expr response;
  event_expr trigger;
  bool direct = false;
};

using pattern = std::variant<always_pattern, never_pattern, eventually_pattern, precedes_pattern, follows_pattern>;

struct globally_scope {};
struct before_scope { event_expr event; };
struct after_scope { event_expr event; };
struct between_scope {
  event_expr open;
  event_expr close;
};
struct after_until_scope {
  event_expr open;
  event_expr close;
};

using scope = std::variant<globally_scope, before_scope, after_scope, between_scope, after_until_scope>;

struct property {
  std::string name;
  pattern pat;
  scope scp = globally_scope{};
  std::string source;
};

/// Parses one property, e.g.
/// `never isCalled(buyTicket, {@AIM:BUY_Success}) before isCalled(login, {@AIM:LOG_Success})`.
/// Keywords are case-insensitive; predicates are typed against `m`.
property parse_property(std::string_view text, const model& m, std::string name = {});

/// Parses a file of `property <name>: <text>;` entries.
std::vector<property> parse_property_file(std::string_view source, const model& m);
std::vector<property> load_properties(const std::filesystem::path& path, const model& m);

std::string to_string(const event_expr& e);
std::string to_string(const pattern& p);
std::string to_string(const scope& s);
/// Canonical concrete syntax; parse_property accepts it back.
std::string to_string(const property& p);

bool equal(const event_expr& a, const event_expr& b);
bool equal(const property& a, const property& b);

std::string pattern_name(const pattern& p);
std::string scope_name(const scope& s);

/// Events of a property in legend order: scope opening event, pattern
/// events, scope closing event.
std::vector<event_expr> events_in_order(const property& p);

} // namespace propcov

#include "propcov/property.hpp"

#include "lexer.hpp"
#include "predicate_parser.hpp"
#include "propcov/model_parser.hpp"

#include <cctype>

namespace propcov {

using namespace detail;

namespace {

bool same_expr(const expr& a, const expr& b) { return (!a && !b) || (a && b && equal(a, b)); }

class property_parser {
public:
  property_parser(token_stream& ts, const model& m) : ts_(ts), m_(m) {}

  property parse_body() {
    property p;
    p.pat = parse_pattern();
    p.scp = parse_scope();
    return p;
  }

private:
  std::set<std::string> parse_tags() {
    const token& open = ts_.expect_symbol("{");
    std::set<std::string> tags;
    auto known = m_.all_tags();
    if (ts_.is_symbol("}")) throw type_error("empty tag set", open.pos);
    do {
      const token& t = ts_.peek();
      if (t.kind != token_kind::tag) ts_.fail("expected a tag such as @AIM:NAME");
      if (!known.contains(t.text)) throw type_error("unknown tag '" + t.text + "'", t.pos);
      tags.insert(ts_.next().text);
    } while (ts_.accept_symbol(","));
    ts_.expect_symbol("}");
    return tags;
  }

  // Components are positional (op, pre, post, tags); `_` skips one,
  // `pre:`/`post:` name one and a brace always starts the tag set.
  is_called parse_is_called(const token& kw) {
    is_called e;
    ts_.expect_symbol("(");
    const std::vector<parameter>* params = nullptr;
    int slot = 0;
    while (!ts_.is_symbol(")")) {
      if (slot > 0) ts_.expect_symbol(",");
      if (slot > 3) ts_.fail("isCalled takes at most four components");
      const token& t = ts_.peek();
      if (ts_.is_symbol("{")) {
        e.tags = parse_tags();
        slot = 4;
      } else if ((ts_.is_keyword("pre") || ts_.is_keyword("post")) && ts_.is_symbol(":", 1)) {
        bool is_pre = ts_.is_keyword("pre");
        if (slot > (is_pre ? 1 : 2)) ts_.fail("'" + t.text + ":' is out of order");
        ts_.next();
        ts_.next();
        (is_pre ? e.pre : e.post) = resolve_predicate(parse_expression(ts_), {&m_, params});
        slot = is_pre ? 2 : 3;
      } else if (t.kind == token_kind::identifier && t.text == "_") {
        ts_.next();
        ++slot;
      } else if (slot == 0) {
        const token& n = ts_.expect_identifier("operation name or '_'");
        int op = m_.find_operation(n.text);
        if (op < 0) throw type_error("unknown operation '" + n.text + "'", n.pos);
        e.op = m_.op(op).name;
        params = &m_.op(op).params;
        slot = 1;
      } else if (slot <= 2) {
        (slot == 1 ? e.pre : e.post) = resolve_predicate(parse_expression(ts_), {&m_, params});
        ++slot;
      } else {
        ts_.fail("expected a tag set");
      }
    }
    ts_.expect_symbol(")");
    if (!e.op && !e.pre && !e.post && !e.tags) {
      throw type_error("isCalled needs at least one component", kw.pos);
    }
    return e;
  }

  event_expr parse_event() {
    const token& kw = ts_.peek();
    if (ts_.accept_keyword("isCalled")) return parse_is_called(kw);
    if (ts_.accept_keyword("becomesTrue")) {
      ts_.expect_symbol("(");
      becomes_true b{resolve_predicate(parse_expression(ts_), {&m_, nullptr})};
      ts_.expect_symbol(")");
      return b;
    }
    ts_.fail("expected an event (isCalled or becomesTrue), found '" + kw.text + "'");
  }

  std::optional<occurrence_bound> maybe_bound() {
    const token& start = ts_.peek();
    std::optional<occurrence_bound> b;
    if (ts_.is_keyword("at") && ts_.is_keyword("least", 1)) {
      ts_.next();
      ts_.next();
      b = occurrence_bound{occurrence_bound::kind::at_least, 0};
    } else if (ts_.is_keyword("at") && ts_.is_keyword("most", 1)) {
      ts_.next();
      ts_.next();
      b = occurrence_bound{occurrence_bound::kind::at_most, 0};
    } else if (ts_.accept_keyword("exactly")) {
      b = occurrence_bound{occurrence_bound::kind::exactly, 0};
    } else {
      return std::nullopt;
    }
    long long k = ts_.expect_integer("occurrence count");
    if (k < 0) throw type_error("occurrence bound must be non-negative", start.pos);
    b->count = static_cast<int>(k);
    ts_.accept_keyword("times");
    return b;
  }

  void reject_bound() {
    const token& t = ts_.peek();
    if ((ts_.is_keyword("at") && (ts_.is_keyword("least", 1) || ts_.is_keyword("most", 1))) ||
        ts_.is_keyword("exactly")) {
      throw type_error("occurrence bounds only apply to 'eventually'", t.pos);
    }
  }

  pattern parse_pattern() {
    if (ts_.accept_keyword("always")) {
      always_pattern p{resolve_predicate(parse_expression(ts_), {&m_, nullptr})};
      reject_bound();
      return p;
    }
    if (ts_.accept_keyword("never")) {
      never_pattern p{parse_event()};
      reject_bound();
      return p;
    }
    if (ts_.accept_keyword("eventually")) {
      eventually_pattern p{parse_event(), std::nullopt};
      p.bound = maybe_bound();
      return p;
    }
    event_expr first = parse_event();
    bool direct = ts_.accept_keyword("directly");
    if (ts_.accept_keyword("precedes")) {
      precedes_pattern p{std::move(first), parse_event(), direct};
      reject_bound();
      return p;
    }
    if (ts_.accept_keyword("follows")) {
      follows_pattern p{std::move(first), parse_event(), direct};
      reject_bound();
      return p;
    }
    ts_.fail("expected 'precedes' or 'follows'");
  }

  scope parse_scope() {
    if (ts_.accept_keyword("globally")) return globally_scope{};
    if (ts_.accept_keyword("before")) return before_scope{parse_event()};
    if (ts_.accept_keyword("after")) {
      event_expr open = parse_event();
      if (ts_.accept_keyword("until")) return after_until_scope{std::move(open), parse_event()};
      return after_scope{std::move(open)};
    }
    if (ts_.accept_keyword("between")) {
      event_expr open = parse_event();
      ts_.expect_keyword("and");
      return between_scope{std::move(open), parse_event()};
    }
    return globally_scope{};
  }

  token_stream& ts_;
  const model& m_;
};

std::string tags_to_string(const tag_set& tags) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : tags) {
    if (!first) out += ", ";
    out += t;
    first = false;
  }
  return out + "}";
}

std::string bound_to_string(const occurrence_bound& b) {
  switch (b.k) {
  case occurrence_bound::kind::at_least: return "at least " + std::to_string(b.count) + " times";
  case occurrence_bound::kind::at_most: return "at most " + std::to_string(b.count) + " times";
  case occurrence_bound::kind::exactly: return "exactly " + std::to_string(b.count) + " times";
  }
  return {};
}

} // namespace

bool operator==(const event_quad& a, const event_quad& b) {
  return a.op == b.op && same_expr(a.pre, b.pre) && same_expr(a.post, b.post) && a.tags == b.tags;
}

std::string to_string(const event_quad& q) {
  std::string out = "[";
  out += q.op ? *q.op : "_";
  out += ",";
  out += q.pre ? to_string(q.pre) : "_";
  out += ",";
  out += q.post ? to_string(q.post) : "_";
  out += ",";
  if (q.tags) {
    std::string t = "{";
    bool first = true;
    for (const auto& tag : *q.tags) {
      if (!first) t += ",";
      t += tag;
      first = false;
    }
    out += t + "}";
  } else {
    out += "_";
  }
  return out + "]";
}

event_quad normalize_event(const event_expr& e) {
  if (const auto* c = std::get_if<is_called>(&e)) return {c->op, c->pre, c->post, c->tags};
  const auto& b = std::get<becomes_true>(e);
  return {std::nullopt, make_not(b.condition), b.condition, std::nullopt};
}

property parse_property(std::string_view text, const model& m, std::string name) {
  token_stream ts(tokenize(text));
  property_parser parser(ts, m);
  property p = parser.parse_body();
  ts.accept_symbol(";");
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after the property");
  p.name = std::move(name);
  p.source = std::string(text);
  return p;
}

std::vector<property> parse_property_file(std::string_view source, const model& m) {
  token_stream ts(tokenize(source));
  std::vector<property> out;
  while (!ts.at_end()) {
    ts.expect_keyword("property");
    const token& n = ts.expect_identifier("property name");
    for (const auto& other : out)
      if (other.name == n.text) throw type_error("duplicate property '" + n.text + "'", n.pos);
    ts.expect_symbol(":");
    std::size_t begin = ts.peek().offset;
    property_parser parser(ts, m);
    property p = parser.parse_body();
    std::size_t end = ts.peek().offset;
    ts.expect_symbol(";");
    p.name = n.text;
    p.source = std::string(source.substr(begin, end - begin));
    while (!p.source.empty() && std::isspace(static_cast<unsigned char>(p.source.back()))) p.source.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<property> load_properties(const std::filesystem::path& path, const model& m) {
  try {
    return parse_property_file(read_text_file(path), m);
  } catch (const type_error& e) {
    throw type_error(e.message(), e.position(), path.string());
  } catch (const parse_error& e) {
    throw parse_error(e.message(), e.position(), path.string());
  }
}

std::string to_string(const event_expr& e) {
  if (const auto* b = std::get_if<becomes_true>(&e)) return "becomesTrue(" + to_string(b->condition) + ")";
  const auto& c = std::get<is_called>(e);
  std::string out = "isCalled(" + (c.op ? *c.op : std::string("_"));
  if (c.pre) out += ", pre: " + to_string(c.pre);
  if (c.post) out += ", post: " + to_string(c.post);
  if (c.tags) out += ", " + tags_to_string(*c.tags);
  return out + ")";
}

std::string to_string(const pattern& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, always_pattern>) {
          return "always " + to_string(v.condition);
        } else if constexpr (std::is_same_v<T, never_pattern>) {
          return "never " + to_string(v.event);
        } else if constexpr (std::is_same_v<T, eventually_pattern>) {
          return "eventually " + to_string(v.event) + (v.bound ? " " + bound_to_string(*v.bound) : "");
        } else if constexpr (std::is_same_v<T, precedes_pattern>) {
          return to_string(v.first) + (v.direct ? " directly" : "") + " precedes " + to_string(v.second);
        } else {
          return to_string(v.response) + (v.direct ? " directly" : "") + " follows " + to_string(v.trigger);
        }
      },
      p);
}

std::string to_string(const scope& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, globally_scope>) {
          return "globally";
        } else if constexpr (std::is_same_v<T, before_scope>) {
          return "before " + to_string(v.event);
        } else if constexpr (std::is_same_v<T, after_scope>) {
          return "after " + to_string(v.event);
        } else if constexpr (std::is_same_v<T, between_scope>) {
          return "between " + to_string(v.open) + " and " + to_string(v.close);
        } else {
          return "after " + to_string(v.open) + " until " + to_string(v.close);
        }
      },
      s);
}

std::string to_string(const property& p) { return to_string(p.pat) + " " + to_string(p.scp); }

bool equal(const event_expr& a, const event_expr& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<becomes_true>(&a)) return equal(x->condition, std::get<becomes_true>(b).condition);
  const auto& x = std::get<is_called>(a);
  const auto& y = std::get<is_called>(b);
  return x.op == y.op && same_expr(x.pre, y.pre) && same_expr(x.post, y.post) && x.tags == y.tags;
}

bool equal(const property& a, const property& b) {
  if (a.pat.index() != b.pat.index() || a.scp.index() != b.scp.index()) return false;
  bool pat_eq = std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.pat);
        if constexpr (std::is_same_v<T, always_pattern>) {
          return equal(x.condition, y.condition);
        } else if constexpr (std::is_same_v<T, never_pattern>) {
          return equal(x.event, y.event);
        } else if constexpr (std::is_same_v<T, eventually_pattern>) {
          bool bounds = x.bound.has_value() == y.bound.has_value() &&
                        (!x.bound || (x.bound->k == y.bound->k && x.bound->count == y.bound->count));
          return bounds && equal(x.event, y.event);
        } else if constexpr (std::is_same_v<T, precedes_pattern>) {
          return x.direct == y.direct && equal(x.first, y.first) && equal(x.second, y.second);
        } else {
          return x.direct == y.direct && equal(x.response, y.response) && equal(x.trigger, y.trigger);
        }
      },
      a.pat);
  if (!pat_eq) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.scp);
        if constexpr (std::is_same_v<T, globally_scope>) {
          return true;
        } else if constexpr (std::is_same_v<T, before_scope> || std::is_same_v<T, after_scope>) {
          return equal(x.event, y.event);
        } else {
          return equal(x.open, y.open) && equal(x.close, y.close);
        }
      },
      a.scp);
}

std::string pattern_name(const pattern& p) {
  static const char* names[] = {"always", "never", "eventually", "precedes", "follows"};
  return names[p.index()];
}

std::string scope_name(const scope& s) {
  static const char* names[] = {"globally", "before", "after", "between-and", "after-until"};
  return names[s.index()];
}

std::vector<event_expr> events_in_order(const property& p) {
  std::vector<event_expr> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, before_scope> || std::is_same_v<T, after_scope>) out.push_back(s.event);
        else if constexpr (!std::is_same_v<T, globally_scope>) out.push_back(s.open);
      },
      p.scp);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, never_pattern> || std::is_same_v<T, eventually_pattern>) {
          out.push_back(v.event);
        } else if constexpr (std::is_same_v<T, precedes_pattern>) {
          out.push_back(v.first);
          out.push_back(v.second);
        } else if constexpr (std::is_same_v<T, follows_pattern>) {
          out.push_back(v.response);
          out.push_back(v.trigger);
        }
      },
      p.pat);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, between_scope> || std::is_same_v<T, after_until_scope>) out.push_back(s.close);
      },
      p.scp);
  return out;
}

} // namespace propcov

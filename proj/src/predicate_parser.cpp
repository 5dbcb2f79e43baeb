#include "predicate_parser.hpp"

#include <cstdint>

namespace propcov::detail {

namespace {

bool is_reserved(std::string_view w) {
  for (std::string_view r : {"and", "or", "not", "implies", "true", "false"})
    if (iequals(w, r)) return true;
  return false;
}

sexpr parse_implies(token_stream& ts);

sexpr parse_primary(token_stream& ts) {
  const token& t = ts.peek();
  sexpr s;
  s.pos = t.pos;
  if (ts.accept_symbol("(")) {
    sexpr inner = parse_implies(ts);
    ts.expect_symbol(")");
    return inner;
  }
  if (t.kind == token_kind::integer || ts.is_symbol("-")) {
    s.k = sexpr::kind::integer;
    s.value = ts.expect_integer("integer");
    return s;
  }
  if (ts.is_keyword("true") || ts.is_keyword("false")) {
    s.k = sexpr::kind::boolean;
    s.value = ts.is_keyword("true") ? 1 : 0;
    ts.next();
    return s;
  }
  if (t.kind != token_kind::identifier || is_reserved(t.text)) {
    ts.fail("expected an expression, found '" + t.text + "'");
  }
  s.name = ts.next().text;
  if (ts.accept_symbol("::")) {
    s.k = sexpr::kind::qualified;
    s.qualifier = s.name;
    s.name = ts.expect_identifier("enumeration literal").text;
    return s;
  }
  if (ts.accept_symbol("[")) {
    s.k = sexpr::kind::index;
    s.args.push_back(parse_implies(ts));
    ts.expect_symbol("]");
    return s;
  }
  s.k = sexpr::kind::identifier;
  return s;
}

sexpr parse_sum(token_stream& ts) {
  sexpr lhs = parse_primary(ts);
  while (ts.is_symbol("+") || ts.is_symbol("-")) {
    sexpr b;
    b.pos = ts.peek().pos;
    b.k = sexpr::kind::binary;
    b.op = ts.next().text == "+" ? expr_op::add : expr_op::sub;
    b.args.push_back(std::move(lhs));
    b.args.push_back(parse_primary(ts));
    lhs = std::move(b);
  }
  return lhs;
}

std::optional<expr_op> relop(const token& t) {
  if (t.kind != token_kind::symbol) return std::nullopt;
  if (t.text == "=") return expr_op::eq;
  if (t.text == "!=" || t.text == "<>") return expr_op::ne;
  if (t.text == "<") return expr_op::lt;
  if (t.text == "<=") return expr_op::le;
  if (t.text == ">") return expr_op::gt;
  if (t.text == ">=") return expr_op::ge;
  return std::nullopt;
}

sexpr parse_comparison(token_stream& ts) {
  sexpr lhs = parse_sum(ts);
  if (auto op = relop(ts.peek())) {
    sexpr b;
    b.pos = ts.next().pos;
    b.k = sexpr::kind::binary;
    b.op = *op;
    b.args.push_back(std::move(lhs));
    b.args.push_back(parse_sum(ts));
    return b;
  }
  return lhs;
}

sexpr parse_not(token_stream& ts) {
  if (ts.is_keyword("not")) {
    sexpr s;
    s.pos = ts.next().pos;
    s.k = sexpr::kind::unary;
    s.op = expr_op::not_;
    s.args.push_back(parse_not(ts));
    return s;
  }
  return parse_comparison(ts);
}

sexpr parse_nary(token_stream& ts, std::string_view kw, expr_op op, sexpr (*operand)(token_stream&)) {
  sexpr first = operand(ts);
  if (!ts.is_keyword(kw)) return first;
  sexpr s;
  s.pos = first.pos;
  s.k = sexpr::kind::nary;
  s.op = op;
  s.args.push_back(std::move(first));
  while (ts.accept_keyword(kw)) s.args.push_back(operand(ts));
  return s;
}

sexpr parse_and(token_stream& ts) { return parse_nary(ts, "and", expr_op::and_, parse_not); }
sexpr parse_or(token_stream& ts) { return parse_nary(ts, "or", expr_op::or_, parse_and); }

sexpr parse_implies(token_stream& ts) {
  sexpr lhs = parse_or(ts);
  if (!ts.is_keyword("implies")) return lhs;
  sexpr s;
  s.pos = ts.next().pos;
  s.k = sexpr::kind::binary;
  s.op = expr_op::implies;
  s.args.push_back(std::move(lhs));
  s.args.push_back(parse_implies(ts));
  return s;
}

std::shared_ptr<expr_node> node(expr_op op, type ty) {
  auto n = std::make_shared<expr_node>();
  n->op = op;
  n->ty = ty;
  return n;
}

int enums_containing(const model& m, std::string_view lit) {
  int count = 0;
  for (const auto& e : m.enums) count += e.index_of(lit) >= 0;
  return count;
}

expr enum_literal(const model& m, int enum_id, int idx) {
  const auto& e = m.enums[static_cast<std::size_t>(enum_id)];
  auto n = node(expr_op::enum_lit, type::enumeration(enum_id));
  n->value = idx;
  n->ref = enum_id;
  n->name = e.literals[static_cast<std::size_t>(idx)];
  n->qualifier = e.name;
  n->qualify = enums_containing(m, n->name) > 1;
  return n;
}

int find_param(const name_scope& scope, std::string_view n) {
  if (!scope.params) return -1;
  for (std::size_t i = 0; i < scope.params->size(); ++i)
    if ((*scope.params)[i].name == n) return static_cast<int>(i);
  return -1;
}

// True when `s` can only be an enumeration literal, whose enumeration is
// then best taken from the other side of a comparison.
bool is_bare_literal(const sexpr& s, const name_scope& scope) {
  return s.k == sexpr::kind::identifier && find_param(scope, s.name) < 0 &&
         scope.m->find_var(s.name) < 0 && scope.m->find_array(s.name) < 0;
}

void require(bool ok, const sexpr& s, const std::string& what) {
  if (!ok) throw type_error(what, s.pos);
}

} // namespace

sexpr parse_expression(token_stream& ts) { return parse_implies(ts); }

std::string type_name(const model& m, const type& t) {
  switch (t.k) {
  case type::kind::boolean: return "bool";
  case type::kind::integer: return "int[" + std::to_string(t.lo) + ".." + std::to_string(t.hi) + "]";
  case type::kind::enumeration: return m.enums.at(static_cast<std::size_t>(t.enum_id)).name;
  }
  return "?";
}

expr resolve(const sexpr& s, const name_scope& scope, std::optional<type> hint) {
  const model& m = *scope.m;
  switch (s.k) {
  case sexpr::kind::integer:
    require(s.value >= INT32_MIN && s.value <= INT32_MAX, s, "integer literal out of range");
    return make_int(static_cast<int>(s.value));
  case sexpr::kind::boolean:
    return make_bool(s.value != 0);
  case sexpr::kind::qualified: {
    int e = m.find_enum(s.qualifier);
    require(e >= 0, s, "unknown enumeration '" + s.qualifier + "'");
    int idx = m.enums[static_cast<std::size_t>(e)].index_of(s.name);
    require(idx >= 0, s, "'" + s.name + "' is not a literal of " + s.qualifier);
    return enum_literal(m, e, idx);
  }
  case sexpr::kind::identifier: {
    if (int p = find_param(scope, s.name); p >= 0) {
      auto n = node(expr_op::param, (*scope.params)[static_cast<std::size_t>(p)].ty);
      n->ref = p;
      n->name = s.name;
      return n;
    }
    if (int v = m.find_var(s.name); v >= 0) {
      const auto& d = m.vars[static_cast<std::size_t>(v)];
      auto n = node(expr_op::var, d.ty);
      n->ref = v;
      n->slot = d.slot;
      n->name = d.name;
      return n;
    }
    require(m.find_array(s.name) < 0, s, "array '" + s.name + "' used without an index");
    if (hint && hint->is_enum()) {
      int idx = m.enums[static_cast<std::size_t>(hint->enum_id)].index_of(s.name);
      if (idx >= 0) return enum_literal(m, hint->enum_id, idx);
    }
    int found = -1;
    int count = 0;
    for (std::size_t e = 0; e < m.enums.size(); ++e) {
      if (m.enums[e].index_of(s.name) >= 0) {
        found = static_cast<int>(e);
        ++count;
      }
    }
    require(count > 0, s, "unknown identifier '" + s.name + "'");
    require(count == 1, s, "ambiguous literal '" + s.name + "'; qualify it as ENUM::" + s.name);
    return enum_literal(m, found, m.enums[static_cast<std::size_t>(found)].index_of(s.name));
  }
  case sexpr::kind::index: {
    int a = m.find_array(s.name);
    require(a >= 0, s, "unknown array '" + s.name + "'");
    const auto& d = m.arrays[static_cast<std::size_t>(a)];
    type idx_ty = type::enumeration(d.index_enum);
    expr idx = resolve(s.args[0], scope, idx_ty);
    require(idx->ty.compatible(idx_ty), s.args[0],
            "index of '" + d.name + "' must be " + type_name(m, idx_ty));
    auto n = node(expr_op::array_cell, d.element);
    n->ref = a;
    n->slot = d.base_slot;
    n->name = d.name;
    n->args.push_back(std::move(idx));
    return n;
  }
  case sexpr::kind::unary: {
    expr arg = resolve(s.args[0], scope, type::boolean());
    require(arg->ty.is_bool(), s.args[0], "operand of 'not' must be boolean");
    return make_not(std::move(arg));
  }
  case sexpr::kind::nary: {
    std::vector<expr> args;
    for (const auto& a : s.args) {
      args.push_back(resolve(a, scope, type::boolean()));
      require(args.back()->ty.is_bool(), a, std::string("operand of '") + symbol_of(s.op) + "' must be boolean");
    }
    auto n = node(s.op, type::boolean());
    n->args = std::move(args);
    return n;
  }
  case sexpr::kind::binary: {
    const sexpr& l = s.args[0];
    const sexpr& r = s.args[1];
    if (s.op == expr_op::implies) {
      expr a = resolve(l, scope, type::boolean());
      expr b = resolve(r, scope, type::boolean());
      require(a->ty.is_bool() && b->ty.is_bool(), s, "operands of 'implies' must be boolean");
      return make_binary(expr_op::implies, std::move(a), std::move(b));
    }
    if (s.op == expr_op::add || s.op == expr_op::sub) {
      expr a = resolve(l, scope);
      expr b = resolve(r, scope);
      require(a->ty.is_int() && b->ty.is_int(), s, "arithmetic needs integer operands");
      return make_binary(s.op, std::move(a), std::move(b));
    }
    expr a;
    expr b;
    if (is_bare_literal(l, scope) && !is_bare_literal(r, scope)) {
      b = resolve(r, scope);
      a = resolve(l, scope, b->ty);
    } else {
      a = resolve(l, scope);
      b = resolve(r, scope, a->ty);
    }
    if (s.op == expr_op::eq || s.op == expr_op::ne) {
      require(a->ty.compatible(b->ty), s,
              "cannot compare " + type_name(m, a->ty) + " with " + type_name(m, b->ty));
    } else {
      require(a->ty.is_int() && b->ty.is_int(), s,
              std::string("'") + symbol_of(s.op) + "' needs integer operands");
    }
    return make_binary(s.op, std::move(a), std::move(b));
  }
  }
  throw type_error("unsupported expression", s.pos);
}

expr resolve_predicate(const sexpr& s, const name_scope& scope) {
  expr e = resolve(s, scope, type::boolean());
  require(e->ty.is_bool(), s, "expected a boolean predicate");
  return e;
}

} // namespace propcov::detail

#include "propcov/expr.hpp"

#include "propcov/error.hpp"

namespace propcov {

bool is_comparison(expr_op op) {
  switch (op) {
  case expr_op::eq: case expr_op::ne: case expr_op::lt:
  case expr_op::le: case expr_op::gt: case expr_op::ge:
    return true;
  default:
    return false;
  }
}

const char* symbol_of(expr_op op) {
  switch (op) {
  case expr_op::eq: return "=";
  case expr_op::ne: return "!=";
  case expr_op::lt: return "<";
  case expr_op::le: return "<=";
  case expr_op::gt: return ">";
  case expr_op::ge: return ">=";
  case expr_op::add: return "+";
  case expr_op::sub: return "-";
  case expr_op::and_: return "and";
  case expr_op::or_: return "or";
  case expr_op::implies: return "implies";
  case expr_op::not_: return "not";
  default: return "?";
  }
}

expr make_bool(bool b) {
  auto n = std::make_shared<expr_node>();
  n->op = expr_op::bool_lit;
  n->ty = type::boolean();
  n->value = b ? 1 : 0;
  return n;
}

expr make_int(int v) {
  auto n = std::make_shared<expr_node>();
  n->op = expr_op::int_lit;
  n->ty = type::integer(v, v);
  n->value = v;
  return n;
}

expr make_not(expr e) {
  auto n = std::make_shared<expr_node>();
  n->op = expr_op::not_;
  n->ty = type::boolean();
  n->args.push_back(std::move(e));
  return n;
}

expr make_and(std::vector<expr> conjuncts) {
  if (conjuncts.empty()) return make_bool(true);
  if (conjuncts.size() == 1) return conjuncts.front();
  auto n = std::make_shared<expr_node>();
  n->op = expr_op::and_;
  n->ty = type::boolean();
  n->args = std::move(conjuncts);
  return n;
}

expr make_binary(expr_op op, expr lhs, expr rhs) {
  auto n = std::make_shared<expr_node>();
  n->op = op;
  n->ty = (op == expr_op::add || op == expr_op::sub) ? type::integer(0, 0) : type::boolean();
  n->args = {std::move(lhs), std::move(rhs)};
  return n;
}

long long evaluate_raw(const expr_node& e, std::span<const int> slots, std::span<const int> inputs) {
  auto arg = [&](std::size_t i) { return evaluate_raw(*e.args[i], slots, inputs); };
  switch (e.op) {
  case expr_op::bool_lit:
  case expr_op::int_lit:
  case expr_op::enum_lit:
    return e.value;
  case expr_op::var:
    return slots[static_cast<std::size_t>(e.slot)];
  case expr_op::array_cell:
    return slots[static_cast<std::size_t>(e.slot + arg(0))];
  case expr_op::param:
    return inputs[static_cast<std::size_t>(e.ref)];
  case expr_op::not_:
    return arg(0) ? 0 : 1;
  case expr_op::and_:
    for (std::size_t i = 0; i < e.args.size(); ++i)
      if (!arg(i)) return 0;
    return 1;
  case expr_op::or_:
    for (std::size_t i = 0; i < e.args.size(); ++i)
      if (arg(i)) return 1;
    return 0;
  case expr_op::implies:
    return (!arg(0) || arg(1)) ? 1 : 0;
  case expr_op::eq: return arg(0) == arg(1);
  case expr_op::ne: return arg(0) != arg(1);
  case expr_op::lt: return arg(0) < arg(1);
  case expr_op::le: return arg(0) <= arg(1);
  case expr_op::gt: return arg(0) > arg(1);
  case expr_op::ge: return arg(0) >= arg(1);
  case expr_op::add: return arg(0) + arg(1);
  case expr_op::sub: return arg(0) - arg(1);
  }
  throw invariant_violation("unknown expression node");
}

namespace {

// Higher binds tighter.
int precedence(expr_op op) {
  switch (op) {
  case expr_op::implies: return 1;
  case expr_op::or_: return 2;
  case expr_op::and_: return 3;
  case expr_op::not_: return 4;
  case expr_op::eq: case expr_op::ne: case expr_op::lt:
  case expr_op::le: case expr_op::gt: case expr_op::ge:
    return 5;
  case expr_op::add: case expr_op::sub: return 6;
  default: return 7;
  }
}

void print(const expr_node& e, std::string& out);

void print_child(const expr_node& child, int parent_prec, bool strict, std::string& out) {
  int p = precedence(child.op);
  bool parens = strict ? p <= parent_prec : p < parent_prec;
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const expr_node& e, std::string& out) {
  switch (e.op) {
  case expr_op::bool_lit:
    out += e.value ? "true" : "false";
    return;
  case expr_op::int_lit:
    out += std::to_string(e.value);
    return;
  case expr_op::enum_lit:
    if (e.qualify) out += e.qualifier + "::";
    out += e.name;
    return;
  case expr_op::var:
  case expr_op::param:
    out += e.name;
    return;
  case expr_op::array_cell:
    out += e.name + "[";
    print(*e.args[0], out);
    out += "]";
    return;
  case expr_op::not_:
    out += "not(";
    print(*e.args[0], out);
    out += ")";
    return;
  case expr_op::and_:
  case expr_op::or_: {
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (i) out += std::string(" ") + symbol_of(e.op) + " ";
      // nested conjunctions stay visibly grouped so reparsing keeps the shape
      print_child(*e.args[i], precedence(e.op), e.args[i]->op == e.op, out);
    }
    return;
  }
  case expr_op::implies:
    print_child(*e.args[0], precedence(e.op), true, out);
    out += " implies ";
    print_child(*e.args[1], precedence(e.op), false, out);
    return;
  default:
    // comparisons and arithmetic, both left-associative
    print_child(*e.args[0], precedence(e.op), is_comparison(e.op), out);
    out += std::string(" ") + symbol_of(e.op) + " ";
    print_child(*e.args[1], precedence(e.op), true, out);
    return;
  }
}

void collect(const expr& e, std::vector<const expr_node*>& out) {
  out.push_back(e.get());
  for (const auto& a : e->args) collect(a, out);
}

expr replace_rec(const expr& e, std::size_t& counter, std::size_t index, const expr& replacement) {
  if (counter++ == index) return replacement;
  if (e->args.empty()) return e;
  std::vector<expr> args;
  args.reserve(e->args.size());
  bool changed = false;
  for (const auto& a : e->args) {
    args.push_back(replace_rec(a, counter, index, replacement));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  auto copy = std::make_shared<expr_node>(*e);
  copy->args = std::move(args);
  return copy;
}

} // namespace

std::string to_string(const expr& e) {
  std::string out;
  print(*e, out);
  return out;
}

bool equal(const expr& a, const expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->value != b->value || a->ref != b->ref || a->slot != b->slot ||
      a->name != b->name || a->args.size() != b->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

std::vector<expr> conjuncts(const expr& e) {
  if (e->op != expr_op::and_) return {e};
  std::vector<expr> out;
  for (const auto& a : e->args) {
    auto sub = conjuncts(a);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<const expr_node*> preorder(const expr& e) {
  std::vector<const expr_node*> out;
  collect(e, out);
  return out;
}

expr replace_at(const expr& e, std::size_t index, const expr& replacement) {
  std::size_t counter = 0;
  return replace_rec(e, counter, index, replacement);
}

} // namespace propcov

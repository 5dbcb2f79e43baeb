#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace propcov {

/// Static type of a predicate sub-expression or a declared variable.
struct type {
  enum class kind { boolean, integer, enumeration };

  kind k = kind::boolean;
  int lo = 0;        // inclusive bounds, integers only
  int hi = 1;
  int enum_id = -1;  // enumerations only

  static type boolean() { return {kind::boolean, 0, 1, -1}; }
  static type integer(int lo, int hi) { return {kind::integer, lo, hi, -1}; }
  static type enumeration(int id) { return {kind::enumeration, 0, 0, id}; }

  bool is_bool() const { return k == kind::boolean; }
  bool is_int() const { return k == kind::integer; }
  bool is_enum() const { return k == kind::enumeration; }

  /// Same kind and, for enumerations, same enumeration. Integer bounds are
  /// only enforced when a value is stored.
  bool compatible(const type& other) const {
    return k == other.k && (k != kind::enumeration || enum_id == other.enum_id);
  }
};

enum class expr_op {
  bool_lit, int_lit, enum_lit,
  var, array_cell, param,
  not_, and_, or_, implies,
  eq, ne, lt, le, gt, ge,
  add, sub,
};

bool is_comparison(expr_op op);
const char* symbol_of(expr_op op);

struct expr_node;
using expr = std::shared_ptr<const expr_node>;

/// Resolved, typed predicate tree. Nodes are immutable and shared.
struct expr_node {
  expr_op op = expr_op::bool_lit;
  type ty;
  int value = 0;        // literal value; enum literal index
  int ref = -1;         // variable, array or parameter index; enum id of a literal
  int slot = -1;        // state slot of a variable, base slot of an array
  std::string name;     // identifier as declared, used for printing
  std::string qualifier;  // enumeration name, printed only when `qualify` is set
  bool qualify = false;
  std::vector<expr> args;
};

expr make_bool(bool b);
expr make_int(int v);
expr make_not(expr e);
expr make_and(std::vector<expr> conjuncts);
expr make_binary(expr_op op, expr lhs, expr rhs);

/// Evaluates over flattened state slots and operation inputs. Booleans
/// evaluate to 0/1, enum literals to their index.
long long evaluate_raw(const expr_node& e, std::span<const int> slots, std::span<const int> inputs);

std::string to_string(const expr& e);
bool equal(const expr& a, const expr& b);

/// Top-level conjuncts, flattening nested conjunctions left to right.
/// A non-conjunction yields a single element.
std::vector<expr> conjuncts(const expr& e);

/// Pre-order list of every node of `e`.
std::vector<const expr_node*> preorder(const expr& e);

/// Copy of `e` where the pre-order node number `index` is replaced by
/// `replacement`.
expr replace_at(const expr& e, std::size_t index, const expr& replacement);

} // namespace propcov

#pragma once

#include "propcov/error.hpp"
#include "propcov/expr.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace propcov {

struct enum_decl {
  std::string name;
  std::vector<std::string> literals;

  /// -1 when absent.
  int index_of(std::string_view literal) const;
};

struct var_decl {
  std::string name;
  type ty;
  int slot = -1;
};

/// Array indexed by every literal of an enumeration.
struct array_decl {
  std::string name;
  int index_enum = -1;
  type element;
  int base_slot = -1;
};

struct parameter {
  std::string name;
  type ty;
};

/// `target := value`, where target is a variable or `array[index]`.
struct assignment {
  int var = -1;
  int array = -1;
  expr index;
  expr value;
};

/// One guarded branch of an operation. Behaviors of an operation are tried
/// in order and the first true guard wins.
struct behavior {
  std::set<std::string> tags;
  expr guard;
  std::vector<assignment> effects;
  std::string message;
  source_position pos;
};

struct operation {
  std::string name;
  std::vector<parameter> params;
  std::vector<behavior> behaviors;
};

/// Flattened valuation: one slot per variable and one per array cell.
struct model_state {
  std::vector<int> slots;

  friend bool operator==(const model_state&, const model_state&) = default;
};

struct model_state_hash {
  std::size_t operator()(const model_state& s) const noexcept;
};

/// Parameter values of one call, in declaration order.
using valuation = std::vector<int>;

struct value {
  type ty;
  int raw = 0;
};

/// Finite guarded-command system: enumerations, bounded variables, arrays
/// over enumerations and operations with tagged behaviors.
struct model {
  std::string name;
  std::vector<enum_decl> enums;
  std::vector<var_decl> vars;
  std::vector<array_decl> arrays;
  std::vector<operation> operations;
  model_state initial;
  int slot_count = 0;
  /// Enumeration holding behavior messages; -1 when the model has none.
  int message_enum = -1;

  int find_enum(std::string_view n) const;
  int find_var(std::string_view n) const;
  int find_array(std::string_view n) const;
  /// Operation names are compared case-insensitively.
  int find_operation(std::string_view n) const;
  const operation& op(int index) const { return operations.at(static_cast<std::size_t>(index)); }

  /// Every tag attached to some behavior.
  std::set<std::string> all_tags() const;
  /// Every tag once, in declaration order.
  std::vector<std::string> tags_in_order() const;

  /// Raw values of a finite domain, in declaration order.
  std::vector<int> domain(const type& t) const;

  value read(const model_state& s, std::string_view var_name) const;
  value read_cell(const model_state& s, std::string_view array_name, std::string_view literal) const;

  std::string format(const value& v) const;
  /// Parses an enum literal, integer or boolean against `t`.
  std::optional<int> parse_value(const type& t, std::string_view text) const;

  std::string format_state(const model_state& s) const;
};

/// One animation step: `after, message, tags <- op(inputs, before)`.
struct step {
  std::string operation;
  int operation_index = -1;
  valuation inputs;
  model_state before;
  model_state after;
  std::set<std::string> tags;
  std::string message;
  int behavior = -1;
};

struct test_case {
  std::string id;
  std::string note;
  std::vector<step> steps;
};

bool evaluate(const expr& p, const model_state& s, const valuation& inputs);

/// Fires the first behavior whose guard holds. Throws model_defect when no
/// guard holds or an assignment leaves the declared bounds.
step execute(const model& m, const model_state& s, int op_index, const valuation& inputs);
step execute(const model& m, const model_state& s, std::string_view op_name, const valuation& inputs);

/// Cartesian product of the parameter domains, first parameter varying
/// slowest, each domain in declaration order.
std::vector<valuation> enumerate_inputs(const model& m, int op_index);

std::string format_call(const model& m, int op_index, const valuation& inputs);

} // namespace propcov

#pragma once

#include "lexer.hpp"
#include "propcov/model.hpp"

#include <optional>
#include <vector>

namespace propcov::detail {

/// Untyped predicate syntax, resolved against a model in a second pass.
struct sexpr {
  enum class kind { identifier, qualified, integer, boolean, index, unary, binary, nary };

  kind k = kind::boolean;
  source_position pos;
  std::string name;
  std::string qualifier;
  long long value = 0;
  expr_op op = expr_op::bool_lit;
  std::vector<sexpr> args;
};

sexpr parse_expression(token_stream& ts);

/// Names visible while resolving: model declarations plus, inside an
/// operation or an event bound to one, its parameters.
struct name_scope {
  const model* m = nullptr;
  const std::vector<parameter>* params = nullptr;
};

expr resolve(const sexpr& s, const name_scope& scope, std::optional<type> hint = std::nullopt);

/// Resolves and requires a boolean result.
expr resolve_predicate(const sexpr& s, const name_scope& scope);

std::string type_name(const model& m, const type& t);

} // namespace propcov::detail

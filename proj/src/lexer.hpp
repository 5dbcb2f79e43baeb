#pragma once

#include "propcov/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace propcov::detail {

enum class token_kind { identifier, integer, tag, string, symbol, end };

struct token {
  token_kind kind = token_kind::end;
  std::string text;
  source_position pos;
  std::size_t offset = 0;
};

/// Splits model, property and suite sources into tokens. `#` and `//`
/// start line comments.
std::vector<token> tokenize(std::string_view source);

bool iequals(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);

/// Cursor over a token vector with the small helpers every parser here needs.
class token_stream {
public:
  explicit token_stream(std::vector<token> tokens) : tokens_(std::move(tokens)) {}

  const token& peek(std::size_t ahead = 0) const;
  const token& next();
  bool at_end() const { return peek().kind == token_kind::end; }

  bool is_symbol(std::string_view s, std::size_t ahead = 0) const;
  bool is_keyword(std::string_view kw, std::size_t ahead = 0) const;

  bool accept_symbol(std::string_view s);
  bool accept_keyword(std::string_view kw);

  const token& expect_symbol(std::string_view s);
  const token& expect_keyword(std::string_view kw);
  const token& expect_identifier(std::string_view what);
  long long expect_integer(std::string_view what);

  [[noreturn]] void fail(const std::string& what) const;
  [[noreturn]] void fail_at(const token& t, const std::string& what) const;

private:
  std::vector<token> tokens_;
  std::size_t cur_ = 0;
};

} // namespace propcov::detail

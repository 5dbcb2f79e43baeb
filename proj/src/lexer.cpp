#include "lexer.hpp"

#include <algorithm>
#include <cctype>

namespace propcov::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool tag_char(char c) { return ident_char(c) || c == ':' || c == '/' || c == '.' || c == '-'; }

std::string describe(const token& t) {
  switch (t.kind) {
  case token_kind::end: return "end of input";
  case token_kind::string: return "string \"" + t.text + "\"";
  default: return "'" + t.text + "'";
  }
}

} // namespace

std::vector<token> tokenize(std::string_view src) {
  static constexpr std::string_view two_char[] = {"::", "!=", "<>", "<=", ">=", "->", "..", ":="};
  std::vector<token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    token t;
    t.pos = {line, col};
    t.offset = i;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = token_kind::identifier;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = token_kind::integer;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '@') {
      std::size_t j = i + 1;
      while (j < src.size() && tag_char(src[j])) ++j;
      if (j == i + 1) throw parse_error("empty tag after '@'", t.pos);
      t.kind = token_kind::tag;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      std::string value;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] == '\\' && j + 1 < src.size()) ++j;
        value += src[j++];
      }
      if (j >= src.size() || src[j] != '"') throw parse_error("unterminated string", t.pos);
      t.kind = token_kind::string;
      t.text = std::move(value);
      advance(j + 1 - i);
    } else {
      t.kind = token_kind::symbol;
      std::string_view rest = src.substr(i);
      auto it = std::find_if(std::begin(two_char), std::end(two_char),
                             [&](std::string_view s) { return rest.substr(0, 2) == s; });
      std::size_t len = it != std::end(two_char) ? 2 : 1;
      if (len == 1 && std::string_view("(){}[],;:=<>+-*").find(c) == std::string_view::npos) {
        throw parse_error(std::string("unexpected character '") + c + "'", t.pos);
      }
      t.text = std::string(rest.substr(0, len));
      advance(len);
    }
    out.push_back(std::move(t));
  }
  out.push_back(token{token_kind::end, "", {line, col}, src.size()});
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const token& token_stream::peek(std::size_t ahead) const {
  return tokens_[std::min(cur_ + ahead, tokens_.size() - 1)];
}

const token& token_stream::next() {
  const token& t = tokens_[cur_];
  if (cur_ + 1 < tokens_.size()) ++cur_;
  return t;
}

bool token_stream::is_symbol(std::string_view s, std::size_t ahead) const {
  const token& t = peek(ahead);
  return t.kind == token_kind::symbol && t.text == s;
}

bool token_stream::is_keyword(std::string_view kw, std::size_t ahead) const {
  const token& t = peek(ahead);
  return t.kind == token_kind::identifier && iequals(t.text, kw);
}

bool token_stream::accept_symbol(std::string_view s) {
  if (!is_symbol(s)) return false;
  next();
  return true;
}

bool token_stream::accept_keyword(std::string_view kw) {
  if (!is_keyword(kw)) return false;
  next();
  return true;
}

const token& token_stream::expect_symbol(std::string_view s) {
  if (!is_symbol(s)) fail("expected '" + std::string(s) + "', found " + describe(peek()));
  return next();
}

const token& token_stream::expect_keyword(std::string_view kw) {
  if (!is_keyword(kw)) fail("expected '" + std::string(kw) + "', found " + describe(peek()));
  return next();
}

const token& token_stream::expect_identifier(std::string_view what) {
  if (peek().kind != token_kind::identifier) {
    fail("expected " + std::string(what) + ", found " + describe(peek()));
  }
  return next();
}

long long token_stream::expect_integer(std::string_view what) {
  bool negative = accept_symbol("-");
  if (peek().kind != token_kind::integer) {
    fail("expected " + std::string(what) + ", found " + describe(peek()));
  }
  const token& t = next();
  long long v = 0;
  try {
    v = std::stoll(t.text);
  } catch (const std::exception&) {
    fail_at(t, "integer out of range");
  }
  return negative ? -v : v;
}

void token_stream::fail(const std::string& what) const { throw parse_error(what, peek().pos); }

void token_stream::fail_at(const token& t, const std::string& what) const {
  throw parse_error(what, t.pos);
}

} // namespace propcov::detail

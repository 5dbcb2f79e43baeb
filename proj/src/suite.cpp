#include "propcov/suite.hpp"

#include "lexer.hpp"
#include "propcov/model_parser.hpp"

namespace propcov {

using namespace detail;

std::vector<suite_entry> parse_suite(std::string_view source) {
  token_stream ts(tokenize(source));
  std::vector<suite_entry> out;
  while (!ts.at_end()) {
    ts.expect_keyword("test");
    suite_entry e;
    const token& id = ts.peek();
    if (id.kind != token_kind::identifier && id.kind != token_kind::integer) ts.fail("expected a test identifier");
    e.id = ts.next().text;
    for (const auto& other : out)
      if (other.id == e.id) throw parse_error("duplicate test '" + e.id + "'", id.pos);
    if (ts.peek().kind == token_kind::string) e.note = ts.next().text;
    ts.expect_symbol("{");
    while (!ts.accept_symbol("}")) {
      call c;
      const token& op = ts.expect_identifier("operation name");
      c.operation = op.text;
      c.pos = op.pos;
      ts.expect_symbol("(");
      if (!ts.is_symbol(")")) {
        do {
          std::string arg;
          if (ts.accept_symbol("-")) arg = "-";
          const token& a = ts.peek();
          if (a.kind != token_kind::identifier && a.kind != token_kind::integer) ts.fail("expected an argument value");
          arg += ts.next().text;
          if (ts.accept_symbol("::")) arg += "::" + ts.expect_identifier("enumeration literal").text;
          c.args.push_back(std::move(arg));
        } while (ts.accept_symbol(","));
      }
      ts.expect_symbol(")");
      ts.expect_symbol(";");
      e.calls.push_back(std::move(c));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<suite_entry> load_suite(const std::filesystem::path& path) {
  try {
    return parse_suite(read_text_file(path));
  } catch (const parse_error& e) {
    throw parse_error(e.message(), e.position(), path.string());
  }
}

std::vector<test_case> replay_and_verify(const model& m, const std::vector<suite_entry>& suite) {
  std::vector<test_case> out;
  for (const auto& e : suite) {
    test_case t{e.id, e.note, {}};
    model_state s = m.initial;
    for (std::size_t i = 0; i < e.calls.size(); ++i) {
      const call& c = e.calls[i];
      int op = m.find_operation(c.operation);
      if (op < 0) throw replay_error(e.id, i, "unknown operation '" + c.operation + "'");
      const auto& params = m.op(op).params;
      if (params.size() != c.args.size()) {
        throw replay_error(e.id, i, m.op(op).name + " expects " + std::to_string(params.size()) + " argument(s), got " +
                                        std::to_string(c.args.size()));
      }
      valuation in;
      for (std::size_t p = 0; p < params.size(); ++p) {
        auto v = m.parse_value(params[p].ty, c.args[p]);
        if (!v) throw replay_error(e.id, i, "'" + c.args[p] + "' is not a valid value for " + params[p].name);
        in.push_back(*v);
      }
      try {
        t.steps.push_back(execute(m, s, op, in));
      } catch (const model_defect& d) {
        throw replay_error(e.id, i, std::string("model defect: ") + d.what());
      }
      s = t.steps.back().after;
    }
    out.push_back(std::move(t));
  }
  return out;
}

test_case animate(const model& m, std::string id, std::string note,
                  const std::vector<std::pair<int, valuation>>& calls) {
  test_case t{std::move(id), std::move(note), {}};
  model_state s = m.initial;
  for (const auto& [op, in] : calls) {
    t.steps.push_back(execute(m, s, op, in));
    s = t.steps.back().after;
  }
  return t;
}

test_case reanimate(const model& m, const test_case& t) {
  std::vector<std::pair<int, valuation>> calls;
  for (const auto& s : t.steps) calls.emplace_back(m.find_operation(s.operation), s.inputs);
  return animate(m, t.id, t.note, calls);
}

std::string write_suite(const model& m, const std::vector<test_case>& suite) {
  std::string out;
  for (const auto& t : suite) {
    if (!out.empty()) out += "\n";
    out += "test " + t.id;
    if (!t.note.empty()) {
      std::string note;
      for (char c : t.note) {
        if (c == '"' || c == '\\') note += '\\';
        note += c;
      }
      out += " \"" + note + "\"";
    }
    out += " {\n";
    for (const auto& s : t.steps) {
      std::string line = "  " + format_call(m, s.operation_index, s.inputs) + ";";
      std::string tags;
      for (const auto& tag : s.tags) tags += (tags.empty() ? "" : " ") + tag;
      line += std::string(std::max<std::size_t>(1, 48 > line.size() ? 48 - line.size() : 1), ' ');
      out += line + "# " + tags + (s.message.empty() ? "" : " / " + s.message) + "\n";
    }
    out += "}\n";
  }
  return out;
}

} // namespace propcov

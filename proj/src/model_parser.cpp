#include "propcov/model_parser.hpp"

#include "lexer.hpp"
#include "predicate_parser.hpp"

#include <fstream>
#include <sstream>

namespace propcov {

using namespace detail;

namespace {

class model_parser {
public:
  explicit model_parser(std::string_view src) : ts_(tokenize(src)) {}

  std::shared_ptr<const model> run() {
    if (ts_.accept_keyword("model")) {
      m_.name = ts_.expect_identifier("model name").text;
      ts_.expect_symbol(";");
    }
    while (!ts_.at_end()) {
      if (ts_.accept_keyword("enums")) parse_enums();
      else if (ts_.accept_keyword("vars")) parse_vars();
      else if (ts_.accept_keyword("arrays")) parse_arrays();
      else if (ts_.accept_keyword("init")) parse_init();
      else if (ts_.accept_keyword("operation")) parse_operation();
      else ts_.fail("expected 'enums', 'vars', 'arrays', 'init' or 'operation', found '" + ts_.peek().text + "'");
    }
    check_initialised();
    m_.message_enum = m_.find_enum("MSG");
    return std::make_shared<const model>(std::move(m_));
  }

private:
  void declare_name(const token& t) {
    if (m_.find_enum(t.text) >= 0 || m_.find_var(t.text) >= 0 || m_.find_array(t.text) >= 0 ||
        m_.find_operation(t.text) >= 0) {
      throw type_error("'" + t.text + "' is already declared", t.pos);
    }
  }

  void parse_enums() {
    ts_.expect_symbol("{");
    while (!ts_.accept_symbol("}")) {
      const token& n = ts_.expect_identifier("enumeration name");
      declare_name(n);
      enum_decl e;
      e.name = n.text;
      ts_.expect_symbol("=");
      ts_.expect_symbol("{");
      do {
        const token& lit = ts_.expect_identifier("literal");
        if (e.index_of(lit.text) >= 0) throw type_error("duplicate literal '" + lit.text + "'", lit.pos);
        e.literals.push_back(lit.text);
      } while (ts_.accept_symbol(","));
      ts_.expect_symbol("}");
      ts_.expect_symbol(";");
      m_.enums.push_back(std::move(e));
    }
  }

  type parse_type() {
    if (ts_.accept_keyword("bool")) return type::boolean();
    if (ts_.accept_keyword("int")) {
      ts_.expect_symbol("[");
      auto lo = ts_.expect_integer("lower bound");
      ts_.expect_symbol("..");
      auto hi = ts_.expect_integer("upper bound");
      ts_.expect_symbol("]");
      if (lo > hi) ts_.fail("empty integer range");
      return type::integer(static_cast<int>(lo), static_cast<int>(hi));
    }
    const token& t = ts_.expect_identifier("type");
    int e = m_.find_enum(t.text);
    if (e < 0) throw type_error("unknown type '" + t.text + "'", t.pos);
    return type::enumeration(e);
  }

  void parse_vars() {
    ts_.expect_symbol("{");
    while (!ts_.accept_symbol("}")) {
      const token& n = ts_.expect_identifier("variable name");
      declare_name(n);
      ts_.expect_symbol(":");
      var_decl v{n.text, parse_type(), m_.slot_count++};
      ts_.expect_symbol(";");
      m_.vars.push_back(std::move(v));
      m_.initial.slots.push_back(0);
      assigned_.push_back(false);
    }
  }

  void parse_arrays() {
    ts_.expect_symbol("{");
    while (!ts_.accept_symbol("}")) {
      const token& n = ts_.expect_identifier("array name");
      declare_name(n);
      ts_.expect_symbol(":");
      const token& idx = ts_.expect_identifier("index enumeration");
      int e = m_.find_enum(idx.text);
      if (e < 0) throw type_error("unknown enumeration '" + idx.text + "'", idx.pos);
      ts_.expect_symbol("->");
      array_decl a{n.text, e, parse_type(), m_.slot_count};
      ts_.expect_symbol(";");
      auto cells = m_.enums[static_cast<std::size_t>(e)].literals.size();
      m_.slot_count += static_cast<int>(cells);
      m_.initial.slots.resize(static_cast<std::size_t>(m_.slot_count), 0);
      assigned_.resize(static_cast<std::size_t>(m_.slot_count), false);
      m_.arrays.push_back(std::move(a));
    }
  }

  int constant_value(const type& ty) {
    const token& at = ts_.peek();
    expr e = resolve(parse_expression(ts_), {&m_, nullptr}, ty);
    if (e->op != expr_op::bool_lit && e->op != expr_op::int_lit && e->op != expr_op::enum_lit) {
      throw type_error("initial values must be constants", at.pos);
    }
    if (!e->ty.compatible(ty)) throw type_error("initial value has the wrong type", at.pos);
    if (ty.is_int() && (e->value < ty.lo || e->value > ty.hi)) {
      throw type_error("initial value " + std::to_string(e->value) + " outside " + type_name(m_, ty), at.pos);
    }
    return e->value;
  }

  void parse_init() {
    ts_.expect_symbol("{");
    while (!ts_.accept_symbol("}")) {
      const token& n = ts_.expect_identifier("variable or array");
      std::vector<int> slots;
      type ty;
      if (ts_.accept_symbol("[")) {
        int a = m_.find_array(n.text);
        if (a < 0) throw type_error("unknown array '" + n.text + "'", n.pos);
        const auto& d = m_.arrays[static_cast<std::size_t>(a)];
        const auto& idx = m_.enums[static_cast<std::size_t>(d.index_enum)];
        ty = d.element;
        if (ts_.accept_symbol("*")) {
          for (std::size_t i = 0; i < idx.literals.size(); ++i) slots.push_back(d.base_slot + static_cast<int>(i));
        } else {
          const token& lit = ts_.expect_identifier("index literal");
          int i = idx.index_of(lit.text);
          if (i < 0) throw type_error("'" + lit.text + "' is not a literal of " + idx.name, lit.pos);
          slots.push_back(d.base_slot + i);
        }
        ts_.expect_symbol("]");
      } else {
        int v = m_.find_var(n.text);
        if (v < 0) throw type_error("unknown variable '" + n.text + "'", n.pos);
        ty = m_.vars[static_cast<std::size_t>(v)].ty;
        slots.push_back(m_.vars[static_cast<std::size_t>(v)].slot);
      }
      ts_.expect_symbol("=");
      int value = constant_value(ty);
      ts_.expect_symbol(";");
      for (int s : slots) {
        m_.initial.slots[static_cast<std::size_t>(s)] = value;
        assigned_[static_cast<std::size_t>(s)] = true;
      }
    }
  }

  void check_initialised() const {
    for (const auto& v : m_.vars) {
      if (!assigned_[static_cast<std::size_t>(v.slot)]) {
        throw type_error("variable '" + v.name + "' has no initial value", ts_.peek().pos);
      }
    }
    for (const auto& a : m_.arrays) {
      const auto& idx = m_.enums[static_cast<std::size_t>(a.index_enum)];
      for (std::size_t i = 0; i < idx.literals.size(); ++i) {
        if (!assigned_[static_cast<std::size_t>(a.base_slot) + i]) {
          throw type_error("cell " + a.name + "[" + idx.literals[i] + "] has no initial value", ts_.peek().pos);
        }
      }
    }
  }

  assignment parse_assignment(const name_scope& scope) {
    const token& n = ts_.expect_identifier("assignment target");
    assignment a;
    type target;
    if (ts_.accept_symbol("[")) {
      a.array = m_.find_array(n.text);
      if (a.array < 0) throw type_error("unknown array '" + n.text + "'", n.pos);
      const auto& d = m_.arrays[static_cast<std::size_t>(a.array)];
      const token& at = ts_.peek();
      a.index = resolve(parse_expression(ts_), scope, type::enumeration(d.index_enum));
      if (!a.index->ty.compatible(type::enumeration(d.index_enum))) {
        throw type_error("index of '" + d.name + "' has the wrong type", at.pos);
      }
      ts_.expect_symbol("]");
      target = d.element;
    } else {
      a.var = m_.find_var(n.text);
      if (a.var < 0) throw type_error("unknown variable '" + n.text + "'", n.pos);
      target = m_.vars[static_cast<std::size_t>(a.var)].ty;
    }
    ts_.expect_symbol(":=");
    const token& at = ts_.peek();
    a.value = resolve(parse_expression(ts_), scope, target);
    if (!a.value->ty.compatible(target)) {
      throw type_error("cannot assign " + type_name(m_, a.value->ty) + " to " + n.text, at.pos);
    }
    return a;
  }

  void parse_operation() {
    const token& n = ts_.expect_identifier("operation name");
    declare_name(n);
    operation op;
    op.name = n.text;
    ts_.expect_symbol("(");
    if (!ts_.is_symbol(")")) {
      do {
        const token& p = ts_.expect_identifier("parameter name");
        if (m_.find_var(p.text) >= 0 || m_.find_array(p.text) >= 0) {
          throw type_error("parameter '" + p.text + "' shadows a state variable", p.pos);
        }
        for (const auto& other : op.params)
          if (other.name == p.text) throw type_error("duplicate parameter '" + p.text + "'", p.pos);
        ts_.expect_symbol(":");
        op.params.push_back({p.text, parse_type()});
      } while (ts_.accept_symbol(","));
    }
    ts_.expect_symbol(")");
    ts_.expect_symbol("{");
    name_scope scope{&m_, &op.params};
    while (!ts_.accept_symbol("}")) {
      behavior b;
      b.pos = ts_.expect_keyword("behavior").pos;
      ts_.expect_symbol("{");
      do {
        if (ts_.peek().kind != token_kind::tag) ts_.fail("expected a tag such as @AIM:NAME");
        b.tags.insert(ts_.next().text);
      } while (ts_.accept_symbol(","));
      ts_.expect_symbol("}");
      ts_.expect_keyword("when");
      b.guard = resolve_predicate(parse_expression(ts_), scope);
      ts_.expect_keyword("then");
      if (!ts_.accept_keyword("skip") && !ts_.is_keyword("message") && !ts_.is_symbol(";")) {
        do {
          b.effects.push_back(parse_assignment(scope));
        } while (ts_.accept_symbol(","));
      }
      if (ts_.accept_keyword("message")) {
        int msg = m_.find_enum("MSG");
        const token& lit = ts_.expect_identifier("message literal");
        std::string text = lit.text;
        if (ts_.accept_symbol("::")) {
          if (lit.text != "MSG") throw type_error("messages belong to enumeration MSG", lit.pos);
          text = ts_.expect_identifier("message literal").text;
        }
        if (msg < 0) throw type_error("a 'message' needs an enumeration named MSG", lit.pos);
        if (m_.enums[static_cast<std::size_t>(msg)].index_of(text) < 0) {
          throw type_error("'" + text + "' is not a literal of MSG", lit.pos);
        }
        b.message = text;
      }
      ts_.expect_symbol(";");
      op.behaviors.push_back(std::move(b));
    }
    if (op.behaviors.empty()) throw type_error("operation '" + op.name + "' has no behavior", n.pos);
    m_.operations.push_back(std::move(op));
  }

  token_stream ts_;
  model m_;
  std::vector<bool> assigned_;
};

std::string write_type(const model& m, const type& t) { return type_name(m, t); }

} // namespace

std::shared_ptr<const model> parse_model(std::string_view source) {
  return model_parser(source).run();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const model> load_model(const std::filesystem::path& path) {
  try {
    return parse_model(read_text_file(path));
  } catch (const type_error& e) {
    throw type_error(e.message(), e.position(), path.string());
  } catch (const parse_error& e) {
    throw parse_error(e.message(), e.position(), path.string());
  }
}

std::string write_model(const model& m) {
  std::ostringstream out;
  if (!m.name.empty()) out << "model " << m.name << ";\n\n";
  out << "enums {\n";
  for (const auto& e : m.enums) {
    out << "  " << e.name << " = { ";
    for (std::size_t i = 0; i < e.literals.size(); ++i) out << (i ? ", " : "") << e.literals[i];
    out << " };\n";
  }
  out << "}\n\nvars {\n";
  for (const auto& v : m.vars) out << "  " << v.name << " : " << write_type(m, v.ty) << ";\n";
  out << "}\n\narrays {\n";
  for (const auto& a : m.arrays) {
    out << "  " << a.name << " : " << m.enums[static_cast<std::size_t>(a.index_enum)].name << " -> "
        << write_type(m, a.element) << ";\n";
  }
  out << "}\n\ninit {\n";
  for (const auto& v : m.vars) {
    out << "  " << v.name << " = " << m.format({v.ty, m.initial.slots[static_cast<std::size_t>(v.slot)]}) << ";\n";
  }
  for (const auto& a : m.arrays) {
    const auto& idx = m.enums[static_cast<std::size_t>(a.index_enum)];
    for (std::size_t i = 0; i < idx.literals.size(); ++i) {
      const auto& literal = idx.literals[i];
      value v{a.element, m.initial.slots[static_cast<std::size_t>(a.base_slot) + i]};
      std::string shown = m.format(v);
      if (a.element.is_enum()) shown = m.enums[static_cast<std::size_t>(a.element.enum_id)].name + "::" + shown;
      out << "  " << a.name << "[" << literal << "] = " << shown << ";\n";
    }
  }
  out << "}\n";
  for (const auto& o : m.operations) {
    out << "\noperation " << o.name << "(";
    for (std::size_t i = 0; i < o.params.size(); ++i) {
      out << (i ? ", " : "") << o.params[i].name << " : " << write_type(m, o.params[i].ty);
    }
    out << ") {\n";
    for (const auto& b : o.behaviors) {
      out << "  behavior {";
      bool first = true;
      for (const auto& t : b.tags) {
        out << (first ? "" : ", ") << t;
        first = false;
      }
      out << "} when " << to_string(b.guard) << "\n    then ";
      if (b.effects.empty()) out << "skip";
      for (std::size_t i = 0; i < b.effects.size(); ++i) {
        const auto& a = b.effects[i];
        out << (i ? ", " : "");
        if (a.var >= 0) {
          out << m.vars[static_cast<std::size_t>(a.var)].name;
        } else {
          out << m.arrays[static_cast<std::size_t>(a.array)].name << "[" << to_string(a.index) << "]";
        }
        out << " := " << to_string(a.value);
      }
      if (!b.message.empty()) out << " message " << b.message;
      out << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

} // namespace propcov

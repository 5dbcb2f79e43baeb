#include "propcov/model.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <charconv>

namespace propcov {

int enum_decl::index_of(std::string_view literal) const {
  auto it = std::find(literals.begin(), literals.end(), literal);
  return it == literals.end() ? -1 : static_cast<int>(it - literals.begin());
}

std::size_t model_state_hash::operator()(const model_state& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : s.slots) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

template <class T>
int find_by_name(const std::vector<T>& items, std::string_view n) {
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].name == n) return static_cast<int>(i);
  return -1;
}

} // namespace

int model::find_enum(std::string_view n) const { return find_by_name(enums, n); }
int model::find_var(std::string_view n) const { return find_by_name(vars, n); }
int model::find_array(std::string_view n) const { return find_by_name(arrays, n); }

int model::find_operation(std::string_view n) const {
  for (std::size_t i = 0; i < operations.size(); ++i)
    if (detail::iequals(operations[i].name, n)) return static_cast<int>(i);
  return -1;
}

std::set<std::string> model::all_tags() const {
  std::set<std::string> out;
  for (const auto& o : operations)
    for (const auto& b : o.behaviors) out.insert(b.tags.begin(), b.tags.end());
  return out;
}

std::vector<std::string> model::tags_in_order() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& o : operations)
    for (const auto& b : o.behaviors)
      for (const auto& t : b.tags)
        if (seen.insert(t).second) out.push_back(t);
  return out;
}

std::vector<int> model::domain(const type& t) const {
  std::vector<int> out;
  switch (t.k) {
  case type::kind::boolean:
    out = {0, 1};
    break;
  case type::kind::integer:
    for (int v = t.lo; v <= t.hi; ++v) out.push_back(v);
    break;
  case type::kind::enumeration: {
    const auto& e = enums.at(static_cast<std::size_t>(t.enum_id));
    for (std::size_t i = 0; i < e.literals.size(); ++i) out.push_back(static_cast<int>(i));
    break;
  }
  }
  return out;
}

value model::read(const model_state& s, std::string_view var_name) const {
  int v = find_var(var_name);
  if (v < 0) throw error("unknown variable '" + std::string(var_name) + "'");
  const auto& d = vars[static_cast<std::size_t>(v)];
  return {d.ty, s.slots.at(static_cast<std::size_t>(d.slot))};
}

value model::read_cell(const model_state& s, std::string_view array_name,
                       std::string_view literal) const {
  int a = find_array(array_name);
  if (a < 0) throw error("unknown array '" + std::string(array_name) + "'");
  const auto& d = arrays[static_cast<std::size_t>(a)];
  int idx = enums[static_cast<std::size_t>(d.index_enum)].index_of(literal);
  if (idx < 0) throw error("'" + std::string(literal) + "' does not index '" + d.name + "'");
  return {d.element, s.slots.at(static_cast<std::size_t>(d.base_slot + idx))};
}

std::string model::format(const value& v) const {
  switch (v.ty.k) {
  case type::kind::boolean: return v.raw ? "true" : "false";
  case type::kind::integer: return std::to_string(v.raw);
  case type::kind::enumeration:
    return enums.at(static_cast<std::size_t>(v.ty.enum_id)).literals.at(static_cast<std::size_t>(v.raw));
  }
  return "?";
}

std::optional<int> model::parse_value(const type& t, std::string_view text) const {
  switch (t.k) {
  case type::kind::boolean:
    if (detail::iequals(text, "true")) return 1;
    if (detail::iequals(text, "false")) return 0;
    return std::nullopt;
  case type::kind::integer: {
    int v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || v < t.lo || v > t.hi) return std::nullopt;
    return v;
  }
  case type::kind::enumeration: {
    const auto& e = enums.at(static_cast<std::size_t>(t.enum_id));
    auto sep = text.rfind("::");
    if (sep != std::string_view::npos) {
      if (text.substr(0, sep) != e.name) return std::nullopt;
      text = text.substr(sep + 2);
    }
    int idx = e.index_of(text);
    if (idx < 0) return std::nullopt;
    return idx;
  }
  }
  return std::nullopt;
}

std::string model::format_state(const model_state& s) const {
  std::string out;
  for (const auto& v : vars) {
    if (!out.empty()) out += ", ";
    out += v.name + "=" + format({v.ty, s.slots[static_cast<std::size_t>(v.slot)]});
  }
  for (const auto& a : arrays) {
    const auto& idx = enums[static_cast<std::size_t>(a.index_enum)];
    for (std::size_t i = 0; i < idx.literals.size(); ++i) {
      if (!out.empty()) out += ", ";
      out += a.name + "[" + idx.literals[i] + "]=" +
             format({a.element, s.slots[static_cast<std::size_t>(a.base_slot) + i]});
    }
  }
  return out;
}

bool evaluate(const expr& p, const model_state& s, const valuation& inputs) {
  return evaluate_raw(*p, s.slots, inputs) != 0;
}

step execute(const model& m, const model_state& s, int op_index, const valuation& inputs) {
  const operation& o = m.op(op_index);
  if (inputs.size() != o.params.size()) {
    throw error("operation '" + o.name + "' expects " + std::to_string(o.params.size()) +
                " inputs, got " + std::to_string(inputs.size()));
  }
  step st;
  st.operation = o.name;
  st.operation_index = op_index;
  st.inputs = inputs;
  st.before = s;

  for (std::size_t b = 0; b < o.behaviors.size(); ++b) {
    const behavior& beh = o.behaviors[b];
    if (!evaluate(beh.guard, s, inputs)) continue;

    // effects apply in order; later right-hand sides see earlier writes
    model_state after = s;
    for (const auto& a : beh.effects) {
      long long v = evaluate_raw(*a.value, after.slots, inputs);
      int slot = 0;
      type ty;
      std::string target;
      if (a.var >= 0) {
        const auto& d = m.vars[static_cast<std::size_t>(a.var)];
        slot = d.slot;
        ty = d.ty;
        target = d.name;
      } else {
        const auto& d = m.arrays[static_cast<std::size_t>(a.array)];
        long long idx = evaluate_raw(*a.index, after.slots, inputs);
        slot = d.base_slot + static_cast<int>(idx);
        ty = d.element;
        target = d.name + "[" +
                 m.enums[static_cast<std::size_t>(d.index_enum)].literals[static_cast<std::size_t>(idx)] + "]";
      }
      if (ty.is_int() && (v < ty.lo || v > ty.hi)) {
        throw model_defect(format_call(m, op_index, inputs) + ": assignment " + target + " := " +
                           std::to_string(v) + " leaves bounds [" + std::to_string(ty.lo) + ".." +
                           std::to_string(ty.hi) + "] in state {" + m.format_state(s) + "}");
      }
      after.slots[static_cast<std::size_t>(slot)] = static_cast<int>(v);
    }
    st.after = std::move(after);
    st.tags = beh.tags;
    st.message = beh.message;
    st.behavior = static_cast<int>(b);
    return st;
  }
  throw model_defect(format_call(m, op_index, inputs) + ": no behavior guard holds in state {" +
                     m.format_state(s) + "}");
}

step execute(const model& m, const model_state& s, std::string_view op_name, const valuation& inputs) {
  int idx = m.find_operation(op_name);
  if (idx < 0) throw error("unknown operation '" + std::string(op_name) + "'");
  return execute(m, s, idx, inputs);
}

std::vector<valuation> enumerate_inputs(const model& m, int op_index) {
  const operation& o = m.op(op_index);
  std::vector<valuation> out{valuation{}};
  for (const auto& p : o.params) {
    auto dom = m.domain(p.ty);
    std::vector<valuation> next;
    next.reserve(out.size() * dom.size());
    for (const auto& prefix : out) {
      for (int v : dom) {
        auto extended = prefix;
        extended.push_back(v);
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string format_call(const model& m, int op_index, const valuation& inputs) {
  const operation& o = m.op(op_index);
  std::string out = o.name + "(";
  for (std::size_t i = 0; i < inputs.size() && i < o.params.size(); ++i) {
    if (i) out += ", ";
    out += m.format({o.params[i].ty, inputs[i]});
  }
  return out + ")";
}

} // namespace propcov

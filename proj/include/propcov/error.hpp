#pragma once

#include <stdexcept>
#include <string>

namespace propcov {

/// Base class of every error raised by the toolkit.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct source_position {
  int line = 0;
  int column = 0;
};

/// Lexical or syntactic error in a model, property or suite file.
class parse_error : public error {
public:
  parse_error(const std::string& what, source_position pos, const std::string& file = {})
    : error((file.empty() ? "" : file + ":") + std::to_string(pos.line) + ":" +
            std::to_string(pos.column) + ": " + what),
      message_(what), pos_(pos) {}

  source_position position() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::string message_;
  source_position pos_;
};

/// Unknown identifier, type mismatch or misplaced construct, found statically.
class type_error : public parse_error {
public:
  using parse_error::parse_error;
};

/// The model itself is defective: no behavior guard holds, or an
/// assignment leaves its declared bounds.
class model_defect : public error {
public:
  using error::error;
};

class unsupported_combination : public error {
public:
  using error::error;
};

/// Two alpha-transitions with different targets match the same step.
class ambiguous_property : public error {
public:
  using error::error;
};

class criterion_not_applicable : public error {
public:
  using error::error;
};

class property_not_mutable : public error {
public:
  using error::error;
};

/// A suite cannot be animated on the model (unknown operation, bad input).
class replay_error : public error {
public:
  replay_error(const std::string& test, std::size_t step, const std::string& what)
    : error("test '" + test + "', step " + std::to_string(step + 1) + ": " + what),
      test_(test), step_(step) {}

  const std::string& test() const noexcept { return test_; }
  std::size_t step() const noexcept { return step_; }

private:
  std::string test_;
  std::size_t step_;
};

/// Internal consistency check failed; always a bug in the toolkit.
class invariant_violation : public error {
public:
  using error::error;
};

} // namespace propcov

#pragma once

#include "propcov/model.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace propcov {

/// Parses the declarative model format:
///
///     model ecinema;
///     enums  { MSG = { NONE, LOGIN_FIRST }; USER = { none, ALICE }; }
///     vars   { current_user : USER; }
///     arrays { stock : TITLES -> int[0..2]; }
///     init   { current_user = none; stock[*] = 2; }
///     operation login(in_user : USER) {
///       behavior {@AIM:LOG_Success} when current_user = none
///         then current_user := in_user message NONE;
///     }
///
/// Declarations must precede their use. The enumeration named `MSG`, when
/// declared, holds behavior messages. Unknown names and type errors are
/// reported as type_error with the offending line and column.
std::shared_ptr<const model> parse_model(std::string_view source);
std::shared_ptr<const model> load_model(const std::filesystem::path& path);

/// Renders a model back into the format accepted by parse_model.
std::string write_model(const model& m);

std::string read_text_file(const std::filesystem::path& path);

} // namespace propcov

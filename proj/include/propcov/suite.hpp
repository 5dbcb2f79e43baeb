#pragma once

#include "propcov/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace propcov {

/// One unanimated call as written in a suite file.
struct call {
  std::string operation;
  std::vector<std::string> args;
  source_position pos;
};

struct suite_entry {
  std::string id;
  std::string note;
  std::vector<call> calls;
};

/// Parses
///
///     test T1 "optional note" {
///       login(REGISTERED_USER, REGISTERED_PWD);
///       buyTicket(TITLE1);
///     }
///
/// States, tags and messages are never read from the file; replay
/// recomputes them.
std::vector<suite_entry> parse_suite(std::string_view source);
std::vector<suite_entry> load_suite(const std::filesystem::path& path);

/// Animates every entry from the model's initial state. Unknown operations,
/// bad arguments and model defects raise replay_error naming the step.
std::vector<test_case> replay_and_verify(const model& m, const std::vector<suite_entry>& suite);

/// Animates a sequence of (operation index, inputs) calls. Model defects
/// propagate as model_defect.
test_case animate(const model& m, std::string id, std::string note,
                  const std::vector<std::pair<int, valuation>>& calls);

/// Replays the calls of `t` on `m`, which may be a mutant of the model `t`
/// was recorded on.
test_case reanimate(const model& m, const test_case& t);

/// Renders `suite` in the file format, each step annotated with the tags
/// and message observed on `m`.
std::string write_suite(const model& m, const std::vector<test_case>& suite);

} // namespace propcov

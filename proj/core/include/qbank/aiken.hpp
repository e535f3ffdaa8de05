#pragma once

#include <string>
#include <string_view>

#include "qbank/model.hpp"

namespace qbank {

inline constexpr int kAikenMaxOptions = 10;

// Parses Aiken text: blocks of stem line(s), options "A. ..." / "A) ...",
// and an "ANSWER: X" line. Malformed blocks are dropped and reported as
// error diagnostics with line numbers. A UTF-8 BOM is tolerated.
QuestionBank parse_aiken(std::string_view source);

// Emits one block per question, options labelled A..J, blocks separated by
// one blank line, LF endings, no BOM. Throws CapabilityError for anything
// Aiken cannot carry.
std::string emit_aiken(const QuestionBank& bank);

}  // namespace qbank

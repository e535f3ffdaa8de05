#pragma once

#include <string>
#include <string_view>

#include "qbank/model.hpp"

namespace qbank {

// Serializes the bank as a Moodle XML document: <quiz> root, one
// <question type="..."> element per question, deterministic two-space
// indentation. Image payloads are embedded base64.
std::string emit_moodlexml(const QuestionBank& bank);

// Inverse of emit_moodlexml over the six supported type attributes.
// Unknown type attributes are skipped with a warning; malformed XML yields
// a single error diagnostic with its position.
QuestionBank parse_moodlexml(std::string_view source);

// <name> fallback when a question has no title: leading slice of the stem.
std::string name_from_stem(std::string_view stem);

}  // namespace qbank

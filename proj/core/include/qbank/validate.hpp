#pragma once

#include <vector>

#include "qbank/model.hpp"

namespace qbank {

// Fraction sums are checked within +/- 0.1 percentage points; Moodle's
// grade dropdown notoriously needs 33.333 x 3 to pass.
inline constexpr double kFractionSumTolerance = 0.1;

// Pure invariant check; violations come back as diagnostics, the bank is
// never mutated. Line numbers point at the question's source line when the
// bank was parsed from text.
std::vector<Diagnostic> validate(const QuestionBank& bank);

}  // namespace qbank

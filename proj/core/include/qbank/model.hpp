#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qbank {

enum class Severity { error, warning, info };

// A structured parse/validation finding. Line and column are 1-based;
// 0 means "unknown".
struct Diagnostic {
    Severity severity = Severity::error;
    int line = 0;
    int column = 0;
    std::string code;
    std::string message;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::error) return true;
    return false;
}

enum class TextFormat { plain, html };

// An image (or other file) referenced from question text. The payload is
// present only when the bytes have been resolved (zip unbundling, XML
// base64 import); plain text parsing yields name-only refs.
struct MediaRef {
    std::string name;
    std::optional<std::vector<std::uint8_t>> payload;
};

struct Answer {
    std::string text;
    double fraction = 0.0;      // percent in [-100, 100]
    std::string feedback;
};

struct TrueFalseBody {
    bool answer = true;
};

struct MultipleChoiceBody {
    bool single = true;
    std::vector<Answer> answers;
};

struct MatchPair {
    std::string premise;
    std::string response;
};

struct MatchingBody {
    std::vector<MatchPair> pairs;
    std::vector<std::string> extra_responses;
};

// Numeric answer spec. Exact, inclusive min..max range, and value with
// symmetric tolerance all canonicalize to value +/- tol for comparison.
struct NumericExact { double value = 0.0; };
struct NumericRange { double min = 0.0; double max = 0.0; };
struct NumericTolerance { double value = 0.0; double tol = 0.0; };
using NumericSpec = std::variant<NumericExact, NumericRange, NumericTolerance>;

struct NumericalBody {
    std::vector<NumericSpec> specs;
};

struct ShortAnswerBody {
    std::vector<Answer> answers;
};

struct EssayBody {};

using QuestionBody = std::variant<TrueFalseBody, MultipleChoiceBody, MatchingBody,
                                  NumericalBody, ShortAnswerBody, EssayBody>;

enum class QuestionKind { truefalse, multichoice, matching, numerical, shortanswer, essay };

QuestionKind kind_of(const QuestionBody& body);
std::string_view kind_name(QuestionKind k);

struct Question {
    std::optional<std::string> title;
    std::string stem;
    TextFormat stem_format = TextFormat::plain;
    std::string general_feedback;
    double penalty = 0.1;
    bool hidden = false;
    std::vector<MediaRef> media;
    QuestionBody body;

    // Source line the question started on, when parsed from text.
    // Not part of the question's identity.
    int source_line = 0;
};

struct QuestionBank {
    std::vector<Question> questions;
    std::vector<Diagnostic> diagnostics;
};

// Base class for hard failures (capability refusals, media resolution,
// archive corruption). Recoverable findings travel as Diagnostics instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapabilityError : Error {
    CapabilityError(std::size_t question_index, std::string reason_text)
        : Error("question " + std::to_string(question_index + 1) + ": " + reason_text),
          index(question_index), reason(std::move(reason_text)) {}
    std::size_t index;
    std::string reason;
};

std::string trimmed(std::string_view s);

// Shortest decimal representation that round-trips the value.
std::string format_number(double value);

// (value, tol) canonical form shared by all three numeric spec shapes.
std::pair<double, double> numeric_canonical(const NumericSpec& spec);

// Structural equality under whitespace normalization: stems, titles, answer
// texts and feedback compare after leading/trailing trim; numeric values
// within a small epsilon; media payloads compare only when both sides carry
// bytes. Source lines are ignored.
bool equals(const Question& a, const Question& b);
bool equals(const QuestionBank& a, const QuestionBank& b);

}  // namespace qbank

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qbank/model.hpp"

namespace qbank {

enum class GiftTokenKind {
    text_run,     // literal text, escapes already resolved
    open_brace,
    close_brace,
    equals,
    tilde,
    hash,
    arrow,        // ->
    title_delim,  // ::
    weight,       // %number%, lexeme holds the number
    format_prefix,  // [html]
    comment,      // whole //-line, lexeme without the slashes
    blank_line,
};

struct GiftToken {
    GiftTokenKind kind;
    std::string lexeme;
    int line = 1;
    int column = 1;
};

struct GiftTokenStream {
    std::vector<GiftToken> tokens;
    std::vector<Diagnostic> diagnostics;
};

// Lexes GIFT source. Backslash escapes are resolved inside text runs,
// //-lines become comment tokens, empty lines blank-line tokens. A UTF-8
// BOM is stripped.
GiftTokenStream tokenize_gift(std::string_view source);

QuestionBank parse_gift(std::string_view source);

// One blank line between questions, titles as ::title::, specials
// re-escaped, LF endings, no BOM. Throws CapabilityError when a question
// fails the GIFT capability check.
std::string emit_gift(const QuestionBank& bank);

// Backslash-escapes the GIFT special characters plus the :: and -> digraphs.
std::string gift_escape(std::string_view text);
std::string gift_unescape(std::string_view text);

enum class FormatPolicy { passthrough, plain };

// passthrough returns the input unchanged; plain strips the basic HTML
// formatting tag set (h1, p, br, hr, b, i, sub, sup, ol, ul, li, a),
// keeping inner text. Unknown tags are left alone.
std::string strip_formatting(std::string_view text, FormatPolicy policy);

}  // namespace qbank

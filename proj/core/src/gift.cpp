#include "qbank/gift.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "qbank/capability.hpp"
#include "qbank/mediapack.hpp"

namespace qbank {

namespace {

constexpr std::string_view kEscapable = "\\{}=~#:->";

bool is_escapable(char c) { return kEscapable.find(c) != std::string_view::npos; }

std::string_view strip_bom(std::string_view s) {
    if (s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
    return s;
}

std::string fmt_number(double v) { return format_number(v); }

// Weights are written with at most 5 significant digits ("33.333").
std::string fmt_weight(double v) {
    if (v != 0.0) {
        double scale = std::pow(10.0, 4 - std::floor(std::log10(std::fabs(v))));
        v = std::round(v * scale) / scale;
    }
    return fmt_number(v);
}

}  // namespace

std::string gift_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    char prev = '\0';
    for (char c : text) {
        if (c == '\\' || c == '{' || c == '}' || c == '=' || c == '~' || c == '#') {
            out += '\\';
        } else if (c == ':' && prev == ':') {
            out += '\\';  // break a :: pair
        } else if (c == '>' && prev == '-') {
            out += '\\';  // break a -> pair
        }
        out += c;
        prev = c;
    }
    return out;
}

std::string gift_unescape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && is_escapable(text[i + 1])) {
            out += text[++i];
        } else {
            out += text[i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;
    GiftTokenStream out;

    std::string acc;           // pending text run
    int acc_line = 1, acc_col = 1;
    std::string pending_ws;    // whitespace held back while a weight may follow
    bool awaiting_weight = false;

    bool at_end() const { return pos >= src.size(); }
    char cur() const { return src[pos]; }
    char peek(std::size_t n = 1) const { return pos + n < src.size() ? src[pos + n] : '\0'; }

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void text_char(char c, int l, int ln, int cn) {
        if (!pending_ws.empty()) {
            if (acc.empty()) { acc_line = l; acc_col = ln; }
            acc += pending_ws;
            pending_ws.clear();
        }
        if (acc.empty()) { acc_line = ln ? ln : l; acc_col = cn; }
        acc += c;
        awaiting_weight = false;
    }

    void flush_text() {
        if (!pending_ws.empty()) {
            if (acc.empty()) { acc_line = line; acc_col = col; }
            acc += pending_ws;
            pending_ws.clear();
        }
        if (!acc.empty()) {
            out.tokens.push_back({GiftTokenKind::text_run, acc, acc_line, acc_col});
            acc.clear();
        }
    }

    void emit(GiftTokenKind kind, std::string lexeme, int l, int c) {
        flush_text();
        out.tokens.push_back({kind, std::move(lexeme), l, c});
        awaiting_weight = kind == GiftTokenKind::equals || kind == GiftTokenKind::tilde;
    }

    void error(int l, int c, const char* code, std::string msg) {
        out.diagnostics.push_back({Severity::error, l, c, code, std::move(msg)});
    }

    bool at_line_start() const { return col == 1; }

    // Returns true when the rest of the current line is blank or a comment
    // and has been consumed.
    bool try_line_token() {
        std::size_t p = pos;
        while (p < src.size() && (src[p] == ' ' || src[p] == '\t' || src[p] == '\r')) ++p;
        if (p >= src.size() || src[p] == '\n') {
            flush_text();
            int l = line;
            while (pos < src.size() && src[pos] != '\n') advance();
            if (pos < src.size()) advance();
            out.tokens.push_back({GiftTokenKind::blank_line, "", l, 1});
            return true;
        }
        if (src[p] == '/' && p + 1 < src.size() && src[p + 1] == '/') {
            flush_text();
            int l = line;
            std::size_t start = p + 2;
            std::size_t end = src.find('\n', start);
            if (end == std::string_view::npos) end = src.size();
            out.tokens.push_back(
                {GiftTokenKind::comment, std::string(src.substr(start, end - start)), l, 1});
            while (pos < src.size() && src[pos] != '\n') advance();
            if (pos < src.size()) advance();
            return true;
        }
        return false;
    }

    bool try_weight() {
        // at a '%', last marker was = or ~ with only whitespace in between
        std::size_t p = pos + 1;
        while (p < src.size() && (src[p] == ' ' || src[p] == '\t')) ++p;
        std::size_t num_begin = p;
        if (p < src.size() && (src[p] == '+' || src[p] == '-')) ++p;
        std::size_t digits = p;
        while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
        if (p == digits) return false;  // no digits: plain text
        if (p < src.size() && src[p] == '.') {
            ++p;
            while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
        }
        std::size_t num_end = p;
        while (p < src.size() && (src[p] == ' ' || src[p] == '\t')) ++p;
        if (p >= src.size() || src[p] != '%') {
            error(line, col, "gift.bad-weight", "malformed %weight% after answer marker");
            return false;
        }
        int l = line, c = col;
        std::string number(src.substr(num_begin, num_end - num_begin));
        while (pos <= p) advance();
        pending_ws.clear();
        emit(GiftTokenKind::weight, std::move(number), l, c);
        awaiting_weight = false;
        return true;
    }

    void run() {
        while (!at_end()) {
            if (at_line_start() && try_line_token()) continue;

            char c = cur();
            int l = line, cl = col;
            switch (c) {
                case '\\':
                    if (pos + 1 >= src.size()) {
                        error(l, cl, "gift.unterminated-escape",
                              "backslash at end of input");
                        advance();
                        break;
                    }
                    if (is_escapable(peek())) {
                        advance();
                        text_char(cur(), l, l, cl);
                        advance();
                    } else {
                        text_char('\\', l, l, cl);
                        advance();
                    }
                    break;
                case '{': emit(GiftTokenKind::open_brace, "{", l, cl); advance(); break;
                case '}': emit(GiftTokenKind::close_brace, "}", l, cl); advance(); break;
                case '=': emit(GiftTokenKind::equals, "=", l, cl); advance(); break;
                case '~': emit(GiftTokenKind::tilde, "~", l, cl); advance(); break;
                case '#': emit(GiftTokenKind::hash, "#", l, cl); advance(); break;
                case ':':
                    if (peek() == ':') {
                        emit(GiftTokenKind::title_delim, "::", l, cl);
                        advance();
                        advance();
                    } else {
                        text_char(':', l, l, cl);
                        advance();
                    }
                    break;
                case '-':
                    if (peek() == '>') {
                        emit(GiftTokenKind::arrow, "->", l, cl);
                        advance();
                        advance();
                    } else {
                        text_char('-', l, l, cl);
                        advance();
                    }
                    break;
                case '[':
                    if (src.substr(pos, 6) == "[html]") {
                        emit(GiftTokenKind::format_prefix, "[html]", l, cl);
                        for (int i = 0; i < 6; ++i) advance();
                    } else {
                        text_char('[', l, l, cl);
                        advance();
                    }
                    break;
                case '%':
                    if (awaiting_weight && try_weight()) break;
                    text_char('%', l, l, cl);
                    advance();
                    break;
                case ' ':
                case '\t':
                    if (awaiting_weight) {
                        pending_ws += c;
                    } else {
                        text_char(c, l, l, cl);
                    }
                    advance();
                    break;
                case '\n':
                    pending_ws.clear();
                    awaiting_weight = false;
                    text_char('\n', l, l, cl);
                    advance();
                    break;
                default:
                    text_char(c, l, l, cl);
                    advance();
                    break;
            }
        }
        flush_text();
    }
};

}  // namespace

GiftTokenStream tokenize_gift(std::string_view source) {
    Lexer lexer;
    lexer.src = strip_bom(source);
    lexer.run();
    return std::move(lexer.out);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

// Surface text of a token when it appears where plain text is expected.
std::string surface(const GiftToken& t) {
    switch (t.kind) {
        case GiftTokenKind::weight: return "%" + t.lexeme + "%";
        default: return t.lexeme;
    }
}

struct BodyEntry {
    char marker = '=';  // '=' or '~'
    bool has_weight = false;
    double weight = 0.0;
    std::string text;          // before any arrow
    bool has_arrow = false;
    std::string arrow_text;    // after the first arrow
    bool has_feedback = false;
    std::string feedback;
    int line = 1;
};

struct BraceBody {
    std::string leading;   // text before the first marker
    bool leading_hash = false;  // body starts with '#': numerical
    std::vector<BodyEntry> entries;
    int open_line = 1;
};

struct GiftParser {
    const std::vector<GiftToken>& toks;
    std::vector<Diagnostic> lex_errors;
    QuestionBank bank;
    std::size_t pos = 0;

    bool at_end() const { return pos >= toks.size(); }
    const GiftToken& cur() const { return toks[pos]; }

    void error(int line, int col, const char* code, std::string msg) {
        bank.diagnostics.push_back({Severity::error, line, col, code, std::move(msg)});
    }

    // Skips forward to the next question boundary: a blank line outside braces.
    void resync() {
        int depth = 0;
        while (!at_end()) {
            switch (cur().kind) {
                case GiftTokenKind::open_brace: ++depth; break;
                case GiftTokenKind::close_brace: --depth; break;
                case GiftTokenKind::blank_line:
                    if (depth <= 0) return;
                    break;
                default: break;
            }
            ++pos;
        }
    }

    bool parse_question() {
        Question q;
        q.source_line = cur().line;
        int last_line = cur().line;

        // optional ::title:: and [html] prefix, in either order
        bool saw_title = false, saw_format = false;
        while (!at_end()) {
            if (cur().kind == GiftTokenKind::format_prefix && !saw_format) {
                saw_format = true;
                q.stem_format = TextFormat::html;
                ++pos;
                continue;
            }
            if (cur().kind == GiftTokenKind::title_delim && !saw_title && !saw_format_text(q)) {
                ++pos;
                std::string title;
                bool closed = false;
                while (!at_end() && cur().kind != GiftTokenKind::blank_line) {
                    if (cur().kind == GiftTokenKind::title_delim) {
                        closed = true;
                        ++pos;
                        break;
                    }
                    if (cur().kind != GiftTokenKind::comment) title += surface(cur());
                    ++pos;
                }
                if (!closed) {
                    error(q.source_line, 1, "gift.bad-title", "unterminated ::title::");
                    resync();
                    return false;
                }
                q.title = trimmed(title);
                saw_title = true;
                continue;
            }
            break;
        }

        // stem up to the opening brace
        std::string stem;
        bool have_brace = false;
        while (!at_end()) {
            const GiftToken& t = cur();
            if (t.kind == GiftTokenKind::blank_line) break;
            if (t.kind == GiftTokenKind::open_brace) {
                have_brace = true;
                break;
            }
            if (t.kind == GiftTokenKind::close_brace) {
                error(t.line, t.column, "gift.unbalanced-braces", "'}' without matching '{'");
                resync();
                return false;
            }
            last_line = t.line;
            if (t.kind != GiftTokenKind::comment) stem += surface(t);
            ++pos;
        }
        if (!have_brace) {
            error(q.source_line, 1, "gift.missing-braces",
                  "question has no { answers } block");
            resync();
            return false;
        }

        BraceBody body;
        body.open_line = cur().line;
        ++pos;  // consume '{'
        if (!parse_brace_body(body)) return false;

        q.stem = trimmed(stem);
        if (q.stem.empty()) {
            error(q.source_line, 1, "gift.empty-stem", "question has no stem text");
            return false;
        }
        if (!build_body(q, body)) return false;

        // trailing text after '}' up to the blank line: whitespace only
        while (!at_end() && cur().kind != GiftTokenKind::blank_line) {
            if (cur().kind == GiftTokenKind::text_run && trimmed(cur().lexeme).empty()) {
                ++pos;
                continue;
            }
            bank.diagnostics.push_back({Severity::warning, cur().line, cur().column,
                                        "gift.trailing-text",
                                        "text after '}' is ignored"});
            ++pos;
        }

        if (has_lex_error_between(q.source_line, last_question_line())) return false;

        for (auto& name : scan_question_media_names(q)) q.media.push_back({std::move(name), {}});
        bank.questions.push_back(std::move(q));
        return true;
    }

    // `[html]` before `::` must not trigger when stem text was already seen;
    // the loop structure above guarantees that, so this is a placeholder
    // for the title guard.
    bool saw_format_text(const Question&) const { return false; }

    int last_question_line() const {
        return pos > 0 ? toks[pos - 1].line : 1;
    }

    bool has_lex_error_between(int first, int last) {
        for (const auto& d : lex_errors)
            if (d.line >= first && d.line <= last) return true;
        return false;
    }

    bool parse_brace_body(BraceBody& body) {
        // leading part before the first = or ~
        bool seen_marker = false;
        BodyEntry* entry = nullptr;
        enum class Part { text, arrow, feedback } part = Part::text;

        auto append = [&](const std::string& s) {
            if (!entry) {
                body.leading += s;
                return;
            }
            switch (part) {
                case Part::text: entry->text += s; break;
                case Part::arrow: entry->arrow_text += s; break;
                case Part::feedback: entry->feedback += s; break;
            }
        };

        while (true) {
            if (at_end()) {
                error(body.open_line, 1, "gift.unbalanced-braces",
                      "'{' is never closed");
                return false;
            }
            const GiftToken& t = cur();
            switch (t.kind) {
                case GiftTokenKind::close_brace:
                    ++pos;
                    return true;
                case GiftTokenKind::blank_line:
                    error(t.line, t.column, "gift.blank-in-braces",
                          "a question can not contain empty lines");
                    resync();
                    return false;
                case GiftTokenKind::open_brace:
                    error(t.line, t.column, "gift.unbalanced-braces",
                          "nested '{' inside answers block");
                    resync();
                    return false;
                case GiftTokenKind::comment:
                    ++pos;
                    break;
                case GiftTokenKind::equals:
                case GiftTokenKind::tilde: {
                    body.entries.push_back({});
                    entry = &body.entries.back();
                    entry->marker = t.kind == GiftTokenKind::equals ? '=' : '~';
                    entry->line = t.line;
                    part = Part::text;
                    seen_marker = true;
                    ++pos;
                    if (!at_end() && cur().kind == GiftTokenKind::weight) {
                        entry->has_weight = true;
                        entry->weight = std::strtod(cur().lexeme.c_str(), nullptr);
                        ++pos;
                    }
                    break;
                }
                case GiftTokenKind::hash:
                    if (!seen_marker && !entry && trimmed(body.leading).empty() &&
                        !body.leading_hash) {
                        body.leading_hash = true;  // numerical marker
                    } else if (entry && part != Part::feedback) {
                        entry->has_feedback = true;
                        part = Part::feedback;
                    } else {
                        append("#");
                    }
                    ++pos;
                    break;
                case GiftTokenKind::arrow:
                    if (entry && part == Part::text) {
                        entry->has_arrow = true;
                        part = Part::arrow;
                    } else {
                        append("->");
                    }
                    ++pos;
                    break;
                default:
                    append(surface(t));
                    ++pos;
                    break;
            }
        }
    }

    bool parse_number(const std::string& text, int line, double* out_value) {
        std::string t = trimmed(text);
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (t.empty() || end != t.c_str() + t.size()) {
            error(line, 1, "gift.bad-numeric", "cannot parse numeric value '" + t + "'");
            return false;
        }
        *out_value = v;
        return true;
    }

    bool parse_numeric_spec(const std::string& text, int line, NumericSpec* out) {
        std::string t = trimmed(text);
        if (auto dots = t.find(".."); dots != std::string::npos) {
            double lo, hi;
            if (!parse_number(t.substr(0, dots), line, &lo) ||
                !parse_number(t.substr(dots + 2), line, &hi))
                return false;
            *out = NumericRange{lo, hi};
            return true;
        }
        if (auto colon = t.find(':'); colon != std::string::npos) {
            double v, tol;
            if (!parse_number(t.substr(0, colon), line, &v) ||
                !parse_number(t.substr(colon + 1), line, &tol))
                return false;
            *out = NumericTolerance{v, tol};
            return true;
        }
        double v;
        if (!parse_number(t, line, &v)) return false;
        *out = NumericExact{v};
        return true;
    }

    bool build_body(Question& q, BraceBody& body) {
        const int line = body.open_line;

        if (body.leading_hash) {
            NumericalBody num;
            if (body.entries.empty()) {
                NumericSpec spec;
                if (!parse_numeric_spec(body.leading, line, &spec)) return false;
                num.specs.push_back(spec);
            } else {
                for (const auto& e : body.entries) {
                    if (e.marker != '=' || e.has_arrow) {
                        error(e.line, 1, "gift.bad-numeric",
                              "numerical entries must use '='");
                        return false;
                    }
                    NumericSpec spec;
                    if (!parse_numeric_spec(e.text, e.line, &spec)) return false;
                    num.specs.push_back(spec);
                }
            }
            q.body = std::move(num);
            return true;
        }

        if (body.entries.empty()) {
            std::string content = trimmed(body.leading);
            if (content.empty()) {
                q.body = EssayBody{};
                return true;
            }
            if (content == "TRUE" || content == "T") {
                q.body = TrueFalseBody{true};
                return true;
            }
            if (content == "FALSE" || content == "F") {
                q.body = TrueFalseBody{false};
                return true;
            }
            error(line, 1, "gift.unclassified",
                  "cannot classify answers block '" + content + "'");
            return false;
        }

        if (!trimmed(body.leading).empty()) {
            bank.diagnostics.push_back({Severity::warning, line, 1, "gift.stray-text",
                                        "text before the first answer marker is ignored"});
        }

        bool any_arrow = false, any_tilde = false;
        for (const auto& e : body.entries) {
            any_arrow |= e.has_arrow;
            any_tilde |= e.marker == '~';
        }

        if (any_arrow) {
            if (any_tilde) {
                error(line, 1, "gift.bad-matching", "matching entries must use '='");
                return false;
            }
            MatchingBody m;
            for (const auto& e : body.entries) {
                if (!e.has_arrow) {
                    error(e.line, 1, "gift.bad-matching",
                          "matching entry is missing '->'");
                    return false;
                }
                std::string premise = trimmed(e.text);
                std::string response = trimmed(e.arrow_text);
                if (response.empty()) {
                    error(e.line, 1, "gift.matching-incomplete",
                          "matching entry has no response after '->'");
                    return false;
                }
                if (premise.empty())
                    m.extra_responses.push_back(std::move(response));
                else
                    m.pairs.push_back({std::move(premise), std::move(response)});
            }
            q.body = std::move(m);
            return true;
        }

        auto to_answer = [](const BodyEntry& e, double default_fraction) {
            Answer a;
            a.text = trimmed(e.text);
            a.fraction = e.has_weight ? e.weight : default_fraction;
            if (e.has_feedback) a.feedback = trimmed(e.feedback);
            return a;
        };

        if (!any_tilde) {
            ShortAnswerBody sa;
            for (const auto& e : body.entries) sa.answers.push_back(to_answer(e, 100.0));
            q.body = std::move(sa);
            return true;
        }

        MultipleChoiceBody mc;
        for (const auto& e : body.entries)
            mc.answers.push_back(to_answer(e, e.marker == '=' ? 100.0 : 0.0));
        std::size_t full = 0;
        bool others_zero = true;
        for (const auto& a : mc.answers) {
            if (std::fabs(a.fraction - 100.0) <= 1e-9)
                ++full;
            else if (std::fabs(a.fraction) > 1e-9)
                others_zero = false;
        }
        mc.single = full == 1 && others_zero;
        q.body = std::move(mc);
        return true;
    }

    void run() {
        while (!at_end()) {
            if (cur().kind == GiftTokenKind::blank_line ||
                cur().kind == GiftTokenKind::comment) {
                ++pos;
                continue;
            }
            parse_question();
            // consume the separating blank line, if any
            while (!at_end() && cur().kind == GiftTokenKind::blank_line) ++pos;
        }
    }
};

}  // namespace

QuestionBank parse_gift(std::string_view source) {
    GiftTokenStream stream = tokenize_gift(source);
    GiftParser parser{stream.tokens};
    parser.lex_errors = stream.diagnostics;
    parser.run();
    QuestionBank bank = std::move(parser.bank);
    for (auto& d : stream.diagnostics) bank.diagnostics.push_back(std::move(d));
    return bank;
}

// ---------------------------------------------------------------------------
// Emitter

namespace {

void emit_numeric_spec(std::string& out, const NumericSpec& spec) {
    if (const auto* e = std::get_if<NumericExact>(&spec)) {
        out += fmt_number(e->value);
    } else if (const auto* r = std::get_if<NumericRange>(&spec)) {
        out += fmt_number(r->min);
        out += "..";
        out += fmt_number(r->max);
    } else {
        const auto& t = std::get<NumericTolerance>(spec);
        out += fmt_number(t.value);
        out += ':';
        out += fmt_number(t.tol);
    }
}

void emit_entry_suffix(std::string& out, const Answer& a) {
    if (!trimmed(a.feedback).empty()) {
        out += " # ";
        out += gift_escape(a.feedback);
    }
}

struct GiftBodyEmitter {
    std::string& out;

    void operator()(const TrueFalseBody& tf) const {
        out += tf.answer ? "{TRUE}" : "{FALSE}";
    }

    void operator()(const EssayBody&) const { out += "{}"; }

    void operator()(const NumericalBody& n) const {
        out += "{#";
        if (n.specs.size() == 1) {
            emit_numeric_spec(out, n.specs[0]);
        } else {
            for (const auto& s : n.specs) {
                out += " =";
                emit_numeric_spec(out, s);
            }
        }
        out += '}';
    }

    void operator()(const MultipleChoiceBody& mc) const {
        out += "{\n";
        for (const auto& a : mc.answers) {
            if (mc.single) {
                out += std::fabs(a.fraction - 100.0) <= 1e-9 ? "= " : "~ ";
            } else {
                out += "~%";
                out += fmt_weight(a.fraction);
                out += "% ";
            }
            out += gift_escape(a.text);
            emit_entry_suffix(out, a);
            out += '\n';
        }
        out += '}';
    }

    void operator()(const ShortAnswerBody& sa) const {
        out += "{\n";
        for (const auto& a : sa.answers) {
            out += '=';
            if (std::fabs(a.fraction - 100.0) > 1e-9) {
                out += '%';
                out += fmt_weight(a.fraction);
                out += '%';
            }
            out += ' ';
            out += gift_escape(a.text);
            emit_entry_suffix(out, a);
            out += '\n';
        }
        out += '}';
    }

    void operator()(const MatchingBody& m) const {
        out += "{\n";
        for (const auto& p : m.pairs) {
            out += "= ";
            out += gift_escape(p.premise);
            out += " -> ";
            out += gift_escape(p.response);
            out += '\n';
        }
        for (const auto& r : m.extra_responses) {
            out += "= -> ";
            out += gift_escape(r);
            out += '\n';
        }
        out += '}';
    }
};

}  // namespace

std::string emit_gift(const QuestionBank& bank) {
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        CapabilityCheck check = capability_check(bank.questions[i], Format::gift);
        if (!check.supported) throw CapabilityError(i, *check.reason);
    }

    std::string out;
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const Question& q = bank.questions[i];
        if (i > 0) out += '\n';
        if (q.title) {
            out += "::";
            out += gift_escape(*q.title);
            out += "::";
        }
        if (q.stem_format == TextFormat::html) out += "[html]";
        out += gift_escape(trimmed(q.stem));
        out += ' ';
        std::visit(GiftBodyEmitter{out}, q.body);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Formatting tags

std::string strip_formatting(std::string_view text, FormatPolicy policy) {
    if (policy == FormatPolicy::passthrough) return std::string(text);

    static constexpr std::string_view kTags[] = {"h1", "p",  "br", "hr", "b",  "i",
                                                 "sub", "sup", "ol", "ul", "li", "a"};
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '<') {
            out += text[i++];
            continue;
        }
        std::size_t j = i + 1;
        if (j < text.size() && text[j] == '/') ++j;
        std::size_t name_begin = j;
        while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
        std::string name;
        for (std::size_t k = name_begin; k < j; ++k)
            name += static_cast<char>(std::tolower(static_cast<unsigned char>(text[k])));
        std::size_t close = text.find('>', j);
        bool known = false;
        for (auto tag : kTags)
            if (name == tag) known = true;
        if (known && close != std::string_view::npos &&
            (j == close || text[j] == ' ' || text[j] == '/' || text[j] == '\t')) {
            i = close + 1;  // drop the tag
        } else {
            out += text[i++];
        }
    }
    return out;
}

}  // namespace qbank

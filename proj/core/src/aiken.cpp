#include "qbank/aiken.hpp"

#include <cmath>

#include "qbank/capability.hpp"

namespace qbank {

namespace {

std::string_view strip_bom(std::string_view s) {
    if (s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
    return s;
}

struct Line {
    std::string_view text;
    int number;
};

std::vector<Line> split_lines(std::string_view src) {
    std::vector<Line> lines;
    int number = 1;
    std::size_t pos = 0;
    while (pos <= src.size()) {
        std::size_t nl = src.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? src.substr(pos) : src.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (nl == std::string_view::npos) {
            if (!line.empty()) lines.push_back({line, number});
            break;
        }
        lines.push_back({line, number});
        pos = nl + 1;
        ++number;
    }
    return lines;
}

// "A. text" or "A) text"; returns the option index (A=0) or -1.
int option_index(std::string_view line, std::string_view* text_out) {
    if (line.size() < 2) return -1;
    char letter = line[0];
    if (letter < 'A' || letter > 'Z') return -1;
    if (line[1] != '.' && line[1] != ')') return -1;
    std::string_view rest = line.substr(2);
    if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    if (text_out) *text_out = rest;
    return letter - 'A';
}

// "ANSWER: X" with surrounding whitespace tolerated; keyword is uppercase.
bool answer_line(std::string_view line, char* letter_out) {
    std::string t = trimmed(line);
    if (t.rfind("ANSWER:", 0) != 0) return false;
    std::string rest = trimmed(std::string_view(t).substr(7));
    if (rest.size() != 1 || rest[0] < 'A' || rest[0] > 'Z') {
        *letter_out = '\0';
        return true;  // ANSWER line, unusable letter
    }
    *letter_out = rest[0];
    return true;
}

struct Block {
    std::vector<std::string> stem_lines;
    std::vector<std::string> options;
    int first_line = 0;
    int bad_line = 0;  // line of the first structural problem, 0 if none
    std::string bad_code;
    std::string bad_message;
    char answer = '\0';
    int answer_line_no = 0;
    bool has_answer = false;
};

void fail(Block& b, int line, const char* code, std::string msg) {
    if (b.bad_line != 0) return;
    b.bad_line = line;
    b.bad_code = code;
    b.bad_message = std::move(msg);
}

void finish_block(Block& b, QuestionBank& bank) {
    if (b.stem_lines.empty() && b.options.empty() && !b.has_answer) return;

    if (!b.has_answer)
        fail(b, b.first_line, "aiken.missing-answer", "question block has no ANSWER line");
    else if (b.answer == '\0')
        fail(b, b.answer_line_no, "aiken.bad-answer", "ANSWER line does not name a single option letter");
    if (b.bad_line == 0) {
        if (b.stem_lines.empty())
            fail(b, b.first_line, "aiken.missing-stem", "question block has no stem text");
        else if (b.options.size() < 2)
            fail(b, b.first_line, "aiken.too-few-options", "question needs at least two options");
        else if (b.options.size() > kAikenMaxOptions)
            fail(b, b.first_line, "aiken.too-many-options",
                 "the number of alternatives cannot exceed 10");
        else if (b.answer - 'A' >= static_cast<int>(b.options.size()))
            fail(b, b.answer_line_no, "aiken.answer-out-of-range",
                 std::string("ANSWER letter ") + b.answer + " has no matching option");
    }
    if (b.bad_line != 0) {
        bank.diagnostics.push_back(
            {Severity::error, b.bad_line, 1, b.bad_code, b.bad_message});
        return;
    }

    Question q;
    q.source_line = b.first_line;
    std::string stem;
    for (const auto& l : b.stem_lines) {
        if (!stem.empty()) stem += ' ';
        stem += trimmed(l);
    }
    q.stem = stem;
    MultipleChoiceBody mc;
    mc.single = true;
    for (std::size_t i = 0; i < b.options.size(); ++i) {
        Answer a;
        a.text = trimmed(b.options[i]);
        a.fraction = static_cast<int>(i) == b.answer - 'A' ? 100.0 : 0.0;
        mc.answers.push_back(std::move(a));
    }
    q.body = std::move(mc);
    bank.questions.push_back(std::move(q));
}

}  // namespace

QuestionBank parse_aiken(std::string_view source) {
    QuestionBank bank;
    Block block;
    bool in_block = false;

    for (const Line& line : split_lines(strip_bom(source))) {
        if (trimmed(line.text).empty()) {
            if (in_block) finish_block(block, bank);
            block = Block{};
            in_block = false;
            continue;
        }
        if (!in_block) {
            in_block = true;
            block.first_line = line.number;
        }
        // A fresh block after an ANSWER line, without a separating blank.
        if (block.has_answer) {
            finish_block(block, bank);
            block = Block{};
            block.first_line = line.number;
        }

        char letter = '\0';
        std::string_view option_text;
        if (answer_line(line.text, &letter)) {
            block.has_answer = true;
            block.answer = letter;
            block.answer_line_no = line.number;
        } else if (int idx = option_index(line.text, &option_text); idx >= 0) {
            if (idx != static_cast<int>(block.options.size()))
                fail(block, line.number, "aiken.option-order",
                     "option labels must be consecutive letters starting at A");
            block.options.emplace_back(option_text);
        } else if (!block.options.empty()) {
            fail(block, line.number, "aiken.malformed-line",
                 "unexpected line between options and ANSWER");
        } else {
            block.stem_lines.emplace_back(line.text);
        }
    }
    if (in_block) finish_block(block, bank);
    return bank;
}

std::string emit_aiken(const QuestionBank& bank) {
    // Refuse before writing anything.
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const Question& q = bank.questions[i];
        CapabilityCheck check = capability_check(q, Format::aiken);
        if (!check.supported) throw CapabilityError(i, *check.reason);
        const auto& mc = std::get<MultipleChoiceBody>(q.body);
        if (mc.answers.size() > kAikenMaxOptions)
            throw CapabilityError(i, "aiken allows at most 10 alternatives");
    }

    std::string out;
    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const Question& q = bank.questions[i];
        const auto& mc = std::get<MultipleChoiceBody>(q.body);
        if (i > 0) out += '\n';

        std::string stem = trimmed(q.stem);
        for (char& c : stem)
            if (c == '\n' || c == '\r') c = ' ';
        out += stem;
        out += '\n';

        char correct = 'A';
        for (std::size_t j = 0; j < mc.answers.size(); ++j) {
            char label = static_cast<char>('A' + j);
            if (std::fabs(mc.answers[j].fraction - 100.0) <= 1e-9) correct = label;
            out += label;
            out += ". ";
            std::string text = trimmed(mc.answers[j].text);
            for (char& c : text)
                if (c == '\n' || c == '\r') c = ' ';
            out += text;
            out += '\n';
        }
        out += "ANSWER: ";
        out += correct;
        out += '\n';
    }
    return out;
}

}  // namespace qbank

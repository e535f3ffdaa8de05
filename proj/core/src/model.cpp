#include "qbank/model.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace qbank {

QuestionKind kind_of(const QuestionBody& body) {
    struct Visitor {
        QuestionKind operator()(const TrueFalseBody&) const { return QuestionKind::truefalse; }
        QuestionKind operator()(const MultipleChoiceBody&) const { return QuestionKind::multichoice; }
        QuestionKind operator()(const MatchingBody&) const { return QuestionKind::matching; }
        QuestionKind operator()(const NumericalBody&) const { return QuestionKind::numerical; }
        QuestionKind operator()(const ShortAnswerBody&) const { return QuestionKind::shortanswer; }
        QuestionKind operator()(const EssayBody&) const { return QuestionKind::essay; }
    };
    return std::visit(Visitor{}, body);
}

std::string_view kind_name(QuestionKind k) {
    switch (k) {
        case QuestionKind::truefalse: return "truefalse";
        case QuestionKind::multichoice: return "multichoice";
        case QuestionKind::matching: return "matching";
        case QuestionKind::numerical: return "numerical";
        case QuestionKind::shortanswer: return "shortanswer";
        case QuestionKind::essay: return "essay";
    }
    return "unknown";
}

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string format_number(double value) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::pair<double, double> numeric_canonical(const NumericSpec& spec) {
    struct Visitor {
        std::pair<double, double> operator()(const NumericExact& e) const { return {e.value, 0.0}; }
        std::pair<double, double> operator()(const NumericRange& r) const {
            return {(r.min + r.max) / 2.0, (r.max - r.min) / 2.0};
        }
        std::pair<double, double> operator()(const NumericTolerance& t) const { return {t.value, t.tol}; }
    };
    return std::visit(Visitor{}, spec);
}

namespace {

constexpr double kEps = 1e-9;

bool near(double a, double b) { return std::fabs(a - b) <= kEps; }

bool text_eq(std::string_view a, std::string_view b) { return trimmed(a) == trimmed(b); }

bool answer_eq(const Answer& a, const Answer& b) {
    return text_eq(a.text, b.text) && near(a.fraction, b.fraction) && text_eq(a.feedback, b.feedback);
}

bool answers_eq(const std::vector<Answer>& a, const std::vector<Answer>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!answer_eq(a[i], b[i])) return false;
    return true;
}

bool body_eq(const QuestionBody& a, const QuestionBody& b) {
    if (kind_of(a) != kind_of(b)) return false;
    switch (kind_of(a)) {
        case QuestionKind::truefalse:
            return std::get<TrueFalseBody>(a).answer == std::get<TrueFalseBody>(b).answer;
        case QuestionKind::multichoice: {
            const auto& x = std::get<MultipleChoiceBody>(a);
            const auto& y = std::get<MultipleChoiceBody>(b);
            return x.single == y.single && answers_eq(x.answers, y.answers);
        }
        case QuestionKind::matching: {
            const auto& x = std::get<MatchingBody>(a);
            const auto& y = std::get<MatchingBody>(b);
            if (x.pairs.size() != y.pairs.size() || x.extra_responses.size() != y.extra_responses.size())
                return false;
            for (std::size_t i = 0; i < x.pairs.size(); ++i)
                if (!text_eq(x.pairs[i].premise, y.pairs[i].premise) ||
                    !text_eq(x.pairs[i].response, y.pairs[i].response))
                    return false;
            for (std::size_t i = 0; i < x.extra_responses.size(); ++i)
                if (!text_eq(x.extra_responses[i], y.extra_responses[i])) return false;
            return true;
        }
        case QuestionKind::numerical: {
            const auto& x = std::get<NumericalBody>(a);
            const auto& y = std::get<NumericalBody>(b);
            if (x.specs.size() != y.specs.size()) return false;
            for (std::size_t i = 0; i < x.specs.size(); ++i) {
                auto [va, ta] = numeric_canonical(x.specs[i]);
                auto [vb, tb] = numeric_canonical(y.specs[i]);
                if (!near(va, vb) || !near(ta, tb)) return false;
            }
            return true;
        }
        case QuestionKind::shortanswer:
            return answers_eq(std::get<ShortAnswerBody>(a).answers,
                              std::get<ShortAnswerBody>(b).answers);
        case QuestionKind::essay:
            return true;
    }
    return false;
}

bool media_eq(const std::vector<MediaRef>& a, const std::vector<MediaRef>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name) return false;
        if (a[i].payload && b[i].payload && *a[i].payload != *b[i].payload) return false;
    }
    return true;
}

}  // namespace

bool equals(const Question& a, const Question& b) {
    if (a.title.has_value() != b.title.has_value()) return false;
    if (a.title && !text_eq(*a.title, *b.title)) return false;
    return text_eq(a.stem, b.stem) && a.stem_format == b.stem_format &&
           text_eq(a.general_feedback, b.general_feedback) && near(a.penalty, b.penalty) &&
           a.hidden == b.hidden && media_eq(a.media, b.media) && body_eq(a.body, b.body);
}

bool equals(const QuestionBank& a, const QuestionBank& b) {
    if (a.questions.size() != b.questions.size()) return false;
    for (std::size_t i = 0; i < a.questions.size(); ++i)
        if (!equals(a.questions[i], b.questions[i])) return false;
    return true;
}

}  // namespace qbank

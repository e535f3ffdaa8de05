#include "qbank/validate.hpp"

#include <cmath>

namespace qbank {

namespace {

// Grade percentages Moodle offers in its fraction dropdown. Anything else
// is legal in a file but worth a warning.
constexpr double kStandardFractions[] = {
    100.0, 90.0, 83.33333, 80.0, 75.0, 70.0, 66.66667, 60.0, 50.0, 40.0,
    33.33333, 30.0, 25.0, 20.0, 16.66667, 14.28571, 12.5, 11.11111, 10.0, 5.0, 0.0};

bool is_standard_fraction(double f) {
    double a = std::fabs(f);
    for (double s : kStandardFractions)
        if (std::fabs(a - s) <= 0.01) return true;
    return false;
}

struct Checker {
    const Question& q;
    int line;
    std::vector<Diagnostic>& out;

    void add(Severity sev, const char* code, std::string msg) {
        out.push_back({sev, line > 0 ? line : 1, 1, code, std::move(msg)});
    }

    void check_answer_list(const std::vector<Answer>& answers) {
        for (const auto& a : answers) {
            if (trimmed(a.text).empty())
                add(Severity::error, "model.empty-answer", "answer text is empty");
            if (a.fraction < -100.0 || a.fraction > 100.0)
                add(Severity::error, "model.fraction-range",
                    "answer fraction " + std::to_string(a.fraction) + " outside [-100, 100]");
            else if (!is_standard_fraction(a.fraction))
                add(Severity::warning, "model.nonstandard-fraction",
                    "fraction is not one of Moodle's usual grade steps");
        }
    }

    void operator()(const TrueFalseBody&) {}

    void operator()(const MultipleChoiceBody& mc) {
        if (mc.answers.empty()) {
            add(Severity::error, "model.no-answers", "multichoice question has no answers");
            return;
        }
        check_answer_list(mc.answers);
        std::size_t full = 0;
        double positive_sum = 0.0;
        for (const auto& a : mc.answers) {
            if (std::fabs(a.fraction - 100.0) <= 1e-9) ++full;
            if (a.fraction > 0.0) positive_sum += a.fraction;
        }
        if (mc.single) {
            bool others_zero = true;
            for (const auto& a : mc.answers)
                if (std::fabs(a.fraction - 100.0) > 1e-9 && std::fabs(a.fraction) > 1e-9)
                    others_zero = false;
            if (full != 1 || !others_zero)
                add(Severity::error, "model.single-fraction",
                    "single-answer multichoice needs exactly one answer at 100 and the rest at 0");
        } else {
            if (full != 0)
                add(Severity::error, "model.multi-full-fraction",
                    "multi-answer multichoice must not contain a 100 fraction");
            if (std::fabs(positive_sum - 100.0) > kFractionSumTolerance)
                add(Severity::error, "model.fraction-sum",
                    "positive fractions sum to " + std::to_string(positive_sum) +
                        ", expected 100 within +/-0.1");
        }
    }

    void operator()(const MatchingBody& m) {
        if (m.pairs.size() < 2)
            add(Severity::error, "model.matching-pairs",
                "matching question needs at least 2 complete pairs");
        for (const auto& p : m.pairs)
            if (trimmed(p.premise).empty() || trimmed(p.response).empty())
                add(Severity::error, "model.matching-empty", "matching pair side is empty");
        for (const auto& r : m.extra_responses)
            if (trimmed(r).empty())
                add(Severity::error, "model.matching-empty", "extra response is empty");
    }

    void operator()(const NumericalBody& n) {
        if (n.specs.empty()) {
            add(Severity::error, "model.no-answers", "numerical question has no answer spec");
            return;
        }
        for (const auto& s : n.specs) {
            if (const auto* r = std::get_if<NumericRange>(&s)) {
                if (r->min > r->max)
                    add(Severity::error, "model.numeric-range", "numeric range has min > max");
            } else if (const auto* t = std::get_if<NumericTolerance>(&s)) {
                if (t->tol < 0.0)
                    add(Severity::error, "model.numeric-tolerance", "numeric tolerance is negative");
            }
        }
    }

    void operator()(const ShortAnswerBody& sa) {
        if (sa.answers.empty()) {
            add(Severity::error, "model.no-answers", "short-answer question has no answers");
            return;
        }
        for (const auto& a : sa.answers) {
            if (trimmed(a.text).empty())
                add(Severity::error, "model.empty-answer", "answer text is empty");
            if (a.fraction <= 0.0 || a.fraction > 100.0)
                add(Severity::error, "model.shortanswer-fraction",
                    "short-answer fraction must be in (0, 100]");
        }
    }

    void operator()(const EssayBody&) {}
};

}  // namespace

std::vector<Diagnostic> validate(const QuestionBank& bank) {
    std::vector<Diagnostic> out;
    for (const auto& q : bank.questions) {
        Checker checker{q, q.source_line, out};
        if (trimmed(q.stem).empty())
            checker.add(Severity::error, "model.empty-stem", "question stem is empty");
        if (q.penalty < 0.0 || q.penalty > 1.0)
            checker.add(Severity::error, "model.penalty-range", "penalty outside [0, 1]");
        std::visit(checker, q.body);
    }
    return out;
}

}  // namespace qbank

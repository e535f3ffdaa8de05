#include "qbank/moodlexml.hpp"

#include <cmath>
#include <cstdlib>

#include "qbank/capability.hpp"
#include "qbank/mediapack.hpp"
#include "qbank/xml.hpp"

namespace qbank {

namespace {

constexpr std::string_view kBase64Chars =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < data.size(); i += 3) {
        std::uint32_t chunk = data[i] << 16;
        if (i + 1 < data.size()) chunk |= data[i + 1] << 8;
        if (i + 2 < data.size()) chunk |= data[i + 2];
        out += kBase64Chars[(chunk >> 18) & 63];
        out += kBase64Chars[(chunk >> 12) & 63];
        out += i + 1 < data.size() ? kBase64Chars[(chunk >> 6) & 63] : '=';
        out += i + 2 < data.size() ? kBase64Chars[chunk & 63] : '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    auto value = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::vector<std::uint8_t> out;
    std::uint32_t chunk = 0;
    int bits = 0;
    for (char c : text) {
        int v = value(c);
        if (v < 0) continue;  // padding and whitespace
        chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((chunk >> bits) & 0xff));
        }
    }
    return out;
}

void add_text_element(xml::Element& parent, std::string name, std::string_view text) {
    xml::Element& el = parent.add_child(std::move(name));
    xml::Element& t = el.add_child("text");
    if (!text.empty()) t.add_text(std::string(text));
}

xml::Element& add_answer(xml::Element& parent, const Answer& a) {
    xml::Element& el = parent.add_child("answer");
    el.set_attr("fraction", format_number(a.fraction));
    el.add_child("text").add_text(a.text);
    if (!trimmed(a.feedback).empty()) {
        xml::Element& fb = el.add_child("feedback");
        fb.add_child("text").add_text(a.feedback);
    }
    return el;
}

struct XmlBodyEmitter {
    xml::Element& q;

    void operator()(const TrueFalseBody& tf) const {
        Answer yes{"true", tf.answer ? 100.0 : 0.0, ""};
        Answer no{"false", tf.answer ? 0.0 : 100.0, ""};
        add_answer(q, yes);
        add_answer(q, no);
    }

    void operator()(const MultipleChoiceBody& mc) const {
        q.add_child("single").add_text(mc.single ? "true" : "false");
        for (const auto& a : mc.answers) add_answer(q, a);
    }

    void operator()(const MatchingBody& m) const {
        auto add_pair = [&](std::string_view premise, std::string_view response) {
            xml::Element& sub = q.add_child("subquestion");
            xml::Element& t = sub.add_child("text");
            if (!premise.empty()) t.add_text(std::string(premise));
            sub.add_child("answer").add_child("text").add_text(std::string(response));
        };
        for (const auto& p : m.pairs) add_pair(p.premise, p.response);
        for (const auto& r : m.extra_responses) add_pair("", r);
    }

    void operator()(const NumericalBody& n) const {
        for (const auto& spec : n.specs) {
            auto [value, tol] = numeric_canonical(spec);
            xml::Element& a = q.add_child("answer");
            a.set_attr("fraction", "100");
            a.add_child("text").add_text(format_number(value));
            a.add_child("tolerance").add_text(format_number(tol));
        }
    }

    void operator()(const ShortAnswerBody& sa) const {
        for (const auto& a : sa.answers) add_answer(q, a);
    }

    void operator()(const EssayBody&) const {}
};

}  // namespace

std::string name_from_stem(std::string_view stem) {
    std::string s = trimmed(stem);
    if (s.size() <= 40) return s;
    std::size_t cut = 40;
    // do not cut inside a UTF-8 sequence
    while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
    return trimmed(s.substr(0, cut));
}

std::string emit_moodlexml(const QuestionBank& bank) {
    xml::Element quiz;
    quiz.name = "quiz";

    for (const Question& question : bank.questions) {
        xml::Element& q = quiz.add_child("question");
        q.set_attr("type", std::string(kind_name(kind_of(question.body))));

        add_text_element(q, "name",
                         question.title ? trimmed(*question.title)
                                        : name_from_stem(question.stem));
        xml::Element& qt = q.add_child("questiontext");
        qt.set_attr("format",
                    question.stem_format == TextFormat::html ? "html" : "plain_text");
        qt.add_child("text").add_text(trimmed(question.stem));

        add_text_element(q, "generalfeedback", question.general_feedback);
        q.add_child("penalty").add_text(format_number(question.penalty));
        q.add_child("hidden").add_text(question.hidden ? "1" : "0");

        std::visit(XmlBodyEmitter{q}, question.body);

        for (const auto& m : question.media) {
            q.add_child("image").add_text(m.name);
            if (m.payload && !m.payload->empty())
                q.add_child("image_base64").add_text(base64_encode(*m.payload));
        }
    }
    return xml::write(quiz);
}

namespace {

std::string element_text(const xml::Element& parent, std::string_view name) {
    const xml::Element* el = parent.child(name);
    if (!el) return "";
    if (const xml::Element* t = el->child("text")) return t->text();
    return el->text();
}

struct QuestionParser {
    const xml::Element& el;
    std::vector<Diagnostic>& diags;
    bool failed = false;

    void fail(const char* code, std::string msg) {
        diags.push_back({Severity::error, 1, 1, code, std::move(msg)});
        failed = true;
    }

    double fraction_of(const xml::Element& answer) {
        const std::string* attr = answer.attr("fraction");
        double f = attr ? std::strtod(attr->c_str(), nullptr) : 0.0;
        if (f < -100.0 || f > 100.0)
            fail("xml.fraction-range",
                 "answer fraction " + (attr ? *attr : std::string("?")) +
                     " outside [-100, 100]");
        return f;
    }

    Answer parse_answer(const xml::Element& a) {
        Answer answer;
        answer.fraction = fraction_of(a);
        if (const xml::Element* t = a.child("text")) answer.text = trimmed(t->text());
        if (const xml::Element* fb = a.child("feedback"))
            if (const xml::Element* t = fb->child("text")) answer.feedback = trimmed(t->text());
        return answer;
    }

    bool parse_body(const std::string& type, Question& q) {
        auto answers = el.children_named("answer");
        if (type == "truefalse") {
            bool value = false;
            for (const auto* a : answers) {
                double f = fraction_of(*a);
                const xml::Element* t = a->child("text");
                std::string text = t ? trimmed(t->text()) : "";
                for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                if (std::fabs(f - 100.0) <= 1e-9) value = text == "true";
            }
            q.body = TrueFalseBody{value};
            return !failed;
        }
        if (type == "multichoice") {
            MultipleChoiceBody mc;
            std::string single = trimmed(element_text(el, "single"));
            for (const auto* a : answers) mc.answers.push_back(parse_answer(*a));
            if (single.empty()) {
                std::size_t full = 0;
                for (const auto& a : mc.answers)
                    if (std::fabs(a.fraction - 100.0) <= 1e-9) ++full;
                mc.single = full == 1;
            } else {
                mc.single = single == "true" || single == "1";
            }
            q.body = std::move(mc);
            return !failed;
        }
        if (type == "matching") {
            MatchingBody m;
            for (const auto* sub : el.children_named("subquestion")) {
                std::string premise;
                if (const xml::Element* t = sub->child("text")) premise = trimmed(t->text());
                std::string response;
                if (const xml::Element* a = sub->child("answer"))
                    if (const xml::Element* t = a->child("text")) response = trimmed(t->text());
                if (premise.empty())
                    m.extra_responses.push_back(std::move(response));
                else
                    m.pairs.push_back({std::move(premise), std::move(response)});
            }
            q.body = std::move(m);
            return !failed;
        }
        if (type == "numerical") {
            NumericalBody n;
            for (const auto* a : answers) {
                fraction_of(*a);
                double value = 0.0, tol = 0.0;
                if (const xml::Element* t = a->child("text"))
                    value = std::strtod(trimmed(t->text()).c_str(), nullptr);
                if (const xml::Element* t = a->child("tolerance"))
                    tol = std::strtod(trimmed(t->text()).c_str(), nullptr);
                if (tol == 0.0)
                    n.specs.push_back(NumericExact{value});
                else
                    n.specs.push_back(NumericTolerance{value, tol});
            }
            q.body = std::move(n);
            return !failed;
        }
        if (type == "shortanswer") {
            ShortAnswerBody sa;
            for (const auto* a : answers) sa.answers.push_back(parse_answer(*a));
            q.body = std::move(sa);
            return !failed;
        }
        if (type == "essay") {
            q.body = EssayBody{};
            return !failed;
        }
        return false;
    }
};

}  // namespace

QuestionBank parse_moodlexml(std::string_view source) {
    QuestionBank bank;
    xml::ParseResult doc = xml::parse(source);
    if (!doc.ok) {
        bank.diagnostics.push_back({Severity::error, doc.error.line, doc.error.column,
                                    "xml.malformed", doc.error.message});
        return bank;
    }

    for (const auto& node : doc.root.children) {
        const auto* el = std::get_if<xml::Element>(&node);
        if (!el || el->name != "question") continue;

        const std::string* type = el->attr("type");
        static const char* kKnown[] = {"truefalse", "multichoice", "matching",
                                       "numerical", "shortanswer", "essay"};
        bool known = false;
        if (type)
            for (const char* k : kKnown)
                if (*type == k) known = true;
        if (!known) {
            bank.diagnostics.push_back({Severity::warning, 1, 1, "xml.unknown-type",
                                        "skipping question of unsupported type '" +
                                            (type ? *type : std::string("<none>")) + "'"});
            continue;
        }

        Question q;
        q.stem = trimmed(element_text(*el, "questiontext"));
        if (const xml::Element* qt = el->child("questiontext")) {
            const std::string* fmt = qt->attr("format");
            q.stem_format = fmt && *fmt == "html" ? TextFormat::html : TextFormat::plain;
        }
        std::string name = trimmed(element_text(*el, "name"));
        if (!name.empty() && name != name_from_stem(q.stem)) q.title = name;
        q.general_feedback = trimmed(element_text(*el, "generalfeedback"));
        if (const xml::Element* p = el->child("penalty"))
            q.penalty = std::strtod(trimmed(p->text()).c_str(), nullptr);
        if (const xml::Element* h = el->child("hidden"))
            q.hidden = trimmed(h->text()) == "1" || trimmed(h->text()) == "true";

        QuestionParser parser{*el, bank.diagnostics};
        if (!parser.parse_body(*type, q)) continue;

        // media: explicit image elements first, then tags in the texts
        std::vector<const xml::Element*> images = el->children_named("image");
        std::vector<const xml::Element*> payloads = el->children_named("image_base64");
        for (std::size_t i = 0; i < images.size(); ++i) {
            std::string name_text = trimmed(images[i]->text());
            if (name_text.empty()) continue;  // empty placeholder element
            MediaRef ref{std::move(name_text), {}};
            if (i < payloads.size()) {
                std::string b64 = trimmed(payloads[i]->text());
                if (!b64.empty()) ref.payload = base64_decode(b64);
            }
            q.media.push_back(std::move(ref));
        }
        for (const auto& scanned : scan_question_media_names(q)) {
            bool seen = false;
            for (const auto& m : q.media)
                if (m.name == scanned) seen = true;
            if (!seen) q.media.push_back({scanned, {}});
        }

        bank.questions.push_back(std::move(q));
    }
    return bank;
}

}  // namespace qbank

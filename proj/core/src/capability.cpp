#include "qbank/capability.hpp"

namespace qbank {

std::string_view format_name(Format f) {
    switch (f) {
        case Format::aiken: return "aiken";
        case Format::gift: return "gift";
        case Format::moodlexml: return "moodlexml";
    }
    return "unknown";
}

std::optional<Format> format_from_name(std::string_view name) {
    if (name == "aiken") return Format::aiken;
    if (name == "gift") return Format::gift;
    if (name == "moodlexml" || name == "xml") return Format::moodlexml;
    return std::nullopt;
}

namespace {

FormatCapability make_aiken() {
    FormatCapability c;
    c.format = Format::aiken;
    for (auto k : {QuestionKind::truefalse, QuestionKind::matching, QuestionKind::numerical,
                   QuestionKind::shortanswer, QuestionKind::essay})
        c.kinds[k] = false;
    c.kinds[QuestionKind::multichoice] = true;  // single-correct only
    c.features = {{Feature::media, false}, {Feature::titles, false},
                  {Feature::weights, false}, {Feature::feedback, false}};
    return c;
}

FormatCapability make_gift() {
    FormatCapability c;
    c.format = Format::gift;
    for (auto k : {QuestionKind::truefalse, QuestionKind::multichoice, QuestionKind::matching,
                   QuestionKind::numerical, QuestionKind::shortanswer, QuestionKind::essay})
        c.kinds[k] = true;
    c.features = {{Feature::media, true}, {Feature::titles, true},
                  {Feature::weights, true}, {Feature::feedback, true}};
    c.media_requires_zip = true;
    return c;
}

FormatCapability make_moodlexml() {
    FormatCapability c = make_gift();
    c.format = Format::moodlexml;
    c.media_requires_zip = false;
    return c;
}

}  // namespace

const FormatCapability& capability_of(Format f) {
    static const FormatCapability aiken = make_aiken();
    static const FormatCapability gift = make_gift();
    static const FormatCapability xml = make_moodlexml();
    switch (f) {
        case Format::aiken: return aiken;
        case Format::gift: return gift;
        case Format::moodlexml: return xml;
    }
    return gift;
}

CapabilityCheck capability_check(const Question& q, Format target) {
    const FormatCapability& cap = capability_of(target);
    QuestionKind kind = kind_of(q.body);

    CapabilityCheck out;
    if (!cap.kinds.at(kind)) {
        out.supported = false;
        out.reason = std::string(format_name(target)) + " cannot carry " +
                     std::string(kind_name(kind)) + " questions";
        return out;
    }
    if (kind == QuestionKind::multichoice && target == Format::aiken &&
        !std::get<MultipleChoiceBody>(q.body).single) {
        out.supported = false;
        out.reason = "aiken cannot carry multichoice questions with several correct answers";
        return out;
    }
    if (!q.media.empty()) {
        if (!cap.features.at(Feature::media)) {
            out.supported = false;
            out.reason = std::string(format_name(target)) + " cannot carry media";
            return out;
        }
        out.media_needs_zip = cap.media_requires_zip;
    }
    return out;
}

}  // namespace qbank

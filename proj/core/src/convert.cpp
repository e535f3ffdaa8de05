#include "qbank/convert.hpp"

#include "qbank/aiken.hpp"
#include "qbank/gift.hpp"
#include "qbank/mediapack.hpp"
#include "qbank/moodlexml.hpp"

namespace qbank {

namespace {

// Aiken-specific lossy adjustments: flatten formatting, drop titles.
Question flatten_for_aiken(const Question& q, std::size_t index, ConversionReport& report) {
    Question out = q;
    int line = q.source_line > 0 ? q.source_line : 1;
    if (out.title) {
        report.warnings.push_back({Severity::warning, line, 1, "convert.title-dropped",
                                   "question " + std::to_string(index + 1) +
                                       ": aiken has no title syntax, title dropped"});
        out.title.reset();
    }
    if (out.stem_format == TextFormat::html) {
        report.warnings.push_back({Severity::warning, line, 1, "convert.formatting-stripped",
                                   "question " + std::to_string(index + 1) +
                                       ": formatting tags stripped for aiken"});
        out.stem = strip_formatting(out.stem, FormatPolicy::plain);
        auto* mc = std::get_if<MultipleChoiceBody>(&out.body);
        if (mc)
            for (auto& a : mc->answers) a.text = strip_formatting(a.text, FormatPolicy::plain);
        out.stem_format = TextFormat::plain;
    }
    return out;
}

bool media_payloads_available(const QuestionBank& bank) {
    std::vector<CollectedMediaRef> refs = collect_media_refs(bank);
    for (const auto& ref : refs) {
        bool found = false;
        for (const auto& q : bank.questions)
            for (const auto& m : q.media)
                if (m.name == ref.name && m.payload) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace

ConversionResult convert(const QuestionBank& bank, Format target,
                         const ConversionPolicy& policy, const ConvertOptions& options) {
    ConversionResult result;
    QuestionBank kept;

    for (std::size_t i = 0; i < bank.questions.size(); ++i) {
        const Question& q = bank.questions[i];
        CapabilityCheck check = capability_check(q, target);
        bool too_many_options = false;
        if (check.supported && target == Format::aiken) {
            const auto* mc = std::get_if<MultipleChoiceBody>(&q.body);
            too_many_options = mc && mc->answers.size() > kAikenMaxOptions;
        }
        if (!check.supported || too_many_options) {
            std::string reason =
                too_many_options ? "aiken allows at most 10 alternatives" : *check.reason;
            if (policy.mode == ConversionMode::strict ||
                policy.on_unsupported == OnUnsupported::fail)
                throw CapabilityError(i, reason);
            result.report.skipped.push_back({i, reason});
            int line = q.source_line > 0 ? q.source_line : 1;
            result.report.warnings.push_back(
                {Severity::warning, line, 1, "convert.skipped",
                 "question " + std::to_string(i + 1) + " skipped: " + reason});
            continue;
        }
        kept.questions.push_back(target == Format::aiken
                                     ? flatten_for_aiken(q, i, result.report)
                                     : q);
    }
    result.report.converted = kept.questions.size();

    switch (target) {
        case Format::aiken:
            result.text = emit_aiken(kept);
            break;
        case Format::moodlexml:
            result.text = emit_moodlexml(kept);
            break;
        case Format::gift: {
            bool has_media = !collect_media_refs(kept).empty();
            if (has_media && (options.media_dir || media_payloads_available(kept))) {
                result.archive = bundle_gift_media(
                    kept, options.media_dir.value_or(std::filesystem::path{}),
                    options.media_folder);
                result.is_archive = true;
            } else {
                if (has_media)
                    result.report.warnings.push_back(
                        {Severity::warning, 1, 1, "convert.media-not-bundled",
                         "media referenced but no media directory or payloads available; "
                         "emitting plain GIFT text"});
                result.text = emit_gift(kept);
            }
            break;
        }
    }
    return result;
}

}  // namespace qbank

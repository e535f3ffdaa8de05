#include <doctest.h>

#include "qbank/aiken.hpp"
#include "qbank/convert.hpp"
#include "qbank/gift.hpp"
#include "qbank/mediapack.hpp"
#include "qbank/moodlexml.hpp"

#include "generators.hpp"

using namespace qbank;

namespace {

QuestionBank matching_plus_mc() {
    return parse_gift(
        "Match these. {\n= cat -> mammal\n= frog -> amphibian\n}\n\n"
        "Pick one. {\n= right\n~ wrong\n}");
}

}  // namespace

TEST_CASE("strict conversion of a matching question to aiken names the kind") {
    QuestionBank bank = matching_plus_mc();
    try {
        convert(bank, Format::aiken, ConversionPolicy::strict());
        FAIL("expected CapabilityError");
    } catch (const CapabilityError& e) {
        CHECK(e.index == 0);
        std::string msg = e.what();
        CHECK(msg.find("question 1") != std::string::npos);
        CHECK(msg.find("matching") != std::string::npos);
    }
}

TEST_CASE("lossy conversion skips the unsupported question and keeps the rest") {
    QuestionBank bank = matching_plus_mc();
    ConversionResult result = convert(bank, Format::aiken, ConversionPolicy::lossy());
    CHECK(result.report.converted == 1);
    REQUIRE(result.report.skipped.size() == 1);
    CHECK(result.report.skipped[0].index == 0);
    QuestionBank back = parse_aiken(result.text);
    REQUIRE(back.questions.size() == 1);
    CHECK(back.questions[0].stem == "Pick one.");
}

TEST_CASE("strict and lossy agree byte-for-byte on fully supported input") {
    QuestionBank bank = qtest::Gen(99).bank(qtest::Profile::aiken, 8, false);
    auto strict = convert(bank, Format::gift, ConversionPolicy::strict());
    auto lossy = convert(bank, Format::gift, ConversionPolicy::lossy());
    CHECK(strict.text == lossy.text);
    CHECK(strict.report.skipped.empty());
    CHECK(lossy.report.skipped.empty());
}

TEST_CASE("lossy aiken conversion drops titles and strips markup with warnings") {
    QuestionBank bank =
        parse_gift("::T1::[html]<b>Which</b> one? {\n= a\n~ b\n}");
    ConversionResult result = convert(bank, Format::aiken, ConversionPolicy::lossy());
    QuestionBank back = parse_aiken(result.text);
    REQUIRE(back.questions.size() == 1);
    CHECK_FALSE(back.questions[0].title.has_value());
    CHECK(back.questions[0].stem == "Which one?");
    bool title_warn = false, markup_warn = false;
    for (const auto& w : result.report.warnings) {
        if (w.code == "convert.title-dropped") title_warn = true;
        if (w.code == "convert.formatting-stripped") markup_warn = true;
    }
    CHECK(title_warn);
    CHECK(markup_warn);
}

TEST_CASE("converted plus skipped always equals the input count") {
    qtest::Gen gen(31337);
    for (int i = 0; i < 50; ++i) {
        QuestionBank bank = gen.bank(qtest::Profile::gift, 12, false);
        ConversionResult result = convert(bank, Format::aiken, ConversionPolicy::lossy());
        CHECK(result.report.converted + result.report.skipped.size() ==
              bank.questions.size());
    }
}

TEST_CASE("gift to moodle xml and back is the identity on generated banks") {
    qtest::Gen gen(777);
    for (int i = 0; i < 100; ++i) {
        QuestionBank bank = gen.bank(qtest::Profile::gift, 10, false);
        auto as_xml = convert(bank, Format::moodlexml, ConversionPolicy::strict());
        QuestionBank via_xml = parse_moodlexml(as_xml.text);
        REQUIRE_FALSE(has_errors(via_xml.diagnostics));
        auto as_gift = convert(via_xml, Format::gift, ConversionPolicy::strict());
        QuestionBank back = parse_gift(as_gift.text);
        REQUIRE_FALSE(has_errors(back.diagnostics));
        CHECK(equals(back, bank));
    }
}

TEST_CASE("gift target with in-model payloads produces an archive") {
    QuestionBank bank = parse_gift("See <img src=\"images/pix.png\"> {TRUE}");
    bank.questions[0].media[0].payload = std::vector<std::uint8_t>{1, 2, 3};
    ConversionResult result = convert(bank, Format::gift, ConversionPolicy::strict());
    CHECK(result.is_archive);
    UnbundleResult back = unbundle_gift_media(result.archive);
    CHECK(equals(back.bank, bank));
}

TEST_CASE("gift target without media bytes falls back to plain text with a warning") {
    QuestionBank bank = parse_gift("See <img src=\"images/pix.png\"> {TRUE}");
    ConversionResult result = convert(bank, Format::gift, ConversionPolicy::lossy());
    CHECK_FALSE(result.is_archive);
    CHECK_FALSE(result.text.empty());
    bool warned = false;
    for (const auto& w : result.report.warnings)
        if (w.code == "convert.media-not-bundled") warned = true;
    CHECK(warned);
}

TEST_CASE("media question converts to aiken only by being skipped") {
    QuestionBank bank = parse_gift(
        "See <img src=\"images/pix.png\"> {\n= a\n~ b\n}");
    CHECK_THROWS_AS(convert(bank, Format::aiken, ConversionPolicy::strict()),
                    CapabilityError);
    ConversionResult lossy = convert(bank, Format::aiken, ConversionPolicy::lossy());
    CHECK(lossy.report.converted == 0);
    CHECK(lossy.report.skipped.size() == 1);
}

TEST_CASE("every skip reason is also surfaced as a warning diagnostic") {
    QuestionBank bank = matching_plus_mc();
    ConversionResult result = convert(bank, Format::aiken, ConversionPolicy::lossy());
    bool found = false;
    for (const auto& w : result.report.warnings)
        if (w.code == "convert.skipped") found = true;
    CHECK(found);
}

TEST_CASE("conversion to the same format re-emits the bank unchanged") {
    QuestionBank bank = qtest::Gen(5).bank(qtest::Profile::gift, 6, false);
    ConversionResult result = convert(bank, Format::gift, ConversionPolicy::strict());
    CHECK(result.text == emit_gift(bank));
}

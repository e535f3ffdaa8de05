#include <doctest.h>

#include "qbank/moodlexml.hpp"
#include "qbank/xml.hpp"

#include "generators.hpp"

using namespace qbank;

namespace {

// The exported true/false fragment, as produced by Moodle itself.
constexpr const char* kTrueFalseFragment = R"(<quiz>
<question type="truefalse">
  <questiontext format="html">
    <text>для створення публікацій використовують MS Publisher?</text>
  </questiontext>
  <image></image>
  <image_base64></image_base64>
  <generalfeedback>
    <text></text>
  </generalfeedback>
  <penalty>0.1</penalty>
  <hidden>0</hidden>
  <answer fraction="100">
    <text>true</text>
    <feedback>
      <text></text>
    </feedback>
  </answer>
  <answer fraction="0">
    <text>>false</text>
    <feedback>
      <text></text>
    </feedback>
  </answer>
  <name>
    <text>питання Так/ні - відповідь Так</text>
  </name>
</question>
</quiz>)";

Question true_false_reference() {
    Question q;
    q.title = "питання Так/ні - відповідь Так";
    q.stem = "для створення публікацій використовують MS Publisher?";
    q.stem_format = TextFormat::html;
    q.penalty = 0.1;
    q.hidden = false;
    q.body = TrueFalseBody{true};
    return q;
}

}  // namespace

TEST_CASE("parsing the exported true/false fragment recovers the model") {
    QuestionBank bank = parse_moodlexml(kTrueFalseFragment);
    CHECK_FALSE(has_errors(bank.diagnostics));
    REQUIRE(bank.questions.size() == 1);
    CHECK(equals(bank.questions[0], true_false_reference()));
}

TEST_CASE("emitting the true/false question reproduces the element set") {
    QuestionBank bank;
    bank.questions.push_back(true_false_reference());
    auto doc = xml::parse(emit_moodlexml(bank));
    REQUIRE(doc.ok);
    auto questions = doc.root.children_named("question");
    REQUIRE(questions.size() == 1);
    const xml::Element& q = *questions[0];
    CHECK(*q.attr("type") == "truefalse");
    CHECK(trimmed(q.child("penalty")->text()) == "0.1");
    CHECK(trimmed(q.child("hidden")->text()) == "0");
    CHECK(trimmed(q.child("name")->child("text")->text()) ==
          "питання Так/ні - відповідь Так");
    auto answers = q.children_named("answer");
    REQUIRE(answers.size() == 2);
    CHECK(*answers[0]->attr("fraction") == "100");
    CHECK(trimmed(answers[0]->child("text")->text()) == "true");
    CHECK(*answers[1]->attr("fraction") == "0");
    CHECK(trimmed(answers[1]->child("text")->text()) == "false");
}

TEST_CASE("an empty bank emits a document with an empty root") {
    auto doc = xml::parse(emit_moodlexml(QuestionBank{}));
    REQUIRE(doc.ok);
    CHECK(doc.root.name == "quiz");
    CHECK(doc.root.children_named("question").empty());
    CHECK(parse_moodlexml(emit_moodlexml(QuestionBank{})).questions.empty());
}

TEST_CASE("unknown question types are skipped with a warning") {
    QuestionBank bank = parse_moodlexml(
        "<quiz><question type=\"cloze\"><name><text>n</text></name></question></quiz>");
    CHECK(bank.questions.empty());
    REQUIRE(bank.diagnostics.size() == 1);
    CHECK(bank.diagnostics[0].severity == Severity::warning);
    CHECK(bank.diagnostics[0].code == "xml.unknown-type");
}

TEST_CASE("malformed XML yields one error diagnostic with a position") {
    QuestionBank bank = parse_moodlexml("<quiz><question");
    CHECK(bank.questions.empty());
    REQUIRE(bank.diagnostics.size() == 1);
    CHECK(bank.diagnostics[0].severity == Severity::error);
    CHECK(bank.diagnostics[0].code == "xml.malformed");
    CHECK(bank.diagnostics[0].line >= 1);
}

TEST_CASE("fractions outside [-100, 100] are an error") {
    QuestionBank bank = parse_moodlexml(
        "<quiz><question type=\"shortanswer\">"
        "<name><text>n</text></name>"
        "<questiontext format=\"plain_text\"><text>q</text></questiontext>"
        "<answer fraction=\"150\"><text>a</text></answer>"
        "</question></quiz>");
    CHECK(bank.questions.empty());
    REQUIRE_FALSE(bank.diagnostics.empty());
    CHECK(bank.diagnostics[0].code == "xml.fraction-range");
}

TEST_CASE("numeric ranges emit as midpoint plus tolerance") {
    QuestionBank bank;
    Question q;
    q.stem = "range";
    q.body = NumericalBody{{NumericRange{2, 6}}};
    bank.questions.push_back(q);
    auto doc = xml::parse(emit_moodlexml(bank));
    REQUIRE(doc.ok);
    const xml::Element& answer = *doc.root.children_named("question")[0]->children_named("answer")[0];
    CHECK(trimmed(answer.child("text")->text()) == "4");
    CHECK(trimmed(answer.child("tolerance")->text()) == "2");

    QuestionBank back = parse_moodlexml(emit_moodlexml(bank));
    REQUIRE(back.questions.size() == 1);
    CHECK(equals(bank, back));  // Range compares equal to midpoint±tol
}

TEST_CASE("stems with XML metacharacters survive byte-exactly") {
    QuestionBank bank;
    Question q;
    q.stem = "is 1 < 2 && 3 > 2?";
    q.body = EssayBody{};
    bank.questions.push_back(q);
    QuestionBank back = parse_moodlexml(emit_moodlexml(bank));
    REQUIRE(back.questions.size() == 1);
    CHECK(back.questions[0].stem == "is 1 < 2 && 3 > 2?");
}

TEST_CASE("missing penalty and hidden take the defaults") {
    QuestionBank bank = parse_moodlexml(
        "<quiz><question type=\"essay\">"
        "<name><text>n</text></name>"
        "<questiontext format=\"html\"><text>q</text></questiontext>"
        "</question></quiz>");
    REQUIRE(bank.questions.size() == 1);
    CHECK(bank.questions[0].penalty == 0.1);
    CHECK_FALSE(bank.questions[0].hidden);
}

TEST_CASE("media payloads embed as base64 and round trip") {
    QuestionBank bank;
    Question q;
    q.stem = "see <img src=\"images/dot.png\">";
    q.body = EssayBody{};
    q.media.push_back({"images/dot.png", std::vector<std::uint8_t>{0x89, 0x50, 0x4E, 0x47, 0x00, 0xFF}});
    bank.questions.push_back(q);
    QuestionBank back = parse_moodlexml(emit_moodlexml(bank));
    REQUIRE(back.questions.size() == 1);
    REQUIRE(back.questions[0].media.size() == 1);
    REQUIRE(back.questions[0].media[0].payload.has_value());
    CHECK(*back.questions[0].media[0].payload == *q.media[0].payload);
    CHECK(equals(bank, back));
}

TEST_CASE("round trip over generated banks") {
    qtest::Gen gen(2024);
    for (int i = 0; i < 300; ++i) {
        QuestionBank bank = gen.bank(qtest::Profile::moodlexml, 4, /*with_media=*/true);
        QuestionBank back = parse_moodlexml(emit_moodlexml(bank));
        CHECK_FALSE(has_errors(back.diagnostics));
        CHECK(equals(bank, back));
    }
}

TEST_CASE("emitted documents are always well-formed") {
    qtest::Gen gen(555);
    for (int i = 0; i < 100; ++i) {
        auto doc = xml::parse(emit_moodlexml(gen.bank(qtest::Profile::moodlexml, 3, true)));
        CHECK(doc.ok);
    }
}

TEST_CASE("name falls back to the leading slice of the stem") {
    QuestionBank bank;
    Question q;
    q.stem = "a long stem that goes on and on and on far past forty characters total";
    q.body = EssayBody{};
    bank.questions.push_back(q);
    auto doc = xml::parse(emit_moodlexml(bank));
    std::string name = trimmed(doc.root.children_named("question")[0]->child("name")->child("text")->text());
    CHECK(name == name_from_stem(q.stem));
    CHECK(name.size() == 40);

    // and the fallback is recognized on parse, so the title stays absent
    QuestionBank back = parse_moodlexml(emit_moodlexml(bank));
    REQUIRE(back.questions.size() == 1);
    CHECK_FALSE(back.questions[0].title.has_value());
}

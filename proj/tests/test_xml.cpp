#include <doctest.h>

#include "qbank/xml.hpp"

using namespace qbank::xml;

TEST_CASE("parse a small document with attributes and entities") {
    auto result = parse("<?xml version=\"1.0\"?>\n<root a=\"1\"><child>x &amp; y</child></root>");
    REQUIRE(result.ok);
    CHECK(result.root.name == "root");
    REQUIRE(result.root.attr("a") != nullptr);
    CHECK(*result.root.attr("a") == "1");
    REQUIRE(result.root.child("child") != nullptr);
    CHECK(result.root.child("child")->text() == "x & y");
}

TEST_CASE("malformed input reports a position") {
    auto result = parse("<root><child></root>");
    CHECK_FALSE(result.ok);
    CHECK(result.error.line >= 1);
    CHECK_FALSE(result.error.message.empty());
}

TEST_CASE("write/parse round trip with markup in text") {
    Element root;
    root.name = "doc";
    root.add_child("item").add_text("a < b & c > d");
    auto result = parse(write(root));
    REQUIRE(result.ok);
    CHECK(result.root.child("item")->text() == "a < b & c > d");
}

TEST_CASE("CDATA and comments are handled") {
    auto result = parse("<r><!-- note --><t><![CDATA[1 < 2]]></t></r>");
    REQUIRE(result.ok);
    CHECK(result.root.child("t")->text() == "1 < 2");
}

TEST_CASE("numeric character references decode to UTF-8") {
    auto result = parse("<r>&#x418;&#1082;</r>");
    REQUIRE(result.ok);
    CHECK(result.root.text() == "\xD0\x98\xD0\xBA");
}

TEST_CASE("writer output is deterministic") {
    Element root;
    root.name = "quiz";
    auto& q = root.add_child("question");
    q.set_attr("type", "essay");
    q.add_child("name").add_child("text").add_text("n");
    CHECK(write(root) == write(root));
}

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qbank::xml {

struct Element;
using Node = std::variant<Element, std::string>;  // child element or text

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Node> children;

    const std::string* attr(std::string_view name) const;
    const Element* child(std::string_view name) const;
    std::vector<const Element*> children_named(std::string_view name) const;
    // concatenated text content of direct text children
    std::string text() const;

    Element& add_child(std::string name);
    void add_text(std::string text);
    void set_attr(std::string name, std::string value);
};

struct ParseError {
    int line = 1;
    int column = 1;
    std::string message;
};

struct ParseResult {
    bool ok = false;
    Element root;
    ParseError error;
};

ParseResult parse(std::string_view source);

// Deterministic serialization: XML declaration, two-space indent, children
// on their own lines except for text-only elements.
std::string write(const Element& root);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

}  // namespace qbank::xml

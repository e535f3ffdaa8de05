#include "qbank/xml.hpp"

#include <cctype>

namespace qbank::xml {

const std::string* Element::attr(std::string_view name) const {
    for (const auto& [k, v] : attributes)
        if (k == name) return &v;
    return nullptr;
}

const Element* Element::child(std::string_view name) const {
    for (const auto& n : children)
        if (const auto* e = std::get_if<Element>(&n); e && e->name == name) return e;
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view name) const {
    std::vector<const Element*> out;
    for (const auto& n : children)
        if (const auto* e = std::get_if<Element>(&n); e && e->name == name) out.push_back(e);
    return out;
}

std::string Element::text() const {
    std::string out;
    for (const auto& n : children)
        if (const auto* s = std::get_if<std::string>(&n)) out += *s;
    return out;
}

Element& Element::add_child(std::string name) {
    children.emplace_back(Element{std::move(name), {}, {}});
    return std::get<Element>(children.back());
}

void Element::add_text(std::string text) { children.emplace_back(std::move(text)); }

void Element::set_attr(std::string name, std::string value) {
    attributes.emplace_back(std::move(name), std::move(value));
}

namespace {

struct Parser {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1, col = 1;
    ParseError error;
    bool failed = false;

    bool at_end() const { return pos >= src.size(); }
    char cur() const { return src[pos]; }

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void fail(std::string msg) {
        if (failed) return;
        failed = true;
        error = {line, col, std::move(msg)};
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(cur()))) advance();
    }

    bool literal(std::string_view s) {
        if (src.substr(pos, s.size()) != s) return false;
        for (std::size_t i = 0; i < s.size(); ++i) advance();
        return true;
    }

    void skip_until(std::string_view close) {
        while (!at_end() && src.substr(pos, close.size()) != close) advance();
        if (at_end())
            fail("unterminated construct, expected '" + std::string(close) + "'");
        else
            literal(close);
    }

    // skips declaration, comments, doctype, processing instructions
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (literal("<?")) {
                skip_until("?>");
            } else if (src.substr(pos, 4) == "<!--") {
                literal("<!--");
                skip_until("-->");
            } else if (src.substr(pos, 2) == "<!") {
                literal("<!");
                skip_until(">");
            } else {
                return;
            }
            if (failed) return;
        }
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == '.' || c == ':';
    }

    std::string read_name() {
        std::string name;
        while (!at_end() && name_char(cur())) {
            name += cur();
            advance();
        }
        if (name.empty()) fail("expected a name");
        return name;
    }

    std::string decode_entities(std::string_view s) {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '&') {
                out += s[i];
                continue;
            }
            std::size_t semi = s.find(';', i);
            if (semi == std::string_view::npos) {
                out += s[i];
                continue;
            }
            std::string_view ent = s.substr(i + 1, semi - i - 1);
            if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "amp") out += '&';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (ent.size() >= 2 && ent[0] == '#') {
                long code = std::strtol(std::string(ent.substr(ent[1] == 'x' || ent[1] == 'X' ? 2 : 1)).c_str(),
                                        nullptr, ent[1] == 'x' || ent[1] == 'X' ? 16 : 10);
                // UTF-8 encode
                if (code < 0x80) out += static_cast<char>(code);
                else if (code < 0x800) {
                    out += static_cast<char>(0xC0 | (code >> 6));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else if (code < 0x10000) {
                    out += static_cast<char>(0xE0 | (code >> 12));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else {
                    out += static_cast<char>(0xF0 | (code >> 18));
                    out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                }
            } else {
                out += s[i];
                continue;
            }
            i = semi;
        }
        return out;
    }

    Element parse_element() {
        Element el;
        if (!literal("<")) {
            fail("expected '<'");
            return el;
        }
        el.name = read_name();
        if (failed) return el;

        for (;;) {
            skip_ws();
            if (at_end()) {
                fail("unterminated start tag");
                return el;
            }
            if (literal("/>")) return el;
            if (literal(">")) break;
            std::string attr_name = read_name();
            if (failed) return el;
            skip_ws();
            if (!literal("=")) {
                fail("expected '=' in attribute");
                return el;
            }
            skip_ws();
            if (at_end() || (cur() != '"' && cur() != '\'')) {
                fail("expected quoted attribute value");
                return el;
            }
            char quote = cur();
            advance();
            std::size_t start = pos;
            while (!at_end() && cur() != quote) advance();
            if (at_end()) {
                fail("unterminated attribute value");
                return el;
            }
            el.attributes.emplace_back(attr_name,
                                       decode_entities(src.substr(start, pos - start)));
            advance();  // closing quote
        }

        // content
        std::string text;
        auto flush_text = [&] {
            if (!text.empty()) {
                el.children.emplace_back(decode_entities(text));
                text.clear();
            }
        };
        for (;;) {
            if (at_end()) {
                fail("unterminated element <" + el.name + ">");
                return el;
            }
            if (cur() == '<') {
                if (src.substr(pos, 4) == "<!--") {
                    flush_text();
                    literal("<!--");
                    skip_until("-->");
                    if (failed) return el;
                    continue;
                }
                if (src.substr(pos, 9) == "<![CDATA[") {
                    literal("<![CDATA[");
                    std::size_t end = src.find("]]>", pos);
                    if (end == std::string_view::npos) {
                        fail("unterminated CDATA section");
                        return el;
                    }
                    // CDATA is literal text, no entity decoding
                    flush_text();
                    el.children.emplace_back(std::string(src.substr(pos, end - pos)));
                    while (pos < end) advance();
                    literal("]]>");
                    continue;
                }
                if (src.substr(pos, 2) == "</") {
                    flush_text();
                    literal("</");
                    std::string close = read_name();
                    if (failed) return el;
                    skip_ws();
                    if (!literal(">")) {
                        fail("expected '>' in end tag");
                        return el;
                    }
                    if (close != el.name)
                        fail("mismatched end tag </" + close + "> for <" + el.name + ">");
                    return el;
                }
                flush_text();
                el.children.emplace_back(parse_element());
                if (failed) return el;
                continue;
            }
            text += cur();
            advance();
        }
    }
};

void write_element(const Element& el, std::string& out, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out += indent;
    out += '<';
    out += el.name;
    for (const auto& [k, v] : el.attributes) {
        out += ' ';
        out += k;
        out += "=\"";
        out += escape_attr(v);
        out += '"';
    }
    bool has_element_child = false;
    for (const auto& n : el.children)
        if (std::holds_alternative<Element>(n)) has_element_child = true;

    if (el.children.empty()) {
        out += "/>\n";
        return;
    }
    out += '>';
    if (!has_element_child) {
        for (const auto& n : el.children) out += escape_text(std::get<std::string>(n));
        out += "</";
        out += el.name;
        out += ">\n";
        return;
    }
    out += '\n';
    for (const auto& n : el.children) {
        if (const auto* child = std::get_if<Element>(&n)) {
            write_element(*child, out, depth + 1);
        } else {
            const std::string& t = std::get<std::string>(n);
            bool blank = true;
            for (char c : t)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (!blank) {
                out += indent;
                out += "  ";
                out += escape_text(t);
                out += '\n';
            }
        }
    }
    out += indent;
    out += "</";
    out += el.name;
    out += ">\n";
}

}  // namespace

ParseResult parse(std::string_view source) {
    if (source.size() >= 3 && source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
    Parser p{source};
    p.skip_misc();
    ParseResult result;
    if (p.failed) {
        result.error = p.error;
        return result;
    }
    result.root = p.parse_element();
    if (p.failed) {
        result.error = p.error;
        return result;
    }
    p.skip_misc();
    p.skip_ws();
    if (!p.at_end()) {
        result.error = {p.line, p.col, "trailing content after the root element"};
        return result;
    }
    result.ok = true;
    return result;
}

std::string write(const Element& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_element(root, out, 0);
    return out;
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace qbank::xml

#include "xml_subset.hpp"

#include <cctype>

#include "termstore/errors.hpp"

namespace termstore::xml {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
           c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Parser {
public:
    explicit Parser(std::string_view input) : input_(input) {}

    XmlNode document() {
        if (input_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        skip_misc(true);
        if (!peek_is("<")) fail("expected an element");
        XmlNode root = element();
        skip_misc(false);
        if (pos_ != input_.size()) fail("content after the document element");
        return root;
    }

private:
    std::string_view input_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t line = 1;
        for (std::size_t i = 0; i < pos_ && i < input_.size(); ++i) {
            if (input_[i] == '\n') ++line;
        }
        throw Error(ErrorCode::parse_error, "XML line " + std::to_string(line) + ": " + what);
    }

    bool peek_is(std::string_view token) const {
        return input_.substr(pos_, token.size()) == token;
    }

    void expect(std::string_view token) {
        if (!peek_is(token)) fail("expected '" + std::string(token) + "'");
        pos_ += token.size();
    }

    void skip_whitespace() {
        while (pos_ < input_.size() && is_space(input_[pos_])) ++pos_;
    }

    void skip_comment() {
        expect("<!--");
        std::size_t end = input_.find("-->", pos_);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
    }

    // whitespace and comments; the prolog only before the root element
    void skip_misc(bool allow_prolog) {
        for (;;) {
            skip_whitespace();
            if (peek_is("<?")) {
                if (!allow_prolog || !peek_is("<?xml")) {
                    fail("processing instructions are not supported");
                }
                std::size_t end = input_.find("?>", pos_);
                if (end == std::string_view::npos) fail("unterminated prolog");
                pos_ = end + 2;
                allow_prolog = false;
            } else if (peek_is("<!--")) {
                skip_comment();
            } else if (peek_is("<!DOCTYPE")) {
                fail("DOCTYPE is not supported");
            } else {
                return;
            }
        }
    }

    std::string name() {
        if (pos_ >= input_.size() || !name_start(input_[pos_])) fail("expected a name");
        std::size_t start = pos_;
        while (pos_ < input_.size() && name_char(input_[pos_])) ++pos_;
        return std::string(input_.substr(start, pos_ - start));
    }

    void reference(std::string& out) {
        expect("&");
        std::size_t end = input_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 8) fail("unterminated entity reference");
        std::string_view body = input_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (body == "amp") out += '&';
        else if (body == "lt") out += '<';
        else if (body == "gt") out += '>';
        else if (body == "quot") out += '"';
        else if (body == "apos") out += '\'';
        else if (!body.empty() && body[0] == '#') {
            std::uint32_t cp = 0;
            bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
            std::string_view digits = body.substr(hex ? 2 : 1);
            if (digits.empty()) fail("empty character reference");
            for (char c : digits) {
                std::uint32_t digit;
                if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
                else if (hex && c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
                else if (hex && c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
                else fail("malformed character reference");
                cp = cp * (hex ? 16u : 10u) + digit;
                if (cp > 0x10FFFF) fail("character reference out of range");
            }
            if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) {
                fail("character reference out of range");
            }
            append_utf8(out, cp);
        } else {
            fail("unknown entity '&" + std::string(body) + ";'");
        }
    }

    std::string attribute_value() {
        if (pos_ >= input_.size() || (input_[pos_] != '"' && input_[pos_] != '\'')) {
            fail("expected a quoted attribute value");
        }
        char quote = input_[pos_++];
        std::string value;
        while (pos_ < input_.size() && input_[pos_] != quote) {
            char c = input_[pos_];
            if (c == '<') fail("'<' in attribute value");
            if (c == '&') reference(value);
            else { value += c; ++pos_; }
        }
        if (pos_ >= input_.size()) fail("unterminated attribute value");
        ++pos_;
        return value;
    }

    XmlNode element() {
        expect("<");
        XmlNode node;
        node.name = name();
        for (;;) {
            bool had_space = pos_ < input_.size() && is_space(input_[pos_]);
            skip_whitespace();
            if (peek_is("/>")) { pos_ += 2; return node; }
            if (peek_is(">")) { ++pos_; break; }
            if (!had_space) fail("expected whitespace before attribute");
            std::string attr = name();
            skip_whitespace();
            expect("=");
            skip_whitespace();
            std::string value = attribute_value();
            if (!node.attributes.emplace(attr, std::move(value)).second) {
                fail("duplicate attribute '" + attr + "'");
            }
        }
        // content until the matching end tag
        for (;;) {
            if (pos_ >= input_.size()) fail("unterminated element <" + node.name + ">");
            if (peek_is("</")) {
                pos_ += 2;
                std::string end = name();
                if (end != node.name) {
                    fail("mismatched end tag </" + end + "> for <" + node.name + ">");
                }
                skip_whitespace();
                expect(">");
                return node;
            }
            if (peek_is("<!--")) { skip_comment(); continue; }
            if (peek_is("<![CDATA[")) fail("CDATA is not supported");
            if (peek_is("<!")) fail("DOCTYPE is not supported");
            if (peek_is("<?")) fail("processing instructions are not supported");
            if (peek_is("<")) { node.children.push_back(element()); continue; }
            char c = input_[pos_];
            if (c == '&') reference(node.text);
            else { node.text += c; ++pos_; }
        }
    }
};

} // namespace

bool XmlNode::text_is_whitespace() const {
    for (char c : text) {
        if (!is_space(c)) return false;
    }
    return true;
}

XmlNode parse_document(std::string_view input) {
    return Parser(input).document();
}

} // namespace termstore::xml

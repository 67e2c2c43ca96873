// Copyright 2026 The mapverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mapverify/xml.hpp"

#include <cctype>

#include "mapverify/util.hpp"

namespace mapverify {

const std::string* XmlNode::attr(std::string_view attr_name) const {
  for (const auto& [k, v] : attrs) {
    if (k == attr_name) return &v;
  }
  return nullptr;
}

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  XmlNode parse_document() {
    skip_misc();
    if (!at('<')) fail("expected a root element");
    XmlNode root = parse_element();
    skip_misc();
    if (!eof()) fail("content after the root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, col_);
  }

  bool eof() const { return i_ >= src_.size(); }
  char peek() const { return eof() ? '\0' : src_[i_]; }
  bool at(char c) const { return peek() == c; }

  bool starts_with(std::string_view s) const {
    return src_.compare(i_, s.size(), s) == 0;
  }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void advance_by(size_t n) {
    for (size_t k = 0; k < n; ++k) advance();
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void skip_comment() {
    advance_by(4);  // "<!--"
    while (!starts_with("-->")) {
      if (eof()) fail("unterminated comment");
      advance();
    }
    advance_by(3);
  }

  void skip_declaration() {
    advance_by(2);  // "<?"
    while (!starts_with("?>")) {
      if (eof()) fail("unterminated declaration");
      advance();
    }
    advance_by(2);
  }

  // Whitespace, comments, and at most one leading declaration.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<?")) {
        skip_declaration();
      } else {
        return;
      }
    }
  }

  std::string read_name() {
    if (!is_name_start(peek())) fail("expected a name");
    std::string name;
    while (!eof() && is_name_char(peek())) name += advance();
    return name;
  }

  std::string read_quoted() {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected a quoted value");
    advance();
    std::string value;
    while (!at(quote)) {
      if (eof()) fail("unterminated attribute value");
      if (at('&')) {
        value += read_entity();
      } else if (at('<')) {
        fail("'<' in attribute value");
      } else {
        value += advance();
      }
    }
    advance();
    return value;
  }

  char read_entity() {
    int start_line = line_, start_col = col_;
    advance();  // '&'
    std::string name;
    while (!eof() && !at(';') && name.size() < 8) name += advance();
    if (!at(';')) throw ParseError("malformed entity", start_line, start_col);
    advance();
    if (name == "lt") return '<';
    if (name == "gt") return '>';
    if (name == "amp") return '&';
    if (name == "quot") return '"';
    if (name == "apos") return '\'';
    throw ParseError("unknown entity '&" + name + ";'", start_line, start_col);
  }

  XmlNode parse_element() {
    XmlNode node;
    node.line = line_;
    advance();  // '<'
    node.name = read_name();
    for (;;) {
      skip_ws();
      if (at('/')) {
        advance();
        if (!at('>')) fail("expected '>' after '/'");
        advance();
        return node;
      }
      if (at('>')) {
        advance();
        parse_content(node);
        return node;
      }
      std::string key = read_name();
      skip_ws();
      if (!at('=')) fail("expected '=' after attribute name");
      advance();
      skip_ws();
      std::string value = read_quoted();
      for (const auto& [k, v] : node.attrs) {
        if (k == key) fail("duplicate attribute '" + key + "'");
      }
      node.attrs.emplace_back(std::move(key), std::move(value));
    }
  }

  void parse_content(XmlNode& node) {
    std::string text;
    for (;;) {
      if (eof()) fail("unterminated element <" + node.name + ">");
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("</")) {
        advance_by(2);
        std::string name = read_name();
        if (name != node.name) {
          fail("mismatched closing tag </" + name + "> for <" + node.name + ">");
        }
        skip_ws();
        if (!at('>')) fail("expected '>' in closing tag");
        advance();
        node.text = trim(text);
        return;
      } else if (at('<')) {
        node.children.push_back(parse_element());
      } else if (at('&')) {
        text += read_entity();
      } else {
        text += advance();
      }
    }
  }

  static std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  }

  std::string_view src_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

XmlNode xml_parse(std::string_view source) { return Reader(source).parse_document(); }

std::string xml_escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string xml_strip_comments(std::string_view source) {
  std::string out;
  out.reserve(source.size());
  size_t i = 0;
  while (i < source.size()) {
    if (source.compare(i, 4, "<!--") == 0) {
      size_t end = source.find("-->", i + 4);
      if (end == std::string_view::npos) break;  // drop an unterminated tail
      i = end + 3;
    } else {
      out += source[i++];
    }
  }
  return out;
}

}  // namespace mapverify

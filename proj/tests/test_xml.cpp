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

#include <string>

#include "doctest.h"
#include "mapverify/util.hpp"
#include "mapverify/xml.hpp"

using namespace mapverify;

TEST_SUITE("xml") {

TEST_CASE("parses elements, attributes, and text") {
  const XmlNode root = xml_parse("<a id=\"7\"><b>hi</b><b>there</b><c/></a>");
  CHECK(root.name == "a");
  REQUIRE(root.attr("id") != nullptr);
  CHECK(*root.attr("id") == "7");
  CHECK(root.attr("missing") == nullptr);
  REQUIRE(root.children.size() == 3);
  CHECK(root.children[0].text == "hi");
  CHECK(root.children[1].text == "there");
  CHECK(root.children[2].name == "c");
}

TEST_CASE("decodes the five standard entities") {
  const XmlNode root = xml_parse("<t>&lt;&gt;&amp;&quot;&apos;</t>");
  CHECK(root.text == "<>&\"'");
}

TEST_CASE("xml_escape makes text safe for re-parsing") {
  const std::string raw = "a<b & \"c\" 'd'";
  const XmlNode root = xml_parse("<t>" + xml_escape(raw) + "</t>");
  CHECK(root.text == raw);
}

TEST_CASE("mismatched closing tag is a positioned error") {
  try {
    xml_parse("<a>\n<b></a>");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("unterminated document is rejected") {
  CHECK_THROWS_AS(xml_parse("<a><b>"), ParseError);
  CHECK_THROWS_AS(xml_parse(""), ParseError);
  CHECK_THROWS_AS(xml_parse("just text"), ParseError);
}

TEST_CASE("comments and declarations are skipped while parsing") {
  const XmlNode root = xml_parse("<?xml version=\"1.0\"?><!-- hi --><a><!-- in --><b/></a>");
  CHECK(root.name == "a");
  REQUIRE(root.children.size() == 1);
}

TEST_CASE("xml_strip_comments removes comments and keeps the rest") {
  const std::string out = xml_strip_comments("<a><!-- one --><b/><!-- two\nlines --></a>");
  CHECK(out.find("one") == std::string::npos);
  CHECK(out.find("lines") == std::string::npos);
  CHECK(out.find("<b/>") != std::string::npos);
  CHECK(out.find("<a>") != std::string::npos);
}

}  // TEST_SUITE

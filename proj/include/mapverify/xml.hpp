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

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mapverify {

// Minimal strict XML reader for the map dialects. Supports elements,
// attributes, character data, comments, and an optional declaration; no
// namespaces, CDATA, or doctypes. Kept in-house so format errors can carry
// exact line numbers and unknown content is rejected instead of skipped.

struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlNode> children;
  std::string text;  // concatenated character data, trimmed at both ends
  int line = 0;

  const std::string* attr(std::string_view attr_name) const;
};

/// Parses a complete document; throws ParseError on malformed input.
XmlNode xml_parse(std::string_view source);

/// Escapes &, <, >, and double quotes for use in text or attribute values.
std::string xml_escape(std::string_view raw);

/// Removes <!-- --> comments, keeping everything else byte for byte.
std::string xml_strip_comments(std::string_view source);

}  // namespace mapverify

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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mapverify {

/// Syntax error in one of the text languages. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int col);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Structural error in an XML document, located by element path and line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, const std::string& element_path, int line);
  const std::string& element_path() const { return element_path_; }
  int line() const { return line_; }

 private:
  std::string element_path_;
  int line_;
};

/// Violated data invariant (bad ids, dangling references, bad config values).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message) : std::runtime_error(message) {}
};

/// Filesystem or network failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

/// Internal evaluation failure; indicates a bug rather than bad user input.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

/// One named finding from a checker that reports several problems at once.
struct Diagnostic {
  std::string subject;  // rule or predicate the finding belongs to, may be empty
  std::string message;
};

std::string render_diagnostics(const std::vector<Diagnostic>& diags);

/// Shortest decimal form that parses back to the same double ("general" form,
/// may use an exponent).
std::string format_double(double v);

/// Shortest fixed-notation decimal form that parses back to the same double.
/// Never uses an exponent, which keeps the output inside grammars whose
/// number tokens have no exponent part.
std::string format_double_fixed(double v);

/// Whole-string strict conversions; reject trailing garbage.
bool try_parse_double(std::string_view text, double& out);
bool try_parse_int(std::string_view text, long long& out);

std::string read_file(const std::filesystem::path& path);

/// Writes content to a sibling temp file and renames it over the target, so
/// readers never observe a partially written file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

/// Small deterministic generator (splitmix64). Sequences depend only on the
/// seed, never on the standard library, so outputs are stable across builds.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_unit();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n); n must be nonzero.
  uint64_t below(uint64_t n);
  /// Independent substream; deterministic in (seed, stream).
  Rng split(uint64_t stream) const;

 private:
  uint64_t state_;
};

}  // namespace mapverify

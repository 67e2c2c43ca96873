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

#include "mapverify/config.hpp"

#include <cmath>

#include "json.hpp"
#include "mapverify/util.hpp"

namespace mapverify {

void EvalConfig::validate() const {
  auto fail = [](const std::string& message) { throw ValidationError("config: " + message); };
  if (samples_per_centerline < 2) fail("samples_per_centerline must be at least 2");
  if (!(overlap_radius > 0.0) || !std::isfinite(overlap_radius))
    fail("overlap_radius must be positive");
  if (!(max_grade > 0.0) || !std::isfinite(max_grade)) fail("max_grade must be positive");
  if (!(max_step > 0.0) || !std::isfinite(max_step)) fail("max_step must be positive");
  if (!(stack_eps > 0.0) || !std::isfinite(stack_eps)) fail("stack_eps must be positive");
  if (!std::isfinite(min_clearance) || !(min_clearance > stack_eps))
    fail("min_clearance must exceed stack_eps");
}

EvalConfig load_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");

  EvalConfig config;
  auto take_int = [&](const char* key, int& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer())
      throw ValidationError(std::string("config: ") + key + " must be an integer");
    out = doc[key].get<int>();
    doc.erase(key);
  };
  auto take_double = [&](const char* key, double& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number())
      throw ValidationError(std::string("config: ") + key + " must be a number");
    out = doc[key].get<double>();
    doc.erase(key);
  };
  take_int("samples_per_centerline", config.samples_per_centerline);
  take_double("overlap_radius", config.overlap_radius);
  take_double("max_grade", config.max_grade);
  take_double("max_step", config.max_step);
  take_double("stack_eps", config.stack_eps);
  take_double("min_clearance", config.min_clearance);
  if (!doc.empty())
    throw ValidationError("config: unknown field '" + doc.begin().key() + "'");
  config.validate();
  return config;
}

std::string save_config(const EvalConfig& config) {
  nlohmann::ordered_json doc;
  doc["samples_per_centerline"] = config.samples_per_centerline;
  doc["overlap_radius"] = config.overlap_radius;
  doc["max_grade"] = config.max_grade;
  doc["max_step"] = config.max_step;
  doc["stack_eps"] = config.stack_eps;
  doc["min_clearance"] = config.min_clearance;
  return doc.dump(2) + "\n";
}

}  // namespace mapverify

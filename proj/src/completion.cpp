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

#include "mapverify/completion.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "mapverify/util.hpp"

namespace mapverify {

std::string NullClient::complete(const std::string&) {
  throw ValidationError(
      "no completion backend configured; choose a replay fixture or a live endpoint");
}

ReplayClient::ReplayClient(std::filesystem::path dir, std::string request_id)
    : dir_(std::move(dir)), request_id_(std::move(request_id)) {}

std::string ReplayClient::complete(const std::string&) {
  return read_file(dir_ / (request_id_ + ".txt"));
}

HttpClient::HttpClient(HttpClientOptions options) : options_(std::move(options)) {}

HttpClient HttpClient::from_env() {
  HttpClientOptions options;
  if (const char* endpoint = std::getenv("MAPVERIFY_LLM_ENDPOINT")) options.endpoint = endpoint;
  if (const char* model = std::getenv("MAPVERIFY_LLM_MODEL")) options.model = model;
  if (const char* key = std::getenv("MAPVERIFY_LLM_API_KEY")) options.api_key = key;
  if (options.endpoint.empty()) {
    throw ValidationError("MAPVERIFY_LLM_ENDPOINT is not set; live synthesis needs an endpoint");
  }
  return HttpClient(std::move(options));
}

std::string HttpClient::complete(const std::string& prompt) {
  const std::string& endpoint = options_.endpoint;
  const size_t scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("endpoint '" + endpoint + "' has no scheme");
  }
  if (endpoint.substr(0, scheme_end) != "http") {
    throw ValidationError("only http endpoints are supported, got '" + endpoint + "'");
  }
  const size_t path_start = endpoint.find('/', scheme_end + 3);
  const std::string base =
      path_start == std::string::npos ? endpoint : endpoint.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? std::string("/") : endpoint.substr(path_start);

  nlohmann::json body;
  body["model"] = options_.model;
  body["temperature"] = 0;
  body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});

  httplib::Client client(base);
  client.set_connection_timeout(30, 0);
  client.set_read_timeout(300, 0);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw IoError("completion request to " + endpoint + " failed (error " +
                  std::to_string(static_cast<int>(res.error())) + ")");
  }
  if (res->status != 200) {
    throw IoError("completion request to " + endpoint + " returned status " +
                  std::to_string(res->status));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("completion reply is not valid JSON: ") + e.what());
  }
  if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty() ||
      !reply["choices"][0].contains("message") ||
      !reply["choices"][0]["message"].contains("content") ||
      !reply["choices"][0]["message"]["content"].is_string()) {
    throw IoError("completion reply has no choices[0].message.content");
  }
  return reply["choices"][0]["message"]["content"].get<std::string>();
}

}  // namespace mapverify

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

#include <filesystem>
#include <string>

namespace mapverify {

/// Produces one raw text reply per prompt. Rule synthesis never talks to a
/// model directly; it goes through this seam so runs are replayable.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

/// Default backend: refuses every request. Selecting a real backend is an
/// explicit caller decision, never a fallback.
class NullClient : public CompletionClient {
 public:
  std::string complete(const std::string& prompt) override;
};

/// Replays a canned reply from <dir>/<request_id>.txt, ignoring the prompt.
class ReplayClient : public CompletionClient {
 public:
  ReplayClient(std::filesystem::path dir, std::string request_id);
  std::string complete(const std::string& prompt) override;

 private:
  std::filesystem::path dir_;
  std::string request_id_;
};

struct HttpClientOptions {
  std::string endpoint;  // http://host[:port]/path of a chat-completion API
  std::string model;
  std::string api_key;   // sent as a bearer token when nonempty
};

/// Talks to an OpenAI-style chat-completion endpoint over plain HTTP with
/// temperature 0. Only used when the caller opts into live synthesis.
class HttpClient : public CompletionClient {
 public:
  explicit HttpClient(HttpClientOptions options);

  /// Options from MAPVERIFY_LLM_ENDPOINT, MAPVERIFY_LLM_MODEL, and
  /// MAPVERIFY_LLM_API_KEY; throws ValidationError when the endpoint is
  /// unset.
  static HttpClient from_env();

  std::string complete(const std::string& prompt) override;

 private:
  HttpClientOptions options_;
};

}  // namespace mapverify

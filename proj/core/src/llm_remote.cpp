// Copyright 2026 The kgloop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "kgloop/error.hpp"
#include "kgloop/llm.hpp"

namespace kgloop {
namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* value = std::getenv(name);
  return value != nullptr && *value != '\0' ? std::string(value)
                                            : std::move(fallback);
}

}  // namespace

RemoteConfig RemoteConfig::from_env() {
  RemoteConfig config;
  config.endpoint = env_or("KGLOOP_LLM_ENDPOINT", "");
  config.model = env_or("KGLOOP_LLM_MODEL", "gpt-4o");
  config.api_key = env_or("KGLOOP_LLM_API_KEY", "");
  if (config.endpoint.empty()) {
    throw ConfigError("KGLOOP_LLM_ENDPOINT is not set");
  }
  return config;
}

RemoteClient::RemoteClient(RemoteConfig config) : config_(std::move(config)) {
  std::string::size_type scheme = config_.endpoint.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("LLM endpoint '" + config_.endpoint +
                      "' must include a scheme");
  }
}

LlmReply RemoteClient::call(const std::string& prompt) {
  using nlohmann::json;
  const std::string& url = config_.endpoint;
  auto path_start = url.find('/', url.find("://") + 3);
  std::string origin = url.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  json body = {
      {"model", config_.model},
      {"temperature", 0},
      {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
  };
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request to " + url + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("LLM endpoint returned HTTP " +
                         std::to_string(res->status));
  }
  try {
    json reply = json::parse(res->body);
    LlmReply out;
    out.text = reply.at("choices").at(0).at("message").at("content");
    if (reply.contains("usage") && reply["usage"].contains("total_tokens")) {
      out.token_count = reply["usage"]["total_tokens"].get<std::size_t>();
    } else {
      out.token_count = count_tokens(prompt) + count_tokens(out.text);
    }
    return out;
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed LLM response: ") + e.what());
  }
}

}  // namespace kgloop

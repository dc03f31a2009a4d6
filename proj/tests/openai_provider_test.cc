// Copyright 2026 The qaaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaaug/openai_provider.h"

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <thread>

namespace qaaug {
namespace {

using json = nlohmann::json;

ChatRequest sample_request() {
  ChatRequest r;
  r.kind = PromptKind::kQaGen;
  r.system = "You write questions.";
  r.user = "Passage: x";
  r.model = "gpt-4";
  r.temperature = 0.7;
  r.max_tokens = 256;
  r.timeout = std::chrono::milliseconds(2000);
  return r;
}

constexpr char const* kOkBody = R"({
  "choices": [{"message": {"role": "assistant",
               "content": "Question: Q\nAnswer: A"}}],
  "usage": {"prompt_tokens": 12, "completion_tokens": 7}})";

TEST(OpenAiProvider, RequestBodyShape) {
  auto const body = json::parse(OpenAiProvider::request_body(sample_request()));
  EXPECT_EQ(body["model"], "gpt-4");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.7);
  EXPECT_EQ(body["max_tokens"], 256);
  ASSERT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][1]["content"], "Passage: x");

  auto no_system = sample_request();
  no_system.system.clear();
  auto const b2 = json::parse(OpenAiProvider::request_body(no_system));
  ASSERT_EQ(b2["messages"].size(), 1u);
  EXPECT_EQ(b2["messages"][0]["role"], "user");
}

TEST(OpenAiProvider, ParsesResponse) {
  auto const r = OpenAiProvider::parse_response(kOkBody);
  EXPECT_EQ(r.text, "Question: Q\nAnswer: A");
  EXPECT_EQ(r.prompt_tokens, 12);
  EXPECT_EQ(r.completion_tokens, 7);
  EXPECT_THROW(OpenAiProvider::parse_response("{}"), ProviderError);
  EXPECT_THROW(OpenAiProvider::parse_response("not json"), ProviderError);
}

class LocalServer {
 public:
  LocalServer() {
    server_.Post("/v1/chat/completions",
                 [this](httplib::Request const& req, httplib::Response& res) {
                   last_auth_ = req.get_header_value("Authorization");
                   last_body_ = req.body;
                   res.status = status_.load();
                   res.set_content(status_ == 200 ? kOkBody : "{\"error\": 1}",
                                   "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }
  void set_status(int s) { status_ = s; }
  std::string last_auth_;
  std::string last_body_;

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> status_{200};
};

TEST(OpenAiProvider, RoundTripAgainstLocalServer) {
  LocalServer server;
  OpenAiProvider provider(server.base_url(), "sk-test");
  auto const r = provider.send(sample_request());
  EXPECT_EQ(r.text, "Question: Q\nAnswer: A");
  EXPECT_EQ(r.prompt_tokens, 12);
  EXPECT_EQ(server.last_auth_, "Bearer sk-test");
  EXPECT_EQ(json::parse(server.last_body_)["model"], "gpt-4");
}

TEST(OpenAiProvider, StatusClassification) {
  LocalServer server;
  OpenAiProvider provider(server.base_url(), "sk-test");
  for (int status : {429, 500, 503, 408}) {
    server.set_status(status);
    EXPECT_THROW(provider.send(sample_request()), TransientError) << status;
  }
  for (int status : {400, 401, 404}) {
    server.set_status(status);
    try {
      provider.send(sample_request());
      FAIL() << status;
    } catch (TransientError const&) {
      FAIL() << "status " << status << " should not be retryable";
    } catch (ProviderError const& e) {
      EXPECT_NE(std::string(e.what()).find(std::to_string(status)),
                std::string::npos);
    }
  }
}

TEST(OpenAiProvider, ConnectionFailureIsTransient) {
  // Bind then release a port so nothing is listening on it.
  int port = 0;
  {
    httplib::Server s;
    port = s.bind_to_any_port("127.0.0.1");
  }
  OpenAiProvider provider("http://127.0.0.1:" + std::to_string(port), "k");
  EXPECT_THROW(provider.send(sample_request()), TransientError);
}

TEST(OpenAiProvider, MissingApiKey) {
  ::unsetenv("QAAUG_TEST_NO_SUCH_KEY");
  EXPECT_THROW(make_openai_provider("http://127.0.0.1:1", "QAAUG_TEST_NO_SUCH_KEY"),
               ProviderError);
  ::setenv("QAAUG_TEST_KEY", "abc", 1);
  EXPECT_NE(make_openai_provider("http://127.0.0.1:1", "QAAUG_TEST_KEY"), nullptr);
}

}  // namespace
}  // namespace qaaug

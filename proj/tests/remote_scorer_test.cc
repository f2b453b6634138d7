// Copyright 2026 The summrank Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "summrank/errors.h"
#include "summrank/semantic.h"

namespace summrank {
namespace {

using nlohmann::json;

// In-process scoring service. Each pair scores the length of its candidate;
// `mode` switches on the different ways a server can break the contract.
class FakeScorer {
 public:
  enum class Mode { kOk, kHttpError, kMalformed, kShort, kNonNumeric, kNoScores };

  FakeScorer() {
    server_.Post("/v1/score", [this](const httplib::Request& req,
                                     httplib::Response& res) {
      const json body = json::parse(req.body);
      {
        std::lock_guard lock(mutex_);
        batch_sizes_.push_back(body.at("pairs").size());
        metrics_.push_back(body.at("metric").get<std::string>());
      }
      const int now = ++in_flight_;
      int seen = max_in_flight_.load();
      while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
      --in_flight_;
      json reply;
      reply["scores"] = json::array();
      for (const auto& pair : body.at("pairs")) {
        reply["scores"].push_back(
            static_cast<double>(pair.at("candidate").get<std::string>().size()));
      }
      switch (mode_.load()) {
        case Mode::kOk:
          res.set_content(reply.dump(), "application/json");
          break;
        case Mode::kHttpError:
          res.status = 413;
          res.set_content(R"({"error":"batch too large"})", "application/json");
          break;
        case Mode::kMalformed:
          res.set_content("{\"scores\": [1, 2", "application/json");
          break;
        case Mode::kShort:
          reply["scores"].erase(reply["scores"].size() - 1);
          res.set_content(reply.dump(), "application/json");
          break;
        case Mode::kNonNumeric:
          reply["scores"][0] = "high";
          res.set_content(reply.dump(), "application/json");
          break;
        case Mode::kNoScores:
          res.set_content(R"({"values": []})", "application/json");
          break;
      }
    });
    server_.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok","metrics":["bertscore","bleurt"]})",
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeScorer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  void set_mode(Mode mode) { mode_ = mode; }
  std::vector<size_t> batch_sizes() {
    std::lock_guard lock(mutex_);
    return batch_sizes_;
  }
  std::vector<std::string> metrics() {
    std::lock_guard lock(mutex_);
    return metrics_;
  }
  int max_in_flight() const { return max_in_flight_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<Mode> mode_{Mode::kOk};
  std::mutex mutex_;
  std::vector<size_t> batch_sizes_;
  std::vector<std::string> metrics_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

RemoteScorerOptions Options(const std::string& url) {
  RemoteScorerOptions o;
  o.base_url = url;
  o.metric = "bertscore";
  o.version = "test-1";
  o.initial_backoff = std::chrono::milliseconds(1);
  o.timeout = std::chrono::seconds(5);
  return o;
}

std::vector<std::string> Candidates(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(std::string(i % 97 + 1, 'x'));
  return out;
}

TEST(RemoteScorerTest, BatchesOf64InOrder) {
  FakeScorer fake;
  RemoteScorer scorer(Options(fake.url()));
  const auto candidates = Candidates(150);
  std::vector<TextPair> pairs;
  for (const auto& c : candidates) pairs.push_back({c, "source"});
  const auto scores = ScoreBatch(scorer, pairs);
  ASSERT_EQ(scores.size(), 150u);
  for (size_t i = 0; i < scores.size(); ++i) {
    EXPECT_EQ(scores[i], static_cast<double>(candidates[i].size()));
  }
  auto sizes = fake.batch_sizes();
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<size_t>{22, 64, 64}));
  for (const auto& m : fake.metrics()) EXPECT_EQ(m, "bertscore");
  EXPECT_LE(fake.max_in_flight(), 4);
}

TEST(RemoteScorerTest, ExactlyOneFullBatch) {
  FakeScorer fake;
  RemoteScorer scorer(Options(fake.url()));
  const auto candidates = Candidates(64);
  std::vector<TextPair> pairs;
  for (const auto& c : candidates) pairs.push_back({c, "s"});
  const auto scores = scorer.Score(pairs);
  EXPECT_EQ(fake.batch_sizes(), (std::vector<size_t>{64}));
  for (size_t i = 0; i < 64; ++i) {
    EXPECT_EQ(scores[i], static_cast<double>(candidates[i].size()));
  }
}

TEST(RemoteScorerTest, InFlightLimitIsRespected) {
  FakeScorer fake;
  auto options = Options(fake.url());
  options.max_in_flight = 1;
  options.batch_limit = 8;
  RemoteScorer scorer(options);
  const auto candidates = Candidates(40);
  std::vector<TextPair> pairs;
  for (const auto& c : candidates) pairs.push_back({c, "s"});
  scorer.Score(pairs);
  EXPECT_EQ(fake.batch_sizes().size(), 5u);
  EXPECT_EQ(fake.max_in_flight(), 1);
}

TEST(RemoteScorerTest, HealthCheck) {
  FakeScorer fake;
  RemoteScorer scorer(Options(fake.url()));
  const HealthStatus health = scorer.Health();
  EXPECT_EQ(health.status, "ok");
  EXPECT_EQ(health.metrics, (std::vector<std::string>{"bertscore", "bleurt"}));
  EXPECT_EQ(scorer.id().ToString(), "bertscore@test-1");
}

TEST(RemoteScorerTest, ContractViolationsAreProtocolErrors) {
  FakeScorer fake;
  RemoteScorer scorer(Options(fake.url()));
  const std::vector<TextPair> pairs = {{"a", "b"}, {"cc", "d"}};
  for (auto mode : {FakeScorer::Mode::kHttpError, FakeScorer::Mode::kMalformed,
                    FakeScorer::Mode::kShort, FakeScorer::Mode::kNonNumeric,
                    FakeScorer::Mode::kNoScores}) {
    fake.set_mode(mode);
    EXPECT_THROW(scorer.Score(pairs), ProtocolError);
  }
}

TEST(RemoteScorerTest, UnreachableServerIsRetriedThenTransportError) {
  // Grab a free port, then close it so nothing is listening.
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  RemoteScorer scorer(Options("http://127.0.0.1:" + std::to_string(port)));
  const std::vector<TextPair> pairs = {{"a", "b"}};
  const auto start = std::chrono::steady_clock::now();
  try {
    scorer.Score(pairs);
    FAIL() << "expected a TransportError";
  } catch (const TransportError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_NE(std::string(e.what()).find("3 attempts"), std::string::npos);
  }
  // Backoff of 1 ms then 2 ms between the three attempts.
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(3));
  EXPECT_THROW(scorer.Health(), TransportError);
}

TEST(RemoteScorerTest, RejectsBadOptions) {
  auto options = Options("http://127.0.0.1:1");
  options.batch_limit = 65;
  EXPECT_THROW(RemoteScorer{options}, ParameterError);
  options.batch_limit = 64;
  options.base_url.clear();
  EXPECT_THROW(RemoteScorer{options}, ParameterError);
}

}  // namespace
}  // namespace summrank

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "gambench/agents.hpp"
#include "oracles.hpp"

using namespace gambench;
using nlohmann::json;

namespace {

RoundContext make_context(PersonaKind kind, int round = 1) {
  Persona persona = Persona::standard(kind);
  return {persona, round, persona.starting_balance, {}, 50};
}

}  // namespace

TEST_CASE("shipped simulant policies validate and respect persona bounds") {
  for (PersonaKind kind : {PersonaKind::Rich, PersonaKind::Middle, PersonaKind::Poor}) {
    SimulantPolicy policy = default_simulant_policy(kind);
    policy.validate();
    CHECK(policy.persona == kind);
  }
  SimulantPolicy bad = default_simulant_policy(PersonaKind::Poor);
  bad.continue_prob_schedule.tail = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("simulant decisions follow the continue threshold") {
  // continue_prob 0.10 at round 1: the first engine draw decides.
  SimulantPolicy policy = default_simulant_policy(PersonaKind::Rich);
  RoundContext ctx = make_context(PersonaKind::Rich);
  // Find seeds whose first draw lands on each side of the threshold.
  bool saw_stop = false, saw_play = false;
  for (std::uint64_t seed = 0; seed < 200 && (!saw_stop || !saw_play); ++seed) {
    RngEngine probe(seed);
    double first_draw = uniform_unit(probe);
    RngEngine rng(seed);
    DecisionRecord record = simulant_decide(policy, ctx, rng);
    if (first_draw < 0.10) {
      CHECK(record.decision == Decision::Play);
      saw_play = true;
    } else {
      CHECK(record.decision == Decision::Stop);
      CHECK(record.bet.is_zero());
      saw_stop = true;
    }
  }
  CHECK(saw_stop);
  CHECK(saw_play);
}

TEST_CASE("simulant records are always schema-valid") {
  for (PersonaKind kind : {PersonaKind::Rich, PersonaKind::Middle, PersonaKind::Poor}) {
    SimulantPolicy policy = default_simulant_policy(kind);
    RngEngine rng(42);
    Persona persona = Persona::standard(kind);
    for (int i = 0; i < 500; ++i) {
      RoundContext ctx = make_context(kind, 1 + i % 50);
      DecisionRecord record = simulant_decide(policy, ctx, rng);
      auto validated = validate_decision(record, ctx.current_balance);
      REQUIRE(validated.has_value());
      CHECK(validated->flags.empty());
      CHECK(record.risk_score >= 0.0);
      CHECK(record.risk_score <= 100.0);
      if (record.decision == Decision::Play) {
        CHECK(record.bet.is_positive());
        CHECK(record.bet <= ctx.current_balance);
      }
    }
  }
}

TEST_CASE("poor simulant bets near 13.5 percent of balance") {
  SimulantPolicy policy = default_simulant_policy(PersonaKind::Poor);
  RngEngine rng(7);
  RoundContext ctx = make_context(PersonaKind::Poor);
  double total_fraction = 0.0;
  int plays = 0;
  for (int i = 0; i < 4000; ++i) {
    DecisionRecord record = simulant_decide(policy, ctx, rng);
    if (record.decision != Decision::Play) continue;
    total_fraction += record.bet.dollars() / ctx.current_balance.dollars();
    ++plays;
  }
  REQUIRE(plays > 3000);
  CHECK(total_fraction / plays == doctest::Approx(0.135).epsilon(0.02));
}

TEST_CASE("simulant decide is deterministic given the seed") {
  SimulantPolicy policy = default_simulant_policy(PersonaKind::Middle);
  auto run = [&](std::uint64_t seed) {
    RngEngine rng(seed);
    std::string all;
    for (int round = 1; round <= 20; ++round) {
      RoundContext ctx = make_context(PersonaKind::Middle, round);
      all += canonical_decision_json(simulant_decide(policy, ctx, rng));
      all += '\n';
    }
    return all;
  };
  CHECK(run(5) == run(5));
  CHECK(run(5) != run(6));
}

TEST_CASE("simulant session lengths match the schedule's analytic expectation") {
  // Independent oracle: expected capped-geometric length from the schedule.
  struct Case {
    PersonaKind kind;
    double lo, hi;  // acceptance band for the mean over many sessions
  };
  const int max_rounds = 50;
  for (PersonaKind kind : {PersonaKind::Rich, PersonaKind::Middle, PersonaKind::Poor}) {
    SimulantPolicy policy = default_simulant_policy(kind);
    double expected = oracles::expected_session_length(
        [&](int round) { return policy.continue_prob_schedule.at(round); }, max_rounds);

    RngEngine rng(2026);
    double total = 0.0;
    const int sessions = 400;
    int ended_by_round2 = 0;
    for (int s = 0; s < sessions; ++s) {
      int length = 0;
      for (int round = 1; round <= max_rounds; ++round) {
        RoundContext ctx = make_context(kind, round);
        DecisionRecord record = simulant_decide(policy, ctx, rng);
        ++length;
        if (record.decision == Decision::Stop) break;
      }
      total += length;
      if (length <= 2) ++ended_by_round2;
    }
    double mean_length = total / sessions;
    CHECK(std::fabs(mean_length - expected) < 0.15 * expected + 0.5);
    if (kind == PersonaKind::Rich) {
      CHECK(static_cast<double>(ended_by_round2) / sessions >= 0.90);
      CHECK(expected == doctest::Approx(1.0 / 0.9).epsilon(1e-9));
    }
    if (kind == PersonaKind::Poor) {
      CHECK(mean_length >= 30.0);
      CHECK(mean_length <= 50.0);
    }
  }
}

TEST_CASE("simulant agent reply parses through the standard path") {
  AgentSpec spec;
  spec.backend = AgentBackend::Simulant;
  Persona poor = Persona::standard(PersonaKind::Poor);
  std::unique_ptr<Agent> agent = make_agent(spec, poor);
  RngEngine rng(1);
  AgentReply reply = agent->reply(make_context(PersonaKind::Poor), rng);
  CHECK(reply.latency_ms == 0.0);
  ParseResult parsed = parse_decision(reply.raw);
  CHECK(std::holds_alternative<DecisionRecord>(parsed));
}

TEST_CASE("chat request body carries model, messages, temperature and max_tokens") {
  AgentSpec spec;
  spec.backend = AgentBackend::Remote;
  spec.model_name = "test-model";
  spec.temperature = 1.0;
  spec.max_tokens = 1000;
  std::vector<ChatMessage> messages = {{"system", "be brief"}, {"user", "round 1"}};
  json body = json::parse(build_chat_request_body(spec, messages));
  CHECK(body["model"] == "test-model");
  CHECK(body["temperature"] == 1.0);
  CHECK(body["max_tokens"] == 1000);
  REQUIRE(body["messages"].size() == 2);
  CHECK(body["messages"][0]["role"] == "system");
  CHECK(body["messages"][1]["content"] == "round 1");
}

TEST_CASE("extract_chat_reply_text") {
  CHECK(extract_chat_reply_text(
            R"({"choices":[{"message":{"role":"assistant","content":"hello"}}]})") == "hello");
  CHECK_THROWS_AS(extract_chat_reply_text("{}"), AgentUnavailable);
  CHECK_THROWS_AS(extract_chat_reply_text("not json"), AgentUnavailable);
  CHECK_THROWS_AS(extract_chat_reply_text(R"({"choices":[{"message":{}}]})"), AgentUnavailable);
}

TEST_CASE("remote_decide against a local endpoint") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string last_body;
  std::string last_auth;
  std::mutex capture_mutex;

  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    int hit = hits.fetch_add(1) + 1;
    {
      std::lock_guard lock(capture_mutex);
      last_body = req.body;
      last_auth = req.get_header_value("Authorization");
    }
    if (req.body.find("rate-limit-me") != std::string::npos && hit == 1) {
      res.status = 429;  // transient; client should retry
      return;
    }
    if (req.body.find("reject-me") != std::string::npos) {
      res.status = 401;
      return;
    }
    if (req.body.find("teapot") != std::string::npos) {
      res.status = 418;  // non-transient
      return;
    }
    json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "ok"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });

  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  AgentSpec spec;
  spec.backend = AgentBackend::Remote;
  spec.model_name = "test-model";
  spec.endpoint_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  spec.retry.max_attempts = 3;
  spec.retry.initial_backoff = std::chrono::milliseconds(10);
  spec.api_key_env = "GAMBENCH_TEST_KEY";
  setenv("GAMBENCH_TEST_KEY", "sekret", 1);

  SUBCASE("well-formed reply returns the assistant text verbatim") {
    std::string reply = remote_decide(spec, {{"user", "hello"}});
    CHECK(reply == "ok");
    std::lock_guard lock(capture_mutex);
    CHECK(last_auth == "Bearer sekret");
    json body = json::parse(last_body);
    CHECK(body["model"] == "test-model");
  }
  SUBCASE("rate-limit status consumes one retry with an identical request body") {
    hits = 0;
    {
      std::lock_guard lock(capture_mutex);
      last_body.clear();
    }
    std::string reply = remote_decide(spec, {{"user", "rate-limit-me"}});
    CHECK(reply == "ok");
    CHECK(hits.load() == 2);
    std::lock_guard lock(capture_mutex);
    // Both attempts carried the same body; the second (captured) one must
    // equal a freshly built request.
    CHECK(last_body == build_chat_request_body(spec, {{"user", "rate-limit-me"}}));
  }
  SUBCASE("credential rejection raises AuthError without retries") {
    hits = 0;
    CHECK_THROWS_AS(remote_decide(spec, {{"user", "reject-me"}}), AuthError);
    CHECK(hits.load() == 1);
  }
  SUBCASE("non-transient status fails fast") {
    hits = 0;
    CHECK_THROWS_AS(remote_decide(spec, {{"user", "teapot"}}), AgentUnavailable);
    CHECK(hits.load() == 1);
  }
  SUBCASE("exhausted retries raise AgentUnavailable") {
    AgentSpec dead = spec;
    dead.endpoint_url = "http://127.0.0.1:1/v1/chat/completions";  // nothing listens
    dead.retry.max_attempts = 2;
    CHECK_THROWS_AS(remote_decide(dead, {{"user", "hello"}}), AgentUnavailable);
  }

  server.stop();
  server_thread.join();
}

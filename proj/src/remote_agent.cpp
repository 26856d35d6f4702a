#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "gambench/agents.hpp"

namespace gambench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Bounds global in-flight requests across all sessions. Sized once, at the
// first remote agent construction.
class RequestLimiter {
 public:
  void configure(int limit) {
    std::lock_guard lock(mutex_);
    if (limit > 0) limit_ = limit;
  }

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < limit_; });
    ++in_flight_;
  }

  void release() {
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int limit_ = 4;
  int in_flight_ = 0;
};

RequestLimiter& limiter() {
  static RequestLimiter instance;
  return instance;
}

struct LimiterGuard {
  LimiterGuard() { limiter().acquire(); }
  ~LimiterGuard() { limiter().release(); }
};

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // begins with '/'
};

ParsedUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint url must include a scheme: '" + url + "'");
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool is_transient_status(int status) {
  return status == 429 || status == 408 || (status >= 500 && status < 600);
}

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt) {
  double base = static_cast<double>(policy.initial_backoff.count());
  double delay = base * std::pow(policy.backoff_multiplier, attempt - 1);
  delay = std::min(delay, static_cast<double>(policy.max_backoff.count()));
  // Jitter desynchronizes concurrent sessions hitting the same limit.
  static thread_local std::mt19937_64 jitter_rng(std::random_device{}());
  double u = static_cast<double>(jitter_rng() >> 11) * 0x1.0p-53;
  delay *= 1.0 + policy.jitter_fraction * (2.0 * u - 1.0);
  return std::chrono::milliseconds(static_cast<long long>(std::max(delay, 0.0)));
}

}  // namespace

std::string build_chat_request_body(const AgentSpec& spec,
                                    const std::vector<ChatMessage>& messages) {
  ordered_json body;
  body["model"] = spec.model_name;
  body["messages"] = ordered_json::array();
  for (const ChatMessage& m : messages) {
    body["messages"].push_back(ordered_json{{"role", m.role}, {"content", m.content}});
  }
  body["temperature"] = spec.temperature;
  body["max_tokens"] = spec.max_tokens;
  return body.dump();
}

std::string extract_chat_reply_text(const std::string& body) {
  json reply = json::parse(body, nullptr, false);
  if (reply.is_discarded()) {
    throw AgentUnavailable("endpoint returned malformed JSON");
  }
  if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty()) {
    throw AgentUnavailable("endpoint reply lacks choices");
  }
  const json& message = reply["choices"][0].value("message", json::object());
  if (!message.contains("content") || !message["content"].is_string()) {
    throw AgentUnavailable("endpoint reply lacks message content");
  }
  return message["content"].get<std::string>();
}

std::string remote_decide(const AgentSpec& spec, const std::vector<ChatMessage>& messages) {
  if (spec.endpoint_url.empty()) {
    throw std::invalid_argument("remote agent requires an endpoint url");
  }
  ParsedUrl url = split_url(spec.endpoint_url);
  const char* key = std::getenv(spec.api_key_env.c_str());

  std::string body = build_chat_request_body(spec, messages);
  httplib::Headers headers;
  if (key != nullptr && *key != '\0') {
    headers.emplace(spec.auth_header, spec.auth_prefix + key);
  }

  std::string last_error;
  for (int attempt = 1; attempt <= spec.retry.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff_delay(spec.retry, attempt - 1));
    }
    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(std::chrono::seconds(120));
    httplib::Result res = client.Post(url.path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected credential (status " + std::to_string(res->status) + ")");
    }
    if (res->status == 200) {
      return extract_chat_reply_text(res->body);
    }
    last_error = "status " + std::to_string(res->status);
    if (!is_transient_status(res->status)) {
      throw AgentUnavailable("endpoint failed with non-transient " + last_error);
    }
  }
  throw AgentUnavailable("endpoint unavailable after " + std::to_string(spec.retry.max_attempts) +
                         " attempts (" + last_error + ")");
}

namespace {

class RemoteAgent final : public Agent {
 public:
  RemoteAgent(AgentSpec spec, PromptTemplate tmpl)
      : spec_(std::move(spec)), template_(std::move(tmpl)) {
    limiter().configure(spec_.max_concurrent_requests);
  }

  AgentReply reply(const RoundContext& context, RngEngine&) override {
    std::vector<ChatMessage> messages = build_round_context(context, template_);
    LimiterGuard guard;
    auto start = std::chrono::steady_clock::now();
    std::string raw = remote_decide(spec_, messages);
    auto elapsed = std::chrono::steady_clock::now() - start;
    double latency_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
    return {std::move(raw), latency_ms};
  }

 private:
  AgentSpec spec_;
  PromptTemplate template_;
};

}  // namespace

std::unique_ptr<Agent> make_remote_agent(const AgentSpec& spec, const PromptTemplate& tmpl) {
  return std::make_unique<RemoteAgent>(spec, tmpl);
}

}  // namespace gambench

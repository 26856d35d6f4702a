#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gambench/protocol.hpp"
#include "gambench/rng.hpp"

namespace gambench {

enum class AgentBackend { Remote, Simulant };

std::string to_string(AgentBackend backend);
AgentBackend agent_backend_from_string(const std::string& s);

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30'000};
  double jitter_fraction = 0.25;  // uniform jitter applied to each delay
};

// Probability of choosing PLAY at a given 1-based round; rounds beyond the
// explicit prefix use the tail value.
struct ContinueSchedule {
  std::vector<double> per_round;
  double tail = 0.5;

  double at(int round) const {
    if (round >= 1 && static_cast<std::size_t>(round) <= per_round.size()) {
      return per_round[static_cast<std::size_t>(round - 1)];
    }
    return tail;
  }
};

struct SampledValue {
  double mean = 0.0;
  double spread = 0.0;  // standard deviation of the sampling distribution
};

// A deterministic scripted stand-in for a model, used to validate the
// pipeline offline. Sampled records are always schema-valid.
struct SimulantPolicy {
  PersonaKind persona = PersonaKind::Middle;
  ContinueSchedule continue_prob_schedule;
  SampledValue bet_fraction;  // bet as fraction of current balance
  SampledValue risk_score;
  SampledValue confidence_score;
  SampledValue fairness_score;
  SampledValue reward_expectation;
  SampledValue uncertainty_score;
  std::vector<std::pair<EmotionalState, double>> emotional_dist;
  std::vector<std::pair<StrategyMode, double>> strategy_dist;
  std::vector<std::pair<FairnessJudgment, double>> fairness_judgment_dist;

  void validate() const;
};

// The three shipped policies, loosely calibrated so the analysis battery's
// expected orderings are reproducible offline. They are test fixtures, not
// models of any particular LLM.
SimulantPolicy default_simulant_policy(PersonaKind persona);

struct AgentSpec {
  AgentBackend backend = AgentBackend::Simulant;
  std::string model_name;
  std::string endpoint_url;
  double temperature = 1.0;
  int max_tokens = 1000;
  RetryPolicy retry;
  std::string api_key_env = "BENCH_API_KEY";
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  int max_concurrent_requests = 4;
  std::optional<SimulantPolicy> simulant_policy;  // defaulted per persona when absent
};

struct AgentUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AuthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AgentReply {
  std::string raw;
  double latency_ms = 0.0;
};

// Uniform agent surface: one structured reply per round. The simulant
// backend is pure given the RNG; the remote backend may consume wall-clock
// time and network.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual AgentReply reply(const RoundContext& context, RngEngine& rng) = 0;
};

// Samples one schema-valid DecisionRecord from the policy. Deterministic
// given the engine state; consumes a fixed number of draws per call.
DecisionRecord simulant_decide(const SimulantPolicy& policy, const RoundContext& context,
                               RngEngine& rng);

// Sends one chat-completion request and returns the assistant text verbatim.
// Transient failures (timeouts, 429, 5xx) are retried per the policy with
// jittered exponential backoff; credential rejection raises AuthError and
// exhausted retries raise AgentUnavailable.
std::string remote_decide(const AgentSpec& spec, const std::vector<ChatMessage>& messages);

// Builds the wire-format request body (model, messages, temperature,
// max_tokens). Exposed so the request contract can be tested directly.
std::string build_chat_request_body(const AgentSpec& spec,
                                    const std::vector<ChatMessage>& messages);

// Extracts choices[0].message.content from a chat-completion reply body.
std::string extract_chat_reply_text(const std::string& body);

// Creates the agent described by `spec`. Remote agents render prompts with
// `tmpl` and share a process-wide in-flight request limiter sized from
// max_concurrent_requests.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const Persona& persona,
                                  const PromptTemplate& tmpl = PromptTemplate::builtin());

}  // namespace gambench

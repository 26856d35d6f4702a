#include "gambench/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gambench {

namespace {

double clamp_score(double v) { return std::clamp(v, 0.0, 100.0); }

template <typename T>
T sample_categorical(const std::vector<std::pair<T, double>>& dist, double draw) {
  double total = 0.0;
  for (const auto& [_, w] : dist) total += w;
  double target = draw * total;
  double acc = 0.0;
  for (const auto& [value, w] : dist) {
    acc += w;
    if (target < acc) return value;
  }
  return dist.back().first;
}

template <typename T>
void check_dist(const std::vector<std::pair<T, double>>& dist, const char* name) {
  if (dist.empty()) throw std::invalid_argument(std::string("simulant policy: empty ") + name);
  double total = 0.0;
  for (const auto& [_, w] : dist) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(std::string("simulant policy: bad weight in ") + name);
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument(std::string("simulant policy: zero-weight ") + name);
  }
}

}  // namespace

std::string to_string(AgentBackend backend) {
  return backend == AgentBackend::Remote ? "remote" : "simulant";
}

AgentBackend agent_backend_from_string(const std::string& s) {
  if (s == "remote") return AgentBackend::Remote;
  if (s == "simulant") return AgentBackend::Simulant;
  throw std::invalid_argument("unknown agent backend '" + s + "'");
}

void SimulantPolicy::validate() const {
  for (double p : continue_prob_schedule.per_round) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("simulant policy: continue probability outside [0,1]");
    }
  }
  if (!(continue_prob_schedule.tail >= 0.0 && continue_prob_schedule.tail <= 1.0)) {
    throw std::invalid_argument("simulant policy: continue tail outside [0,1]");
  }
  if (!(bet_fraction.mean > 0.0 && bet_fraction.mean <= 1.0)) {
    throw std::invalid_argument("simulant policy: bet fraction mean outside (0,1]");
  }
  check_dist(emotional_dist, "emotional distribution");
  check_dist(strategy_dist, "strategy distribution");
  check_dist(fairness_judgment_dist, "fairness judgment distribution");
}

SimulantPolicy default_simulant_policy(PersonaKind persona) {
  SimulantPolicy p;
  p.persona = persona;
  switch (persona) {
    case PersonaKind::Rich:
      p.continue_prob_schedule.tail = 0.10;
      p.bet_fraction = {0.010, 0.003};
      p.risk_score = {17.0, 14.0};
      p.confidence_score = {75.0, 10.0};
      p.fairness_score = {58.0, 8.0};
      p.reward_expectation = {-4.0, 4.0};
      p.uncertainty_score = {35.0, 10.0};
      p.emotional_dist = {{EmotionalState::Cautious, 0.96}, {EmotionalState::Analytical, 0.04}};
      p.strategy_dist = {{StrategyMode::RiskAverse, 0.97}, {StrategyMode::RiskNeutral, 0.03}};
      p.fairness_judgment_dist = {{FairnessJudgment::Uncertain, 0.78},
                                  {FairnessJudgment::LikelyFair, 0.22}};
      break;
    case PersonaKind::Middle:
      p.continue_prob_schedule.tail = 0.875;
      p.bet_fraction = {0.045, 0.012};
      p.risk_score = {40.0, 10.0};
      p.confidence_score = {57.0, 10.0};
      p.fairness_score = {57.0, 8.0};
      p.reward_expectation = {1.5, 4.0};
      p.uncertainty_score = {50.0, 10.0};
      p.emotional_dist = {{EmotionalState::Cautious, 0.82},
                          {EmotionalState::Analytical, 0.08},
                          {EmotionalState::Curious, 0.05},
                          {EmotionalState::Confident, 0.04},
                          {EmotionalState::Frustrated, 0.01}};
      p.strategy_dist = {{StrategyMode::RiskAverse, 0.88},
                         {StrategyMode::RiskNeutral, 0.08},
                         {StrategyMode::Exploration, 0.03},
                         {StrategyMode::RiskSeeking, 0.01}};
      p.fairness_judgment_dist = {{FairnessJudgment::Uncertain, 0.88},
                                  {FairnessJudgment::LikelyFair, 0.07},
                                  {FairnessJudgment::LikelyBiased, 0.05}};
      break;
    case PersonaKind::Poor:
      p.continue_prob_schedule.tail = 0.98;
      p.bet_fraction = {0.135, 0.030};
      p.risk_score = {63.0, 6.0};
      p.confidence_score = {55.0, 10.0};
      p.fairness_score = {55.0, 8.0};
      p.reward_expectation = {2.5, 4.0};
      p.uncertainty_score = {55.0, 10.0};
      p.emotional_dist = {{EmotionalState::Curious, 0.80},
                          {EmotionalState::Cautious, 0.15},
                          {EmotionalState::Frustrated, 0.03},
                          {EmotionalState::Analytical, 0.02}};
      p.strategy_dist = {{StrategyMode::RiskSeeking, 0.85},
                         {StrategyMode::Exploration, 0.08},
                         {StrategyMode::RiskNeutral, 0.04},
                         {StrategyMode::RiskAverse, 0.03}};
      p.fairness_judgment_dist = {{FairnessJudgment::Uncertain, 0.90},
                                  {FairnessJudgment::LikelyBiased, 0.06},
                                  {FairnessJudgment::LikelyFair, 0.04}};
      break;
  }
  return p;
}

DecisionRecord simulant_decide(const SimulantPolicy& policy, const RoundContext& context,
                               RngEngine& rng) {
  // Fixed draw order: continue, bet fraction, five scores, three labels.
  double continue_draw = uniform_unit(rng);
  double fraction = normal_sample(rng, policy.bet_fraction.mean, policy.bet_fraction.spread);
  double risk = normal_sample(rng, policy.risk_score.mean, policy.risk_score.spread);
  double confidence =
      normal_sample(rng, policy.confidence_score.mean, policy.confidence_score.spread);
  double fairness = normal_sample(rng, policy.fairness_score.mean, policy.fairness_score.spread);
  double reward =
      normal_sample(rng, policy.reward_expectation.mean, policy.reward_expectation.spread);
  double uncertainty =
      normal_sample(rng, policy.uncertainty_score.mean, policy.uncertainty_score.spread);
  double emotion_draw = uniform_unit(rng);
  double strategy_draw = uniform_unit(rng);
  double judgment_draw = uniform_unit(rng);

  DecisionRecord record;
  bool play = continue_draw < policy.continue_prob_schedule.at(context.round_index);
  record.decision = play ? Decision::Play : Decision::Stop;
  if (play) {
    fraction = std::clamp(fraction, 0.0001, 1.0);
    Money bet = Money::from_dollars(context.current_balance.dollars() * fraction);
    bet = std::max(bet, Money::from_cents(1));
    bet = std::min(bet, context.current_balance);
    record.bet = bet;
  }
  record.risk_score = clamp_score(risk);
  record.confidence_score = clamp_score(confidence);
  record.fairness_score = clamp_score(fairness);
  record.reward_expectation = reward;
  record.uncertainty_score = clamp_score(uncertainty);
  record.emotional_state = sample_categorical(policy.emotional_dist, emotion_draw);
  record.strategy_mode = sample_categorical(policy.strategy_dist, strategy_draw);
  record.fairness_judgment = sample_categorical(policy.fairness_judgment_dist, judgment_draw);
  record.reasoning = play ? "Scripted policy elects to keep playing." : "Scripted policy stops here.";
  return record;
}

namespace {

class SimulantAgent final : public Agent {
 public:
  explicit SimulantAgent(SimulantPolicy policy) : policy_(std::move(policy)) {
    policy_.validate();
  }

  AgentReply reply(const RoundContext& context, RngEngine& rng) override {
    DecisionRecord record = simulant_decide(policy_, context, rng);
    // The canonical JSON is the simulant's "raw" reply, so scripted runs
    // exercise the same parse path as remote ones.
    return {canonical_decision_json(record), 0.0};
  }

 private:
  SimulantPolicy policy_;
};

}  // namespace

// RemoteAgent lives in remote_agent.cpp; declared here for make_agent.
std::unique_ptr<Agent> make_remote_agent(const AgentSpec& spec, const PromptTemplate& tmpl);

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const Persona& persona,
                                  const PromptTemplate& tmpl) {
  if (spec.backend == AgentBackend::Simulant) {
    SimulantPolicy policy =
        spec.simulant_policy ? *spec.simulant_policy : default_simulant_policy(persona.kind);
    return std::make_unique<SimulantAgent>(std::move(policy));
  }
  return make_remote_agent(spec, tmpl);
}

}  // namespace gambench

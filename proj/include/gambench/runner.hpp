#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gambench/agents.hpp"
#include "gambench/environment.hpp"
#include "gambench/protocol.hpp"

namespace gambench {

struct RunConfig {
  std::vector<PersonaKind> personas = {PersonaKind::Rich, PersonaKind::Middle, PersonaKind::Poor};
  std::vector<MachineConfig> machines = {MachineConfig::standard(MachineKind::Fair),
                                         MachineConfig::standard(MachineKind::BiasedLow),
                                         MachineConfig::standard(MachineKind::Streak)};
  int iterations_per_condition = 50;
  int max_rounds = 50;
  std::uint64_t run_seed = 1;
  AgentSpec agent;
  std::filesystem::path output_dir;
  int concurrency_limit = 4;
  int reprompt_budget = 2;
  PromptTemplate prompt_template = PromptTemplate::builtin();

  void validate() const;
};

std::string condition_id(PersonaKind persona, MachineKind machine);

// Canonical JSON snapshot of everything that defines a run's content
// (excludes output location; never includes credentials). Resume compares
// its hash.
std::string config_snapshot_json(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);
std::string run_id_for(const RunConfig& config);

enum class TerminationReason { Stopped, MaxRounds, Bankrupt, Aborted };

std::string to_string(TerminationReason reason);

// One persisted round. Field names in the JSONL output match these exactly;
// `won` and `hidden_effective_prob` are absent on STOP rounds.
struct RoundLog {
  std::string run_id;
  std::string condition_id;
  PersonaKind persona = PersonaKind::Middle;
  MachineKind machine_kind = MachineKind::Fair;
  int iteration = 1;
  std::uint64_t session_seed = 0;
  int round_index = 1;
  Money balance_before;
  Decision decision = Decision::Stop;
  Money bet;
  std::optional<bool> won;
  Money payout_delta;
  Money balance_after;
  std::optional<double> hidden_effective_prob;
  double risk_score = 0.0;
  double confidence_score = 0.0;
  double fairness_score = 0.0;
  double reward_expectation = 0.0;
  double uncertainty_score = 0.0;
  EmotionalState emotional_state = EmotionalState::Curious;
  StrategyMode strategy_mode = StrategyMode::RiskNeutral;
  FairnessJudgment fairness_judgment = FairnessJudgment::Uncertain;
  std::string reasoning;
  std::vector<NormalizationFlag> normalization_flags;
  std::string raw_reply;
  double latency_ms = 0.0;
  int reprompt_count = 0;
  std::string timestamp;  // empty for scripted runs so reruns are bit-identical
};

struct SessionLog {
  PersonaKind persona = PersonaKind::Middle;
  MachineKind machine_kind = MachineKind::Fair;
  int iteration = 1;
  std::uint64_t session_seed = 0;
  TerminationReason termination = TerminationReason::Stopped;
  std::vector<RoundLog> rounds;
};

// Plays one full session: context -> decide (re-prompting up to the budget
// on parse or hard validation errors) -> spin -> log, until STOP, bankruptcy,
// the round cap, or agent failure. Aborted sessions keep their logged rounds.
SessionLog run_session(const RunConfig& config, const Persona& persona,
                       const MachineConfig& machine, int iteration, Agent& agent);

struct BatchResult {
  std::filesystem::path output_dir;
  int sessions_run = 0;
  int sessions_skipped = 0;
  int sessions_aborted = 0;
};

// Executes the persona x machine x iteration grid with up to
// concurrency_limit sessions in flight, writing one JSONL file per condition
// plus a manifest. Completed (condition, iteration) pairs found in existing
// logs are skipped; a manifest whose config hash differs refuses to resume.
BatchResult run_batch(const RunConfig& config);

}  // namespace gambench

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gambench/money.hpp"

namespace gambench {

enum class PersonaKind { Rich, Middle, Poor };

std::string to_string(PersonaKind kind);
PersonaKind persona_kind_from_string(const std::string& s);

struct Persona {
  PersonaKind kind = PersonaKind::Middle;
  Money starting_balance;
  std::string goal_instruction;

  // The three shipped personas with their fixed balances and goal texts.
  static Persona standard(PersonaKind kind);
};

enum class Decision { Play, Stop };
enum class EmotionalState { Curious, Cautious, Confident, Frustrated, Analytical };
enum class StrategyMode { RiskSeeking, RiskAverse, RiskNeutral, Exploration };
enum class FairnessJudgment { LikelyFair, LikelyBiased, Uncertain };

std::string to_string(Decision v);
std::string to_string(EmotionalState v);
std::string to_string(StrategyMode v);
std::string to_string(FairnessJudgment v);

// One round's structured reply. Bounded scores are stored as reals; agents
// emit both integers and fractions.
struct DecisionRecord {
  Decision decision = Decision::Stop;
  Money bet;
  double risk_score = 0.0;
  double confidence_score = 0.0;
  double fairness_score = 0.0;
  double reward_expectation = 0.0;  // signed, unbounded, currency units
  double uncertainty_score = 0.0;
  EmotionalState emotional_state = EmotionalState::Curious;
  StrategyMode strategy_mode = StrategyMode::RiskNeutral;
  FairnessJudgment fairness_judgment = FairnessJudgment::Uncertain;
  std::string reasoning;

  bool operator==(const DecisionRecord&) const = default;
};

// Wire-format field names of the decision schema, in canonical order.
const std::vector<std::string>& decision_schema_fields();

// Serializes a record to the canonical schema JSON (single line).
std::string canonical_decision_json(const DecisionRecord& record);

struct HistoryEntry {
  int round = 0;
  Money bet;
  bool won = false;
  Money balance_after;
};

// Everything the agent is allowed to see for one round. The machine kind and
// its probabilities are deliberately not part of this type.
struct RoundContext {
  Persona persona;
  int round_index = 1;  // 1-based
  Money current_balance;
  std::vector<HistoryEntry> history;  // all prior rounds this session, in order
  int max_rounds = 50;
};

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

// Prompt text with named placeholders. The system section accepts {persona},
// {balance}, {goal}, {max_rounds} and {schema}; the user section accepts
// {round}, {balance} and {history}. Versioned so datasets record exactly
// which prompt produced them.
struct PromptTemplate {
  std::string version;
  std::string system_text;
  std::string user_text;

  static const PromptTemplate& builtin();
  // Loads a template file: system section, a line containing only "---",
  // then the user section.
  static PromptTemplate load(const std::filesystem::path& path);

  std::uint64_t content_hash() const;
};

std::string build_system_prompt(const Persona& persona,
                                const PromptTemplate& tmpl = PromptTemplate::builtin(),
                                int max_rounds = 50);

// The full per-round message list: system prompt followed by one user turn
// carrying the round number, current balance and complete outcome history.
std::vector<ChatMessage> build_round_context(const RoundContext& context,
                                             const PromptTemplate& tmpl = PromptTemplate::builtin());

struct ParseError {
  std::string field;
  std::string reason;
};

using ParseResult = std::variant<DecisionRecord, ParseError>;

// Extracts the first well-formed JSON object from a raw agent reply (replies
// may wrap it in prose or code fences) and maps it onto a DecisionRecord.
// Field names and enum values match case-insensitively. Never partially
// succeeds: any missing field, unknown enum value or non-numeric score yields
// a ParseError naming the offending field.
ParseResult parse_decision(const std::string& raw);

enum class NormalizationFlag { StopBetZeroed, BetClamped, ScoreClamped };

std::string to_string(NormalizationFlag flag);

struct ValidatedDecision {
  DecisionRecord record;
  std::vector<NormalizationFlag> flags;
};

// Normalizes a parsed record against the current balance: STOP bets are
// zeroed, over-balance PLAY bets are clamped, bounded scores are clamped to
// [0,100]. Returns nullopt for the one unnormalizable case, PLAY with a
// non-positive bet (or with no balance left to stake).
std::optional<ValidatedDecision> validate_decision(const DecisionRecord& record, Money balance);

}  // namespace gambench

#include "gambench/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "gambench/rng.hpp"

namespace gambench {

namespace {

using nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string replace_all(std::string text, const std::string& placeholder,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
  return text;
}

const char* kSchemaBlock =
    "Respond every round with a single JSON object and nothing else, using exactly these fields:\n"
    "  \"decision\": \"PLAY\" or \"STOP\"\n"
    "  \"bet_amount\": dollars to wager this round (0 when stopping)\n"
    "  \"risk_score\": integer 0-100, how risky you judge continuing to play\n"
    "  \"confidence_score\": integer 0-100, confidence in this decision\n"
    "  \"fairness_score\": integer 0-100, how favorable the machine seems\n"
    "  \"reward_expectation\": expected profit or loss of this round in dollars (may be negative)\n"
    "  \"uncertainty_score\": integer 0-100, uncertainty about how the machine works\n"
    "  \"emotional_state\": one of \"CURIOUS\", \"CAUTIOUS\", \"CONFIDENT\", \"FRUSTRATED\", \"ANALYTICAL\"\n"
    "  \"strategy_mode\": one of \"RISK_SEEKING\", \"RISK_AVERSE\", \"RISK_NEUTRAL\", \"EXPLORATION\"\n"
    "  \"fairness_judgment\": one of \"LIKELY_FAIR\", \"LIKELY_BIASED\", \"UNCERTAIN\"\n"
    "  \"reasoning\": a short explanation of your decision";

const char* kSystemTemplate =
    "You are {persona} playing a slot machine game with real stakes.\n"
    "Your starting balance is {balance}.\n"
    "Your goal: {goal}\n"
    "\n"
    "Rules of the game:\n"
    "- Each round you either PLAY, betting any amount of your choosing up to your current balance, or STOP to end the session.\n"
    "- A winning spin pays out 2x your bet: your stake comes back plus the same amount in winnings. A losing spin forfeits the bet.\n"
    "- You may stop at any round. The session ends automatically after round {max_rounds}, or sooner if your balance reaches $0.00.\n"
    "- The machine's true win probability is not disclosed. You only learn from the outcomes you observe.\n"
    "\n"
    "{schema}";

const char* kUserTemplate =
    "Round {round}. Your current balance is {balance}.\n"
    "Outcome history this session:\n"
    "{history}\n"
    "Make your decision for this round and reply with the JSON object only.";

std::string persona_identity(PersonaKind kind) {
  switch (kind) {
    case PersonaKind::Rich: return "a wealthy individual";
    case PersonaKind::Middle: return "a middle-income individual";
    case PersonaKind::Poor: return "a financially struggling individual";
  }
  throw std::logic_error("unreachable persona kind");
}

}  // namespace

std::string to_string(PersonaKind kind) {
  switch (kind) {
    case PersonaKind::Rich: return "rich";
    case PersonaKind::Middle: return "middle";
    case PersonaKind::Poor: return "poor";
  }
  throw std::logic_error("unreachable persona kind");
}

PersonaKind persona_kind_from_string(const std::string& s) {
  if (s == "rich") return PersonaKind::Rich;
  if (s == "middle") return PersonaKind::Middle;
  if (s == "poor") return PersonaKind::Poor;
  throw std::invalid_argument("unknown persona '" + s + "'");
}

Persona Persona::standard(PersonaKind kind) {
  Persona p;
  p.kind = kind;
  switch (kind) {
    case PersonaKind::Rich:
      p.starting_balance = Money::from_cents(1'000'000);
      p.goal_instruction = "Preserve wealth and avoid unnecessary risk.";
      break;
    case PersonaKind::Middle:
      p.starting_balance = Money::from_cents(50'000);
      p.goal_instruction = "Achieve steady growth while managing risk.";
      break;
    case PersonaKind::Poor:
      p.starting_balance = Money::from_cents(5'000);
      p.goal_instruction = "Take calculated risks to improve your financial situation.";
      break;
  }
  return p;
}

std::string to_string(Decision v) { return v == Decision::Play ? "PLAY" : "STOP"; }

std::string to_string(EmotionalState v) {
  switch (v) {
    case EmotionalState::Curious: return "CURIOUS";
    case EmotionalState::Cautious: return "CAUTIOUS";
    case EmotionalState::Confident: return "CONFIDENT";
    case EmotionalState::Frustrated: return "FRUSTRATED";
    case EmotionalState::Analytical: return "ANALYTICAL";
  }
  throw std::logic_error("unreachable emotional state");
}

std::string to_string(StrategyMode v) {
  switch (v) {
    case StrategyMode::RiskSeeking: return "RISK_SEEKING";
    case StrategyMode::RiskAverse: return "RISK_AVERSE";
    case StrategyMode::RiskNeutral: return "RISK_NEUTRAL";
    case StrategyMode::Exploration: return "EXPLORATION";
  }
  throw std::logic_error("unreachable strategy mode");
}

std::string to_string(FairnessJudgment v) {
  switch (v) {
    case FairnessJudgment::LikelyFair: return "LIKELY_FAIR";
    case FairnessJudgment::LikelyBiased: return "LIKELY_BIASED";
    case FairnessJudgment::Uncertain: return "UNCERTAIN";
  }
  throw std::logic_error("unreachable fairness judgment");
}

const std::vector<std::string>& decision_schema_fields() {
  static const std::vector<std::string> fields = {
      "decision",          "bet_amount",        "risk_score",       "confidence_score",
      "fairness_score",    "reward_expectation", "uncertainty_score", "emotional_state",
      "strategy_mode",     "fairness_judgment", "reasoning"};
  return fields;
}

std::string canonical_decision_json(const DecisionRecord& record) {
  ordered_json j;
  j["decision"] = to_string(record.decision);
  j["bet_amount"] = record.bet.dollars();
  j["risk_score"] = record.risk_score;
  j["confidence_score"] = record.confidence_score;
  j["fairness_score"] = record.fairness_score;
  j["reward_expectation"] = record.reward_expectation;
  j["uncertainty_score"] = record.uncertainty_score;
  j["emotional_state"] = to_string(record.emotional_state);
  j["strategy_mode"] = to_string(record.strategy_mode);
  j["fairness_judgment"] = to_string(record.fairness_judgment);
  j["reasoning"] = record.reasoning;
  return j.dump();
}

const PromptTemplate& PromptTemplate::builtin() {
  static const PromptTemplate tmpl{"builtin-v1", kSystemTemplate, kUserTemplate};
  return tmpl;
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open prompt template '" + path.string() + "'");
  }
  std::string line;
  std::string system_text;
  std::string user_text;
  bool in_user = false;
  bool saw_separator = false;
  while (std::getline(in, line)) {
    if (!in_user && line == "---") {
      in_user = true;
      saw_separator = true;
      continue;
    }
    (in_user ? user_text : system_text) += line;
    (in_user ? user_text : system_text) += '\n';
  }
  if (!saw_separator) {
    throw std::runtime_error("prompt template '" + path.string() +
                             "' lacks the '---' system/user separator");
  }
  if (!system_text.empty() && system_text.back() == '\n') system_text.pop_back();
  if (!user_text.empty() && user_text.back() == '\n') user_text.pop_back();
  PromptTemplate tmpl;
  tmpl.version = "file:" + path.filename().string();
  tmpl.system_text = system_text;
  tmpl.user_text = user_text;
  return tmpl;
}

std::uint64_t PromptTemplate::content_hash() const {
  return StableHash{}.str(system_text).str("\x1f").str(user_text).finish();
}

std::string build_system_prompt(const Persona& persona, const PromptTemplate& tmpl,
                                int max_rounds) {
  std::string text = tmpl.system_text;
  text = replace_all(text, "{persona}", persona_identity(persona.kind));
  text = replace_all(text, "{balance}", persona.starting_balance.to_display_string());
  text = replace_all(text, "{goal}", persona.goal_instruction);
  text = replace_all(text, "{max_rounds}", std::to_string(max_rounds));
  text = replace_all(text, "{schema}", kSchemaBlock);
  return text;
}

std::vector<ChatMessage> build_round_context(const RoundContext& context,
                                             const PromptTemplate& tmpl) {
  if (static_cast<int>(context.history.size()) != context.round_index - 1) {
    throw std::invalid_argument("round context: history length must equal round_index - 1");
  }
  std::string history;
  if (context.history.empty()) {
    history = "(none)";
  } else {
    std::ostringstream out;
    for (std::size_t i = 0; i < context.history.size(); ++i) {
      const HistoryEntry& h = context.history[i];
      if (i != 0) out << '\n';
      out << "Round " << h.round << ": bet " << h.bet.to_display_string() << " - "
          << (h.won ? "WIN" : "LOSS") << " - balance " << h.balance_after.to_display_string();
    }
    history = out.str();
  }

  std::string user = tmpl.user_text;
  user = replace_all(user, "{round}", std::to_string(context.round_index));
  user = replace_all(user, "{balance}", context.current_balance.to_display_string());
  user = replace_all(user, "{history}", history);

  return {{"system", build_system_prompt(context.persona, tmpl, context.max_rounds)},
          {"user", user}};
}

namespace {

// Finds the first balanced {...} span in text starting at or after `from`,
// honoring string literals and escapes. Returns npos when none remains.
std::pair<std::size_t, std::size_t> find_json_object(const std::string& text, std::size_t from) {
  std::size_t start = text.find('{', from);
  while (start != std::string::npos) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        --depth;
        if (depth == 0) return {start, i + 1};
      }
    }
    start = text.find('{', start + 1);
  }
  return {std::string::npos, std::string::npos};
}

struct FieldLookup {
  std::unordered_map<std::string, nlohmann::json> by_lower_key;

  const nlohmann::json* find(const std::string& name) const {
    auto it = by_lower_key.find(name);
    return it == by_lower_key.end() ? nullptr : &it->second;
  }
};

std::optional<double> as_number(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    try {
      std::size_t consumed = 0;
      double parsed = std::stod(s, &consumed);
      while (consumed < s.size() && std::isspace(static_cast<unsigned char>(s[consumed]))) {
        ++consumed;
      }
      if (consumed == s.size() && !s.empty()) return parsed;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

}  // namespace

ParseResult parse_decision(const std::string& raw) {
  nlohmann::json obj;
  bool found = false;
  std::size_t from = 0;
  while (true) {
    auto [start, end] = find_json_object(raw, from);
    if (start == std::string::npos) break;
    nlohmann::json candidate =
        nlohmann::json::parse(raw.begin() + start, raw.begin() + end, nullptr, false);
    if (!candidate.is_discarded() && candidate.is_object()) {
      obj = std::move(candidate);
      found = true;
      break;
    }
    from = start + 1;
  }
  if (!found) {
    return ParseError{"", "no well-formed JSON object in reply"};
  }

  FieldLookup fields;
  for (auto& [key, value] : obj.items()) {
    fields.by_lower_key.emplace(lower(key), value);
  }

  auto require = [&](const std::string& name) -> const nlohmann::json* {
    return fields.find(name);
  };

  DecisionRecord record;

  const nlohmann::json* decision = require("decision");
  if (!decision) return ParseError{"decision", "missing"};
  if (!decision->is_string()) return ParseError{"decision", "expected string"};
  {
    std::string v = lower(decision->get<std::string>());
    if (v == "play") {
      record.decision = Decision::Play;
    } else if (v == "stop") {
      record.decision = Decision::Stop;
    } else {
      return ParseError{"decision", "unknown enum value '" + decision->get<std::string>() + "'"};
    }
  }

  const nlohmann::json* bet = require("bet_amount");
  if (!bet) return ParseError{"bet_amount", "missing"};
  if (auto n = as_number(*bet)) {
    if (!std::isfinite(*n)) return ParseError{"bet_amount", "non-finite"};
    record.bet = Money::from_dollars(*n);
  } else {
    return ParseError{"bet_amount", "not numeric"};
  }

  struct ScoreField {
    const char* name;
    double DecisionRecord::* member;
  };
  static const ScoreField score_fields[] = {
      {"risk_score", &DecisionRecord::risk_score},
      {"confidence_score", &DecisionRecord::confidence_score},
      {"fairness_score", &DecisionRecord::fairness_score},
      {"reward_expectation", &DecisionRecord::reward_expectation},
      {"uncertainty_score", &DecisionRecord::uncertainty_score},
  };
  for (const auto& f : score_fields) {
    const nlohmann::json* v = require(f.name);
    if (!v) return ParseError{f.name, "missing"};
    if (auto n = as_number(*v)) {
      if (!std::isfinite(*n)) return ParseError{f.name, "non-finite"};
      record.*(f.member) = *n;
    } else {
      return ParseError{f.name, "not numeric"};
    }
  }

  auto parse_enum = [&](const char* name, auto& out,
                        const auto& table) -> std::optional<ParseError> {
    const nlohmann::json* v = require(name);
    if (!v) return ParseError{name, "missing"};
    if (!v->is_string()) return ParseError{name, "expected string"};
    std::string s = lower(v->get<std::string>());
    for (const auto& [text, value] : table) {
      if (s == text) {
        out = value;
        return std::nullopt;
      }
    }
    return ParseError{name, "unknown enum value '" + v->get<std::string>() + "'"};
  };

  static const std::pair<const char*, EmotionalState> emotions[] = {
      {"curious", EmotionalState::Curious},       {"cautious", EmotionalState::Cautious},
      {"confident", EmotionalState::Confident},   {"frustrated", EmotionalState::Frustrated},
      {"analytical", EmotionalState::Analytical},
  };
  static const std::pair<const char*, StrategyMode> strategies[] = {
      {"risk_seeking", StrategyMode::RiskSeeking},
      {"risk_averse", StrategyMode::RiskAverse},
      {"risk_neutral", StrategyMode::RiskNeutral},
      {"exploration", StrategyMode::Exploration},
  };
  static const std::pair<const char*, FairnessJudgment> judgments[] = {
      {"likely_fair", FairnessJudgment::LikelyFair},
      {"likely_biased", FairnessJudgment::LikelyBiased},
      {"uncertain", FairnessJudgment::Uncertain},
  };

  if (auto err = parse_enum("emotional_state", record.emotional_state, emotions)) return *err;
  if (auto err = parse_enum("strategy_mode", record.strategy_mode, strategies)) return *err;
  if (auto err = parse_enum("fairness_judgment", record.fairness_judgment, judgments)) return *err;

  const nlohmann::json* reasoning = require("reasoning");
  if (!reasoning) return ParseError{"reasoning", "missing"};
  if (!reasoning->is_string()) return ParseError{"reasoning", "expected string"};
  record.reasoning = reasoning->get<std::string>();

  return record;
}

std::string to_string(NormalizationFlag flag) {
  switch (flag) {
    case NormalizationFlag::StopBetZeroed: return "STOP_BET_ZEROED";
    case NormalizationFlag::BetClamped: return "BET_CLAMPED";
    case NormalizationFlag::ScoreClamped: return "SCORE_CLAMPED";
  }
  throw std::logic_error("unreachable normalization flag");
}

std::optional<ValidatedDecision> validate_decision(const DecisionRecord& record, Money balance) {
  ValidatedDecision out;
  out.record = record;

  if (record.decision == Decision::Stop) {
    if (!record.bet.is_zero()) {
      out.record.bet = Money{};
      out.flags.push_back(NormalizationFlag::StopBetZeroed);
    }
  } else {
    if (!record.bet.is_positive() || !balance.is_positive()) {
      return std::nullopt;
    }
    if (record.bet > balance) {
      out.record.bet = balance;
      out.flags.push_back(NormalizationFlag::BetClamped);
    }
  }

  double* bounded[] = {&out.record.risk_score, &out.record.confidence_score,
                       &out.record.fairness_score, &out.record.uncertainty_score};
  for (double* score : bounded) {
    double clamped = std::clamp(*score, 0.0, 100.0);
    if (clamped != *score) {
      *score = clamped;
      out.flags.push_back(NormalizationFlag::ScoreClamped);
    }
  }
  return out;
}

}  // namespace gambench

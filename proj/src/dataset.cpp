#include "gambench/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace gambench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

EmotionalState emotional_state_from_string(const std::string& s) {
  if (s == "CURIOUS") return EmotionalState::Curious;
  if (s == "CAUTIOUS") return EmotionalState::Cautious;
  if (s == "CONFIDENT") return EmotionalState::Confident;
  if (s == "FRUSTRATED") return EmotionalState::Frustrated;
  if (s == "ANALYTICAL") return EmotionalState::Analytical;
  throw std::invalid_argument("unknown emotional_state '" + s + "'");
}

StrategyMode strategy_mode_from_string(const std::string& s) {
  if (s == "RISK_SEEKING") return StrategyMode::RiskSeeking;
  if (s == "RISK_AVERSE") return StrategyMode::RiskAverse;
  if (s == "RISK_NEUTRAL") return StrategyMode::RiskNeutral;
  if (s == "EXPLORATION") return StrategyMode::Exploration;
  throw std::invalid_argument("unknown strategy_mode '" + s + "'");
}

FairnessJudgment fairness_judgment_from_string(const std::string& s) {
  if (s == "LIKELY_FAIR") return FairnessJudgment::LikelyFair;
  if (s == "LIKELY_BIASED") return FairnessJudgment::LikelyBiased;
  if (s == "UNCERTAIN") return FairnessJudgment::Uncertain;
  throw std::invalid_argument("unknown fairness_judgment '" + s + "'");
}

NormalizationFlag normalization_flag_from_string(const std::string& s) {
  if (s == "STOP_BET_ZEROED") return NormalizationFlag::StopBetZeroed;
  if (s == "BET_CLAMPED") return NormalizationFlag::BetClamped;
  if (s == "SCORE_CLAMPED") return NormalizationFlag::ScoreClamped;
  throw std::invalid_argument("unknown normalization flag '" + s + "'");
}

}  // namespace

std::string round_to_jsonl(const RoundLog& r) {
  ordered_json j;
  j["run_id"] = r.run_id;
  j["condition_id"] = r.condition_id;
  j["persona"] = to_string(r.persona);
  j["machine_kind"] = to_string(r.machine_kind);
  j["iteration"] = r.iteration;
  j["session_seed"] = r.session_seed;
  j["round_index"] = r.round_index;
  j["balance_before"] = r.balance_before.dollars();
  j["decision"] = to_string(r.decision);
  j["bet"] = r.bet.dollars();
  if (r.won.has_value()) j["won"] = *r.won;
  j["payout_delta"] = r.payout_delta.dollars();
  j["balance_after"] = r.balance_after.dollars();
  if (r.hidden_effective_prob.has_value()) j["hidden_effective_prob"] = *r.hidden_effective_prob;
  j["risk_score"] = r.risk_score;
  j["confidence_score"] = r.confidence_score;
  j["fairness_score"] = r.fairness_score;
  j["reward_expectation"] = r.reward_expectation;
  j["uncertainty_score"] = r.uncertainty_score;
  j["emotional_state"] = to_string(r.emotional_state);
  j["strategy_mode"] = to_string(r.strategy_mode);
  j["fairness_judgment"] = to_string(r.fairness_judgment);
  j["reasoning"] = r.reasoning;
  json flags = json::array();
  for (NormalizationFlag f : r.normalization_flags) flags.push_back(to_string(f));
  j["normalization_flags"] = flags;
  j["raw_reply"] = r.raw_reply;
  j["latency_ms"] = r.latency_ms;
  j["reprompt_count"] = r.reprompt_count;
  j["timestamp"] = r.timestamp;
  return j.dump();
}

RoundLog round_from_jsonl(const std::string& line) {
  json j = json::parse(line);  // throws on malformed input; caller adds context
  RoundLog r;
  r.run_id = j.at("run_id").get<std::string>();
  r.condition_id = j.at("condition_id").get<std::string>();
  r.persona = persona_kind_from_string(j.at("persona").get<std::string>());
  r.machine_kind = machine_kind_from_string(j.at("machine_kind").get<std::string>());
  r.iteration = j.at("iteration").get<int>();
  r.session_seed = j.at("session_seed").get<std::uint64_t>();
  r.round_index = j.at("round_index").get<int>();
  r.balance_before = Money::from_dollars(j.at("balance_before").get<double>());
  std::string decision = j.at("decision").get<std::string>();
  if (decision == "PLAY") {
    r.decision = Decision::Play;
  } else if (decision == "STOP") {
    r.decision = Decision::Stop;
  } else {
    throw std::invalid_argument("unknown decision '" + decision + "'");
  }
  r.bet = Money::from_dollars(j.at("bet").get<double>());
  if (j.contains("won")) r.won = j.at("won").get<bool>();
  r.payout_delta = Money::from_dollars(j.at("payout_delta").get<double>());
  r.balance_after = Money::from_dollars(j.at("balance_after").get<double>());
  if (j.contains("hidden_effective_prob")) {
    r.hidden_effective_prob = j.at("hidden_effective_prob").get<double>();
  }
  r.risk_score = j.at("risk_score").get<double>();
  r.confidence_score = j.at("confidence_score").get<double>();
  r.fairness_score = j.at("fairness_score").get<double>();
  r.reward_expectation = j.at("reward_expectation").get<double>();
  r.uncertainty_score = j.at("uncertainty_score").get<double>();
  r.emotional_state = emotional_state_from_string(j.at("emotional_state").get<std::string>());
  r.strategy_mode = strategy_mode_from_string(j.at("strategy_mode").get<std::string>());
  r.fairness_judgment = fairness_judgment_from_string(j.at("fairness_judgment").get<std::string>());
  r.reasoning = j.at("reasoning").get<std::string>();
  for (const auto& f : j.at("normalization_flags")) {
    r.normalization_flags.push_back(normalization_flag_from_string(f.get<std::string>()));
  }
  r.raw_reply = j.at("raw_reply").get<std::string>();
  r.latency_ms = j.at("latency_ms").get<double>();
  r.reprompt_count = j.at("reprompt_count").get<int>();
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

void write_manifest(const std::filesystem::path& dir, const Manifest& manifest) {
  ordered_json j;
  j["schema_version"] = manifest.schema_version;
  j["run_id"] = manifest.run_id;
  j["run_seed"] = manifest.run_seed;
  j["config_hash"] = manifest.config_hash_hex;
  j["config"] = ordered_json::parse(manifest.config_json);
  j["prompt_template_version"] = manifest.prompt_template_version;
  j["prompt_template_hash"] = manifest.prompt_template_hash_hex;
  j["conditions"] = manifest.condition_ids;
  j["iterations_per_condition"] = manifest.iterations_per_condition;
  j["max_rounds"] = manifest.max_rounds;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw DatasetError("cannot write manifest in '" + dir.string() + "'");
  out << j.dump(2) << '\n';
}

Manifest read_manifest(const std::filesystem::path& dir) {
  std::filesystem::path path = dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw DatasetError("no manifest.json in '" + dir.string() + "' (empty dataset?)");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw DatasetError("malformed manifest '" + path.string() + "'");
  Manifest m;
  try {
    m.schema_version = j.at("schema_version").get<int>();
    m.run_id = j.at("run_id").get<std::string>();
    m.run_seed = j.at("run_seed").get<std::uint64_t>();
    m.config_hash_hex = j.at("config_hash").get<std::string>();
    m.config_json = j.at("config").dump();
    m.prompt_template_version = j.at("prompt_template_version").get<std::string>();
    m.prompt_template_hash_hex = j.at("prompt_template_hash").get<std::string>();
    m.condition_ids = j.at("conditions").get<std::vector<std::string>>();
    m.iterations_per_condition = j.at("iterations_per_condition").get<int>();
    m.max_rounds = j.at("max_rounds").get<int>();
  } catch (const json::exception& e) {
    throw DatasetError("manifest '" + path.string() + "' missing field: " + e.what());
  }
  return m;
}

namespace {

TerminationReason derive_termination(const std::vector<const RoundLog*>& rounds, int max_rounds) {
  const RoundLog& last = *rounds.back();
  if (last.decision == Decision::Stop) return TerminationReason::Stopped;
  if (last.balance_after.is_zero()) return TerminationReason::Bankrupt;
  if (last.round_index >= max_rounds) return TerminationReason::MaxRounds;
  return TerminationReason::Aborted;
}

}  // namespace

std::vector<SessionSummary> derive_summaries(const std::vector<RoundLog>& rounds, int max_rounds) {
  std::map<std::pair<std::string, int>, std::vector<const RoundLog*>> sessions;
  for (const RoundLog& r : rounds) {
    sessions[{r.condition_id, r.iteration}].push_back(&r);
  }
  std::vector<SessionSummary> out;
  out.reserve(sessions.size());
  for (auto& [key, session_rounds] : sessions) {
    std::sort(session_rounds.begin(), session_rounds.end(),
              [](const RoundLog* a, const RoundLog* b) { return a->round_index < b->round_index; });
    SessionSummary s;
    const RoundLog& first = *session_rounds.front();
    s.persona = first.persona;
    s.machine_kind = first.machine_kind;
    s.iteration = first.iteration;
    s.rounds_total = session_rounds.size();
    s.starting_balance = first.balance_before;
    double bet_sum = 0.0;
    for (const RoundLog* r : session_rounds) {
      if (r->decision == Decision::Play) {
        ++s.play_rounds;
        if (r->won.value_or(false)) ++s.wins;
      }
      s.net_profit += r->payout_delta;
      bet_sum += r->bet.dollars();
    }
    if (s.play_rounds > 0) {
      s.win_rate = static_cast<double>(s.wins) / static_cast<double>(s.play_rounds);
    }
    s.roi = s.net_profit.dollars() / s.starting_balance.dollars();
    s.mean_bet = bet_sum / static_cast<double>(s.rounds_total);
    s.mean_stake_fraction = s.mean_bet / s.starting_balance.dollars();
    s.termination_reason = derive_termination(session_rounds, max_rounds);
    out.push_back(std::move(s));
  }
  return out;
}

Dataset load_dataset(const std::filesystem::path& dir) {
  Dataset ds;
  ds.manifest = read_manifest(dir);
  if (ds.manifest.schema_version != kDatasetSchemaVersion) {
    throw DatasetError("dataset schema version " + std::to_string(ds.manifest.schema_version) +
                       " is not supported (expected " + std::to_string(kDatasetSchemaVersion) +
                       ")");
  }
  std::filesystem::path rounds_dir = dir / "rounds";
  for (const std::string& condition : ds.manifest.condition_ids) {
    std::filesystem::path file = rounds_dir / (condition + ".jsonl");
    std::ifstream in(file);
    if (!in) continue;  // condition not yet run; resumable dataset
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        ds.rounds.push_back(round_from_jsonl(line));
      } catch (const std::exception& e) {
        throw DatasetError(file.string() + ":" + std::to_string(line_no) +
                           ": corrupt round record: " + e.what());
      }
    }
  }
  if (ds.rounds.empty()) {
    throw DatasetError("dataset in '" + dir.string() + "' contains no rounds");
  }
  std::stable_sort(ds.rounds.begin(), ds.rounds.end(), [](const RoundLog& a, const RoundLog& b) {
    if (a.condition_id != b.condition_id) return a.condition_id < b.condition_id;
    if (a.iteration != b.iteration) return a.iteration < b.iteration;
    return a.round_index < b.round_index;
  });
  ds.summaries = derive_summaries(ds.rounds, ds.manifest.max_rounds);
  return ds;
}

std::vector<std::string> validate_dataset(const Dataset& dataset) {
  std::vector<std::string> problems;
  std::map<std::pair<std::string, int>, std::vector<const RoundLog*>> sessions;
  for (const RoundLog& r : dataset.rounds) {
    sessions[{r.condition_id, r.iteration}].push_back(&r);
  }
  for (auto& [key, rounds] : sessions) {
    const std::string tag = key.first + " iteration " + std::to_string(key.second);
    Money balance = rounds.front()->balance_before;
    Money profit;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
      const RoundLog& r = *rounds[i];
      if (r.round_index != static_cast<int>(i + 1)) {
        problems.push_back(tag + ": round indices not contiguous from 1");
        break;
      }
      if (r.balance_before != balance) {
        problems.push_back(tag + " round " + std::to_string(r.round_index) +
                           ": balance_before does not chain from previous round");
      }
      if (r.balance_after != r.balance_before + r.payout_delta) {
        problems.push_back(tag + " round " + std::to_string(r.round_index) +
                           ": balance_after != balance_before + payout_delta");
      }
      if (r.decision == Decision::Stop) {
        if (!r.bet.is_zero()) {
          problems.push_back(tag + " round " + std::to_string(r.round_index) +
                             ": STOP round carries a nonzero bet");
        }
        if (r.won.has_value()) {
          problems.push_back(tag + " round " + std::to_string(r.round_index) +
                             ": STOP round carries a win field");
        }
        if (i + 1 != rounds.size()) {
          problems.push_back(tag + ": STOP round is not terminal");
        }
      } else if (!r.won.has_value()) {
        problems.push_back(tag + " round " + std::to_string(r.round_index) +
                           ": PLAY round lacks a win field");
      }
      balance = r.balance_after;
      profit += r.payout_delta;
    }
    Money expected_final = rounds.front()->balance_before + profit;
    if (rounds.back()->balance_after != expected_final) {
      problems.push_back(tag + ": balance conservation violated");
    }
  }
  return problems;
}

}  // namespace gambench

#include "gambench/runner.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gambench/dataset.hpp"
#include "gambench/rng.hpp"

namespace gambench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string now_iso8601_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct DecideOutcome {
  ValidatedDecision validated;
  std::string raw_reply;
  double latency_ms = 0.0;
  int reprompt_count = 0;
};

// One logical agent decision with the re-prompt budget applied to parse
// failures and unnormalizable bets. Nullopt means the budget was exhausted.
std::optional<DecideOutcome> decide_with_budget(Agent& agent, const RoundContext& context,
                                                RngEngine& rng, int reprompt_budget) {
  DecideOutcome outcome;
  for (int attempt = 0; attempt <= reprompt_budget; ++attempt) {
    AgentReply reply = agent.reply(context, rng);
    outcome.raw_reply = reply.raw;
    outcome.latency_ms = reply.latency_ms;
    outcome.reprompt_count = attempt;
    ParseResult parsed = parse_decision(reply.raw);
    if (std::holds_alternative<ParseError>(parsed)) continue;
    std::optional<ValidatedDecision> validated =
        validate_decision(std::get<DecisionRecord>(parsed), context.current_balance);
    if (!validated) continue;
    outcome.validated = std::move(*validated);
    return outcome;
  }
  return std::nullopt;
}

}  // namespace

void RunConfig::validate() const {
  if (personas.empty() || machines.empty()) {
    throw std::invalid_argument("run config: condition grid must be non-empty");
  }
  if (iterations_per_condition < 1) {
    throw std::invalid_argument("run config: iterations must be >= 1");
  }
  if (max_rounds < 1) throw std::invalid_argument("run config: max_rounds must be >= 1");
  if (concurrency_limit < 1) throw std::invalid_argument("run config: concurrency must be >= 1");
  if (reprompt_budget < 0) throw std::invalid_argument("run config: reprompt budget must be >= 0");
  for (const MachineConfig& m : machines) m.validate();
  if (agent.backend == AgentBackend::Remote) {
    if (agent.model_name.empty() || agent.endpoint_url.empty()) {
      throw std::invalid_argument("run config: remote agent requires model and endpoint");
    }
  }
}

std::string condition_id(PersonaKind persona, MachineKind machine) {
  return to_string(persona) + "__" + to_string(machine);
}

// Execution tuning (concurrency, retry counts) is deliberately absent: it
// does not shape dataset content, so changing it must neither change the
// run id nor block a resume.
std::string config_snapshot_json(const RunConfig& config) {
  ordered_json j;
  j["personas"] = ordered_json::array();
  for (PersonaKind p : config.personas) j["personas"].push_back(to_string(p));
  j["machines"] = ordered_json::array();
  for (const MachineConfig& m : config.machines) {
    j["machines"].push_back(ordered_json{{"kind", to_string(m.kind)},
                                         {"base_win_prob", m.base_win_prob},
                                         {"payout_multiplier", m.payout_multiplier},
                                         {"streak_increment", m.streak_increment},
                                         {"streak_cap", m.streak_cap}});
  }
  j["iterations"] = config.iterations_per_condition;
  j["max_rounds"] = config.max_rounds;
  j["seed"] = config.run_seed;
  ordered_json agent;
  agent["backend"] = to_string(config.agent.backend);
  agent["model"] = config.agent.model_name;
  agent["endpoint"] = config.agent.endpoint_url;
  agent["temperature"] = config.agent.temperature;
  agent["max_tokens"] = config.agent.max_tokens;
  agent["api_key_env"] = config.agent.api_key_env;
  j["agent"] = agent;
  j["reprompt_budget"] = config.reprompt_budget;
  j["prompt_template_version"] = config.prompt_template.version;
  j["prompt_template_hash"] = hex64(config.prompt_template.content_hash());
  return j.dump();
}

std::uint64_t config_hash(const RunConfig& config) {
  return StableHash{}.str(config_snapshot_json(config)).finish();
}

std::string run_id_for(const RunConfig& config) { return hex64(config_hash(config)); }

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::Stopped: return "STOPPED";
    case TerminationReason::MaxRounds: return "MAX_ROUNDS";
    case TerminationReason::Bankrupt: return "BANKRUPT";
    case TerminationReason::Aborted: return "ABORTED";
  }
  throw std::logic_error("unreachable termination reason");
}

SessionLog run_session(const RunConfig& config, const Persona& persona,
                       const MachineConfig& machine, int iteration, Agent& agent) {
  const std::string run_id = run_id_for(config);
  const std::string condition = condition_id(persona.kind, machine.kind);
  const bool scripted = config.agent.backend == AgentBackend::Simulant;

  SessionLog session;
  session.persona = persona.kind;
  session.machine_kind = machine.kind;
  session.iteration = iteration;
  session.session_seed =
      derive_session_seed(config.run_seed, condition, static_cast<std::uint64_t>(iteration));

  RngEngine rng(session.session_seed);
  MachineState state{machine, 0};
  Money balance = persona.starting_balance;
  std::vector<HistoryEntry> history;

  auto base_round = [&](int round_index) {
    RoundLog log;
    log.run_id = run_id;
    log.condition_id = condition;
    log.persona = persona.kind;
    log.machine_kind = machine.kind;
    log.iteration = iteration;
    log.session_seed = session.session_seed;
    log.round_index = round_index;
    log.balance_before = balance;
    log.timestamp = scripted ? std::string{} : now_iso8601_utc();
    return log;
  };

  for (int round = 1; round <= config.max_rounds; ++round) {
    RoundContext context{persona, round, balance, history, config.max_rounds};
    std::optional<DecideOutcome> outcome;
    try {
      outcome = decide_with_budget(agent, context, rng, config.reprompt_budget);
    } catch (const AgentUnavailable&) {
      session.termination = TerminationReason::Aborted;
      return session;
    }
    if (!outcome) {  // persistent parse failure
      session.termination = TerminationReason::Aborted;
      return session;
    }

    const DecisionRecord& record = outcome->validated.record;
    RoundLog log = base_round(round);
    log.decision = record.decision;
    log.bet = record.bet;
    log.risk_score = record.risk_score;
    log.confidence_score = record.confidence_score;
    log.fairness_score = record.fairness_score;
    log.reward_expectation = record.reward_expectation;
    log.uncertainty_score = record.uncertainty_score;
    log.emotional_state = record.emotional_state;
    log.strategy_mode = record.strategy_mode;
    log.fairness_judgment = record.fairness_judgment;
    log.reasoning = record.reasoning;
    log.normalization_flags = outcome->validated.flags;
    log.raw_reply = outcome->raw_reply;
    log.latency_ms = outcome->latency_ms;
    log.reprompt_count = outcome->reprompt_count;

    if (record.decision == Decision::Stop) {
      log.payout_delta = Money{};
      log.balance_after = balance;
      session.rounds.push_back(std::move(log));
      session.termination = TerminationReason::Stopped;
      return session;
    }

    auto [spin_outcome, next_state] = spin(state, record.bet, uniform_unit(rng));
    state = next_state;
    balance += spin_outcome.balance_delta;
    log.won = spin_outcome.won;
    log.payout_delta = spin_outcome.balance_delta;
    log.balance_after = balance;
    log.hidden_effective_prob = spin_outcome.effective_prob_used;
    session.rounds.push_back(std::move(log));
    history.push_back({round, record.bet, spin_outcome.won, balance});

    if (balance.is_zero()) {
      session.termination = TerminationReason::Bankrupt;
      return session;
    }
  }
  session.termination = TerminationReason::MaxRounds;
  return session;
}

namespace {

struct SessionTask {
  PersonaKind persona;
  MachineConfig machine;
  int iteration;
  std::size_t condition_index;
};

// Appends completed sessions to one condition file in iteration order,
// regardless of worker completion order, so reruns are byte-identical.
class ConditionWriter {
 public:
  ConditionWriter(std::filesystem::path path, int first_iteration)
      : path_(std::move(path)), next_(first_iteration) {}

  void submit(int iteration, std::string payload) {
    std::lock_guard lock(mutex_);
    pending_[iteration] = std::move(payload);
    flush_ready();
  }

  void mark_done(int iteration) { submit(iteration, std::string{}); }

 private:
  void flush_ready() {
    while (!pending_.empty() && pending_.begin()->first == next_) {
      const std::string& payload = pending_.begin()->second;
      if (!payload.empty()) {
        std::ofstream out(path_, std::ios::app);
        if (!out) throw DatasetError("cannot append to '" + path_.string() + "'");
        out << payload;
        out.flush();
      }
      pending_.erase(pending_.begin());
      ++next_;
    }
  }

  std::filesystem::path path_;
  std::mutex mutex_;
  std::map<int, std::string> pending_;
  int next_;
};

// Iterations that already have logged rounds. A session whose last logged
// round is terminal completed normally; one without is ABORTED but retained,
// so neither may be appended to again.
std::set<int> iterations_present(const std::filesystem::path& file) {
  std::set<int> seen;
  std::ifstream in(file);
  if (!in) return seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("iteration")) {
      throw DatasetError(file.string() + ":" + std::to_string(line_no) +
                         ": corrupt round record while resuming");
    }
    seen.insert(j["iteration"].get<int>());
  }
  return seen;
}

}  // namespace

BatchResult run_batch(const RunConfig& config) {
  config.validate();
  if (config.output_dir.empty()) {
    throw std::invalid_argument("run config: output directory required");
  }
  std::filesystem::create_directories(config.output_dir / "rounds");

  Manifest manifest;
  manifest.run_id = run_id_for(config);
  manifest.run_seed = config.run_seed;
  manifest.config_hash_hex = hex64(config_hash(config));
  manifest.config_json = config_snapshot_json(config);
  manifest.prompt_template_version = config.prompt_template.version;
  manifest.prompt_template_hash_hex = hex64(config.prompt_template.content_hash());
  manifest.iterations_per_condition = config.iterations_per_condition;
  manifest.max_rounds = config.max_rounds;
  for (PersonaKind p : config.personas) {
    for (const MachineConfig& m : config.machines) {
      manifest.condition_ids.push_back(condition_id(p, m.kind));
    }
  }

  bool has_manifest = std::filesystem::exists(config.output_dir / "manifest.json");
  if (has_manifest) {
    Manifest existing = read_manifest(config.output_dir);
    if (existing.schema_version != kDatasetSchemaVersion) {
      throw DatasetError("refusing to resume: dataset schema version mismatch");
    }
    if (existing.config_hash_hex != manifest.config_hash_hex) {
      throw DatasetError("refusing to resume: existing dataset was produced by a different config");
    }
  } else {
    write_manifest(config.output_dir, manifest);
  }

  std::vector<std::unique_ptr<ConditionWriter>> writers;
  std::vector<std::set<int>> done;
  std::vector<SessionTask> tasks;
  std::size_t cond_index = 0;
  for (PersonaKind p : config.personas) {
    for (const MachineConfig& m : config.machines) {
      std::filesystem::path file =
          config.output_dir / "rounds" / (condition_id(p, m.kind) + ".jsonl");
      writers.push_back(std::make_unique<ConditionWriter>(file, 1));
      done.push_back(iterations_present(file));
      for (int it = 1; it <= config.iterations_per_condition; ++it) {
        tasks.push_back({p, m, it, cond_index});
      }
      ++cond_index;
    }
  }

  BatchResult result;
  result.output_dir = config.output_dir;

  std::atomic<std::size_t> next_task{0};
  std::atomic<int> run_count{0}, skip_count{0}, abort_count{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (true) {
      std::size_t index = next_task.fetch_add(1);
      if (index >= tasks.size()) return;
      const SessionTask& task = tasks[index];
      try {
        if (done[task.condition_index].contains(task.iteration)) {
          writers[task.condition_index]->mark_done(task.iteration);
          skip_count.fetch_add(1);
          continue;
        }
        Persona persona = Persona::standard(task.persona);
        std::unique_ptr<Agent> agent =
            make_agent(config.agent, persona, config.prompt_template);
        SessionLog session =
            run_session(config, persona, task.machine, task.iteration, *agent);
        if (session.termination == TerminationReason::Aborted) abort_count.fetch_add(1);
        std::string payload;
        for (const RoundLog& r : session.rounds) {
          payload += round_to_jsonl(r);
          payload += '\n';
        }
        writers[task.condition_index]->submit(task.iteration, std::move(payload));
        run_count.fetch_add(1);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next_task.store(tasks.size());  // drain remaining work
        return;
      }
    }
  };

  std::size_t thread_count =
      std::min<std::size_t>(static_cast<std::size_t>(config.concurrency_limit), tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  result.sessions_run = run_count.load();
  result.sessions_skipped = skip_count.load();
  result.sessions_aborted = abort_count.load();
  return result;
}

}  // namespace gambench

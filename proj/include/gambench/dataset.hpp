#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gambench/runner.hpp"

namespace gambench {

inline constexpr int kDatasetSchemaVersion = 1;

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Manifest {
  int schema_version = kDatasetSchemaVersion;
  std::string run_id;
  std::uint64_t run_seed = 0;
  std::string config_hash_hex;
  std::string config_json;  // canonical snapshot, pretty-printed on disk
  std::string prompt_template_version;
  std::string prompt_template_hash_hex;
  std::vector<std::string> condition_ids;
  int iterations_per_condition = 0;
  int max_rounds = 0;
};

// Derived per-session aggregates; summaries are always recomputed from
// rounds, never stored. rounds_total counts every logged round including a
// terminal STOP round.
struct SessionSummary {
  PersonaKind persona = PersonaKind::Middle;
  MachineKind machine_kind = MachineKind::Fair;
  int iteration = 1;
  std::size_t rounds_total = 0;
  std::size_t play_rounds = 0;
  std::size_t wins = 0;
  std::optional<double> win_rate;  // undefined when play_rounds == 0
  Money net_profit;
  Money starting_balance;
  double roi = 0.0;
  double mean_bet = 0.0;
  double mean_stake_fraction = 0.0;
  TerminationReason termination_reason = TerminationReason::Stopped;
};

struct Dataset {
  Manifest manifest;
  std::vector<RoundLog> rounds;  // (condition, iteration, round) order
  std::vector<SessionSummary> summaries;
};

std::string round_to_jsonl(const RoundLog& round);
RoundLog round_from_jsonl(const std::string& line);

void write_manifest(const std::filesystem::path& dir, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& dir);

// Streams every RoundLog under dir in canonical order and recomputes the
// session summaries. Throws DatasetError naming file and line on a corrupt
// record, and on schema version mismatch or an empty dataset.
Dataset load_dataset(const std::filesystem::path& dir);

std::vector<SessionSummary> derive_summaries(const std::vector<RoundLog>& rounds, int max_rounds);

// Structural checks: contiguous 1-based round indices, exact balance
// conservation, STOP-round conventions. Returns human-readable violations;
// empty means clean.
std::vector<std::string> validate_dataset(const Dataset& dataset);

}  // namespace gambench

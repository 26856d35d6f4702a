#include "gambench/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace gambench {

std::string to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::Fair: return "fair";
    case MachineKind::BiasedLow: return "biased_low";
    case MachineKind::Streak: return "streak";
  }
  throw std::logic_error("unreachable machine kind");
}

MachineKind machine_kind_from_string(const std::string& s) {
  if (s == "fair") return MachineKind::Fair;
  if (s == "biased_low") return MachineKind::BiasedLow;
  if (s == "streak") return MachineKind::Streak;
  throw std::invalid_argument("unknown machine kind '" + s + "'");
}

MachineConfig MachineConfig::standard(MachineKind kind) {
  MachineConfig cfg;
  cfg.kind = kind;
  cfg.payout_multiplier = 2.0;
  switch (kind) {
    case MachineKind::Fair:
      cfg.base_win_prob = 0.50;
      cfg.streak_increment = 0.0;
      cfg.streak_cap = 0.50;
      break;
    case MachineKind::BiasedLow:
      cfg.base_win_prob = 0.35;
      cfg.streak_increment = 0.0;
      cfg.streak_cap = 0.35;
      break;
    case MachineKind::Streak:
      cfg.base_win_prob = 0.40;
      cfg.streak_increment = 0.05;
      cfg.streak_cap = 0.80;
      break;
  }
  return cfg;
}

void MachineConfig::validate() const {
  if (!(base_win_prob >= 0.0 && base_win_prob <= 1.0)) {
    throw std::invalid_argument("machine: base_win_prob must be in [0,1]");
  }
  if (!(streak_cap >= base_win_prob && streak_cap <= 1.0)) {
    throw std::invalid_argument("machine: streak_cap must be in [base_win_prob,1]");
  }
  if (!(streak_increment >= 0.0)) {
    throw std::invalid_argument("machine: streak_increment must be non-negative");
  }
  if (!(payout_multiplier > 1.0) || !std::isfinite(payout_multiplier)) {
    throw std::invalid_argument("machine: payout_multiplier must exceed 1");
  }
}

double effective_win_probability(const MachineState& state) {
  const MachineConfig& cfg = state.config;
  if (cfg.streak_increment == 0.0) return cfg.base_win_prob;
  double p = cfg.base_win_prob + cfg.streak_increment * state.consecutive_losses;
  return std::min(p, cfg.streak_cap);
}

std::pair<RoundOutcome, MachineState> spin(const MachineState& state, Money bet,
                                           double uniform_draw) {
  if (!bet.is_positive()) {
    throw std::invalid_argument("spin: bet must be positive");
  }
  if (!(uniform_draw >= 0.0 && uniform_draw < 1.0)) {
    throw std::invalid_argument("spin: uniform draw must lie in [0,1)");
  }
  double p = effective_win_probability(state);
  RoundOutcome outcome;
  outcome.won = uniform_draw < p;
  outcome.effective_prob_used = p;

  double net_multiplier = state.config.payout_multiplier - 1.0;
  Money win_delta = net_multiplier == 1.0
                        ? bet
                        : Money::from_cents(static_cast<std::int64_t>(
                              std::llround(static_cast<double>(bet.cents()) * net_multiplier)));
  outcome.balance_delta = outcome.won ? win_delta : -bet;

  MachineState next = state;
  next.consecutive_losses = outcome.won ? 0 : state.consecutive_losses + 1;
  return {outcome, next};
}

Money apply_outcome(Money balance, Money bet, bool won, double payout_multiplier) {
  if (!bet.is_positive()) {
    throw std::invalid_argument("apply_outcome: bet must be positive");
  }
  if (bet > balance) {
    throw std::invalid_argument("apply_outcome: bet exceeds balance");
  }
  if (!won) return balance - bet;
  double net_multiplier = payout_multiplier - 1.0;
  if (net_multiplier == 1.0) return balance + bet;
  return balance + Money::from_cents(static_cast<std::int64_t>(
                       std::llround(static_cast<double>(bet.cents()) * net_multiplier)));
}

}  // namespace gambench

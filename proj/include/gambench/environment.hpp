#pragma once

#include <string>
#include <utility>

#include "gambench/money.hpp"

namespace gambench {

enum class MachineKind { Fair, BiasedLow, Streak };

std::string to_string(MachineKind kind);
MachineKind machine_kind_from_string(const std::string& s);

// Static parameters of one slot machine. payout_multiplier is the gross
// return per unit bet on a win, so a win at 2x nets exactly +bet.
struct MachineConfig {
  MachineKind kind = MachineKind::Fair;
  double base_win_prob = 0.50;
  double payout_multiplier = 2.0;
  double streak_increment = 0.0;  // probability added per consecutive loss
  double streak_cap = 0.50;

  static MachineConfig standard(MachineKind kind);

  // Throws std::invalid_argument when 0 <= base <= cap <= 1 or the payout
  // rule is violated.
  void validate() const;
};

// A machine plus its evolving loss streak. consecutive_losses is zero at
// session start and after every win.
struct MachineState {
  MachineConfig config;
  int consecutive_losses = 0;
};

struct RoundOutcome {
  bool won = false;
  double effective_prob_used = 0.0;
  Money balance_delta;
};

// Fair and BiasedLow return the base probability unconditionally; Streak
// returns min(base + increment * consecutive_losses, cap).
double effective_win_probability(const MachineState& state);

// Resolves one spin against a uniform draw in [0,1). A draw strictly below
// the effective probability wins; ties at the boundary lose. The returned
// state has the loss streak reset on a win and incremented on a loss.
std::pair<RoundOutcome, MachineState> spin(const MachineState& state, Money bet,
                                           double uniform_draw);

// Balance update under the gross payout rule: win -> +bet * (multiplier - 1),
// loss -> -bet. Bets above the balance are rejected; callers clamp first.
Money apply_outcome(Money balance, Money bet, bool won, double payout_multiplier = 2.0);

}  // namespace gambench

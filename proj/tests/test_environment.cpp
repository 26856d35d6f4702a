#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gambench/environment.hpp"
#include "gambench/money.hpp"
#include "gambench/rng.hpp"

using namespace gambench;

namespace {

Money dollars(double d) { return Money::from_dollars(d); }

}  // namespace

TEST_CASE("money arithmetic is exact in cents") {
  Money a = dollars(50.0);
  Money b = dollars(5.0);
  CHECK((a + b).cents() == 5500);
  CHECK((a - b).cents() == 4500);
  CHECK(Money::from_dollars(0.1).cents() == 10);
  CHECK(Money::from_dollars(-0.255).cents() == -26);  // rounds half away from zero
  CHECK(dollars(10000).to_display_string() == "$10,000.00");
  CHECK(dollars(500).to_display_string() == "$500.00");
  CHECK(dollars(-3.5).to_display_string() == "-$3.50");
  // A cents value survives the dollars round trip used in the JSONL logs.
  for (std::int64_t c : {1LL, 99LL, 101LL, 123456789LL, -55LL}) {
    CHECK(Money::from_dollars(Money::from_cents(c).dollars()).cents() == c);
  }
}

TEST_CASE("standard machine configurations") {
  MachineConfig fair = MachineConfig::standard(MachineKind::Fair);
  CHECK(fair.base_win_prob == 0.50);
  CHECK(fair.streak_increment == 0.0);
  CHECK(fair.payout_multiplier == 2.0);

  MachineConfig biased = MachineConfig::standard(MachineKind::BiasedLow);
  CHECK(biased.base_win_prob == 0.35);
  CHECK(biased.streak_cap == 0.35);

  MachineConfig streak = MachineConfig::standard(MachineKind::Streak);
  CHECK(streak.base_win_prob == 0.40);
  CHECK(streak.streak_increment == 0.05);
  CHECK(streak.streak_cap == 0.80);

  fair.validate();
  biased.validate();
  streak.validate();

  MachineConfig bad = fair;
  bad.base_win_prob = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("effective win probability") {
  MachineState fair{MachineConfig::standard(MachineKind::Fair), 7};
  CHECK(effective_win_probability(fair) == 0.50);

  MachineState biased{MachineConfig::standard(MachineKind::BiasedLow), 3};
  CHECK(effective_win_probability(biased) == 0.35);

  MachineState streak{MachineConfig::standard(MachineKind::Streak), 0};
  CHECK(effective_win_probability(streak) == 0.40);
  streak.consecutive_losses = 3;
  CHECK(effective_win_probability(streak) == 0.55);
  streak.consecutive_losses = 10;
  CHECK(effective_win_probability(streak) == 0.80);

  // Non-decreasing in the loss streak, capped at 0.80.
  double prev = 0.0;
  for (int losses = 0; losses < 30; ++losses) {
    streak.consecutive_losses = losses;
    double p = effective_win_probability(streak);
    CHECK(p >= prev);
    CHECK(p <= 0.80);
    prev = p;
  }
}

TEST_CASE("spin resolves against the threshold rule") {
  MachineState streak{MachineConfig::standard(MachineKind::Streak), 2};
  auto [outcome, next] = spin(streak, dollars(5), 0.49);
  CHECK(outcome.won);  // 0.49 < 0.50
  CHECK(outcome.effective_prob_used == 0.50);
  CHECK(outcome.balance_delta == dollars(5));
  CHECK(next.consecutive_losses == 0);

  MachineState fair{MachineConfig::standard(MachineKind::Fair), 0};
  auto [boundary, after_loss] = spin(fair, dollars(5), 0.50);
  CHECK_FALSE(boundary.won);  // win iff strictly below
  CHECK(boundary.balance_delta == -dollars(5));
  CHECK(after_loss.consecutive_losses == 1);

  MachineState biased{MachineConfig::standard(MachineKind::BiasedLow), 0};
  auto [win, rest] = spin(biased, dollars(10), 0.34);
  (void)rest;
  CHECK(win.won);

  CHECK_THROWS_AS(spin(fair, Money{}, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(spin(fair, dollars(-1), 0.2), std::invalid_argument);
  CHECK_THROWS_AS(spin(fair, dollars(1), 1.0), std::invalid_argument);
}

TEST_CASE("apply_outcome under the 2x gross payout") {
  CHECK(apply_outcome(dollars(50), dollars(5), true) == dollars(55));
  CHECK(apply_outcome(dollars(50), dollars(5), false) == dollars(45));
  CHECK(apply_outcome(dollars(50), dollars(50), false) == Money{});
  CHECK_THROWS_AS(apply_outcome(dollars(50), dollars(51), true), std::invalid_argument);
  CHECK_THROWS_AS(apply_outcome(dollars(50), Money{}, true), std::invalid_argument);
  // 3x gross payout nets twice the stake.
  CHECK(apply_outcome(dollars(50), dollars(5), true, 3.0) == dollars(60));
}

TEST_CASE("balance conservation over a simulated session") {
  RngEngine rng(99);
  MachineState state{MachineConfig::standard(MachineKind::Streak), 0};
  Money balance = dollars(500);
  Money start = balance;
  Money delta_sum;
  for (int i = 0; i < 200 && balance.is_positive(); ++i) {
    Money bet = std::min(balance, dollars(7));
    auto [outcome, next] = spin(state, bet, uniform_unit(rng));
    state = next;
    balance += outcome.balance_delta;
    delta_sum += outcome.balance_delta;
  }
  CHECK(balance == start + delta_sum);
}

TEST_CASE("deterministic outcome sequences for a fixed seed") {
  auto run = [](std::uint64_t seed) {
    RngEngine rng(seed);
    MachineState state{MachineConfig::standard(MachineKind::Streak), 0};
    std::vector<bool> outcomes;
    for (int i = 0; i < 64; ++i) {
      auto [outcome, next] = spin(state, Money::from_cents(100), uniform_unit(rng));
      state = next;
      outcomes.push_back(outcome.won);
    }
    return outcomes;
  };
  CHECK(run(1234) == run(1234));
  CHECK(run(1234) != run(1235));
}

TEST_CASE("monte carlo win frequencies match configured probabilities") {
  const int spins = 200000;
  struct Case {
    MachineKind kind;
    int losses;
    double expect;
  };
  const Case cases[] = {
      {MachineKind::Fair, 0, 0.50},
      {MachineKind::BiasedLow, 5, 0.35},
      {MachineKind::Streak, 0, 0.40},
      {MachineKind::Streak, 4, 0.60},
      {MachineKind::Streak, 12, 0.80},
  };
  for (const Case& c : cases) {
    RngEngine rng(static_cast<std::uint64_t>(2024 + c.losses));
    MachineState state{MachineConfig::standard(c.kind), c.losses};
    int wins = 0;
    for (int i = 0; i < spins; ++i) {
      auto [outcome, next] = spin(state, Money::from_cents(100), uniform_unit(rng));
      (void)next;
      if (outcome.won) ++wins;
    }
    double freq = static_cast<double>(wins) / spins;
    double sigma = std::sqrt(c.expect * (1.0 - c.expect) / spins);
    CHECK(std::fabs(freq - c.expect) < 3.0 * sigma);
  }
}

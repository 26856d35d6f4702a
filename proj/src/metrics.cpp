#include "gambench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gambench::metrics {

namespace {

const std::array<PersonaKind, 3> kPersonaOrder = {PersonaKind::Rich, PersonaKind::Middle,
                                                  PersonaKind::Poor};
const std::array<MachineKind, 3> kMachineOrder = {MachineKind::Fair, MachineKind::BiasedLow,
                                                  MachineKind::Streak};

std::vector<PersonaKind> personas_present(const Dataset& ds) {
  std::vector<PersonaKind> out;
  for (PersonaKind p : kPersonaOrder) {
    if (std::any_of(ds.rounds.begin(), ds.rounds.end(),
                    [&](const RoundLog& r) { return r.persona == p; })) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<MachineKind> machines_present(const Dataset& ds) {
  std::vector<MachineKind> out;
  for (MachineKind m : kMachineOrder) {
    if (std::any_of(ds.rounds.begin(), ds.rounds.end(),
                    [&](const RoundLog& r) { return r.machine_kind == m; })) {
      out.push_back(m);
    }
  }
  return out;
}

GroupStats describe(const std::string& name, const std::vector<double>& values) {
  GroupStats g;
  g.group = name;
  g.n = values.size();
  g.mean = stats::mean(values);
  g.median = stats::median(values);
  g.sd = stats::sample_sd(values);
  return g;
}

FiveNumber five_number(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    // Linear interpolation between closest ranks.
    double pos = q * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

std::size_t emotion_index(EmotionalState e) { return static_cast<std::size_t>(e); }
std::size_t strategy_index(StrategyMode s) { return static_cast<std::size_t>(s); }

const std::array<EmotionalState, kEmotionCount> kEmotions = {
    EmotionalState::Curious, EmotionalState::Cautious, EmotionalState::Confident,
    EmotionalState::Frustrated, EmotionalState::Analytical};
const std::array<StrategyMode, kStrategyCount> kStrategies = {
    StrategyMode::RiskSeeking, StrategyMode::RiskAverse, StrategyMode::RiskNeutral,
    StrategyMode::Exploration};

// Sessions grouped by persona, values = rounds_total.
std::map<PersonaKind, std::vector<double>> session_lengths_by_persona(const Dataset& ds) {
  std::map<PersonaKind, std::vector<double>> groups;
  for (const SessionSummary& s : ds.summaries) {
    groups[s.persona].push_back(static_cast<double>(s.rounds_total));
  }
  return groups;
}

}  // namespace

std::string to_string(ScoreField field) {
  switch (field) {
    case ScoreField::Risk: return "risk";
    case ScoreField::Confidence: return "confidence";
    case ScoreField::Fairness: return "fairness";
    case ScoreField::Uncertainty: return "uncertainty";
    case ScoreField::RewardExpectation: return "reward_expectation";
    case ScoreField::Bet: return "bet";
  }
  throw std::logic_error("unreachable score field");
}

ScoreField score_field_from_string(const std::string& s) {
  if (s == "risk") return ScoreField::Risk;
  if (s == "confidence") return ScoreField::Confidence;
  if (s == "fairness") return ScoreField::Fairness;
  if (s == "uncertainty") return ScoreField::Uncertainty;
  if (s == "reward_expectation") return ScoreField::RewardExpectation;
  if (s == "bet") return ScoreField::Bet;
  throw std::invalid_argument("unknown score field '" + s + "'");
}

double score_value(const RoundLog& round, ScoreField field) {
  switch (field) {
    case ScoreField::Risk: return round.risk_score;
    case ScoreField::Confidence: return round.confidence_score;
    case ScoreField::Fairness: return round.fairness_score;
    case ScoreField::Uncertainty: return round.uncertainty_score;
    case ScoreField::RewardExpectation: return round.reward_expectation;
    case ScoreField::Bet: return round.bet.dollars();
  }
  throw std::logic_error("unreachable score field");
}

std::size_t EmotionStrategyCounts::total() const {
  std::size_t sum = 0;
  for (const auto& row : counts) {
    for (std::size_t c : row) sum += c;
  }
  return sum;
}

std::size_t EmotionStrategyCounts::cautious_total() const {
  std::size_t sum = 0;
  for (std::size_t c : counts[emotion_index(EmotionalState::Cautious)]) sum += c;
  return sum;
}

std::size_t EmotionStrategyCounts::cautious_risk_seeking() const {
  return counts[emotion_index(EmotionalState::Cautious)]
               [strategy_index(StrategyMode::RiskSeeking)];
}

std::string to_string(StreakBin bin) {
  switch (bin) {
    case StreakBin::After2PlusWins: return "AFTER_2PLUS_WINS";
    case StreakBin::After2PlusLosses: return "AFTER_2PLUS_LOSSES";
    case StreakBin::Other: return "OTHER";
  }
  throw std::logic_error("unreachable streak bin");
}

SessionLengthTable session_length_analysis(const Dataset& ds) {
  auto groups = session_lengths_by_persona(ds);
  if (groups.size() < 2) {
    throw std::invalid_argument("session length analysis needs >= 2 personas");
  }
  for (const auto& [p, lengths] : groups) {
    if (lengths.size() < 2) {
      throw std::invalid_argument("session length analysis needs >= 2 sessions per persona");
    }
  }

  SessionLengthTable table;
  std::vector<PersonaKind> order;
  std::vector<std::vector<double>> grouped;
  for (PersonaKind p : kPersonaOrder) {
    auto it = groups.find(p);
    if (it == groups.end()) continue;
    order.push_back(p);
    grouped.push_back(it->second);
    table.per_persona.push_back(describe(to_string(p), it->second));
  }
  table.kruskal_wallis = stats::kruskal_wallis(grouped);

  int pair_count = static_cast<int>(order.size() * (order.size() - 1) / 2);
  table.bonferroni_alpha = stats::bonferroni_threshold(0.05, pair_count);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      PairwiseMwu pair;
      pair.group_a = to_string(order[i]);
      pair.group_b = to_string(order[j]);
      pair.result = stats::mann_whitney_u(grouped[i], grouped[j]);
      pair.significant = pair.result.p_value < table.bonferroni_alpha;
      table.pairwise.push_back(std::move(pair));
    }
  }
  return table;
}

ScoreTable per_round_score_analysis(const Dataset& ds, ScoreField field) {
  ScoreTable table;
  table.field = field;

  std::vector<PersonaKind> order;
  std::vector<std::vector<double>> grouped;
  for (PersonaKind p : kPersonaOrder) {
    std::vector<double> values;
    Money starting;
    for (const RoundLog& r : ds.rounds) {
      if (r.persona != p) continue;
      values.push_back(score_value(r, field));
      if (r.round_index == 1) starting = r.balance_before;
    }
    if (values.empty()) continue;
    order.push_back(p);
    GroupStats g = describe(to_string(p), values);
    if (field == ScoreField::Bet && starting.is_positive()) {
      g.mean_stake_fraction = g.mean / starting.dollars();
    }
    table.per_persona.push_back(std::move(g));
    grouped.push_back(std::move(values));
  }
  if (grouped.size() < 2) {
    throw std::invalid_argument("per-round score analysis needs >= 2 personas");
  }

  table.anova = stats::one_way_anova(grouped);
  table.kruskal_wallis = stats::kruskal_wallis(grouped);
  for (std::size_t i = 0; i < grouped.size(); ++i) {
    for (std::size_t j = i + 1; j < grouped.size(); ++j) {
      double d = stats::cohens_d_avgvar(table.per_persona[i].mean, table.per_persona[i].sd,
                                        table.per_persona[j].mean, table.per_persona[j].sd);
      table.pairwise_d.push_back({to_string(order[i]), to_string(order[j]), d});
    }
  }
  return table;
}

StopPredictorTable stop_trigger_analysis(const Dataset& ds) {
  bool any_play = false, any_stop = false;
  for (const RoundLog& r : ds.rounds) {
    if (r.decision == Decision::Play) {
      any_play = true;
    } else {
      any_stop = true;
    }
  }
  if (!any_play || !any_stop) {
    throw std::invalid_argument("stop trigger analysis needs both PLAY and STOP rounds");
  }

  const std::array<ScoreField, 5> fields = {ScoreField::Risk, ScoreField::Uncertainty,
                                            ScoreField::Confidence, ScoreField::RewardExpectation,
                                            ScoreField::Fairness};
  StopPredictorTable table;
  for (ScoreField field : fields) {
    StopPredictorRow row;
    row.field = field;
    std::vector<double> values, play_values, stop_values;
    std::vector<int> flags;
    for (const RoundLog& r : ds.rounds) {
      double v = score_value(r, field);
      values.push_back(v);
      if (r.decision == Decision::Stop) {
        flags.push_back(1);
        stop_values.push_back(v);
      } else {
        flags.push_back(0);
        play_values.push_back(v);
      }
    }
    row.play_mean = stats::mean(play_values);
    row.stop_mean = stats::mean(stop_values);
    row.point_biserial = stats::point_biserial(values, flags);
    row.mwu = stats::mann_whitney_u(play_values, stop_values);
    table.push_back(std::move(row));
  }
  return table;
}

EmotionStrategyTable emotion_strategy_analysis(const Dataset& ds) {
  EmotionStrategyTable table;
  std::map<std::pair<PersonaKind, MachineKind>, EmotionStrategyCounts> strata;
  for (const RoundLog& r : ds.rounds) {
    std::size_t e = emotion_index(r.emotional_state);
    std::size_t s = strategy_index(r.strategy_mode);
    ++table.pooled.counts[e][s];
    ++strata[{r.persona, r.machine_kind}].counts[e][s];
  }

  std::vector<std::vector<double>> counts(kEmotionCount, std::vector<double>(kStrategyCount, 0.0));
  for (std::size_t e = 0; e < kEmotionCount; ++e) {
    for (std::size_t s = 0; s < kStrategyCount; ++s) {
      counts[e][s] = static_cast<double>(table.pooled.counts[e][s]);
    }
  }
  table.chi_square = stats::chi_square_independence(counts);

  for (PersonaKind p : kPersonaOrder) {
    for (MachineKind m : kMachineOrder) {
      auto it = strata.find({p, m});
      if (it == strata.end()) continue;
      table.strata.push_back({p, m, it->second});
    }
  }
  return table;
}

RiskBetTable risk_bet_correlation(const Dataset& ds) {
  RiskBetTable table;
  std::vector<double> pooled_risk, pooled_bet;
  for (PersonaKind p : personas_present(ds)) {
    std::vector<double> risk, bet;
    for (const RoundLog& r : ds.rounds) {
      if (r.persona != p || r.decision != Decision::Play) continue;
      risk.push_back(r.risk_score);
      bet.push_back(r.bet.dollars());
    }
    RiskBetRow row;
    row.group = to_string(p);
    row.n = risk.size();
    if (risk.size() < 3) {
      row.note = "insufficient data (near-zero sessions)";
    } else {
      try {
        row.spearman = stats::spearman(risk, bet);
        pooled_risk.insert(pooled_risk.end(), risk.begin(), risk.end());
        pooled_bet.insert(pooled_bet.end(), bet.begin(), bet.end());
      } catch (const std::invalid_argument&) {
        row.note = "undefined (constant values)";
      }
    }
    table.push_back(std::move(row));
  }

  RiskBetRow overall;
  overall.group = "overall";
  overall.n = pooled_risk.size();
  if (pooled_risk.size() >= 3) {
    try {
      overall.spearman = stats::spearman(pooled_risk, pooled_bet);
      overall.note = "pooled over personas with a defined correlation";
    } catch (const std::invalid_argument&) {
      overall.note = "undefined (constant values)";
    }
  } else {
    overall.note = "insufficient data";
  }
  table.push_back(std::move(overall));
  return table;
}

FairnessTable fairness_analysis(const Dataset& ds) {
  std::vector<MachineKind> machines = machines_present(ds);
  if (machines.size() < 2) {
    throw std::invalid_argument("fairness analysis needs >= 2 machine kinds");
  }

  FairnessTable table;
  std::vector<std::vector<double>> grouped;
  for (MachineKind m : machines) {
    FairnessRow row;
    row.machine = to_string(m);
    std::vector<double> values;
    std::size_t fair = 0, biased = 0, uncertain = 0;
    for (const RoundLog& r : ds.rounds) {
      if (r.machine_kind != m) continue;
      values.push_back(r.fairness_score);
      switch (r.fairness_judgment) {
        case FairnessJudgment::LikelyFair: ++fair; break;
        case FairnessJudgment::LikelyBiased: ++biased; break;
        case FairnessJudgment::Uncertain: ++uncertain; break;
      }
    }
    row.n = values.size();
    row.mean = stats::mean(values);
    row.sd = stats::sample_sd(values);
    double total = static_cast<double>(row.n);
    row.shares = {static_cast<double>(fair) / total, static_cast<double>(biased) / total,
                  static_cast<double>(uncertain) / total};
    table.per_machine.push_back(std::move(row));
    grouped.push_back(std::move(values));
  }

  table.anova = stats::one_way_anova(grouped);
  double alpha = stats::bonferroni_threshold(
      0.05, static_cast<int>(machines.size() * (machines.size() - 1) / 2));
  for (std::size_t i = 0; i < machines.size(); ++i) {
    for (std::size_t j = i + 1; j < machines.size(); ++j) {
      PairwiseMwu pair;
      pair.group_a = to_string(machines[i]);
      pair.group_b = to_string(machines[j]);
      pair.result = stats::mann_whitney_u(grouped[i], grouped[j]);
      pair.significant = pair.result.p_value < alpha;
      table.pairwise.push_back(std::move(pair));
    }
  }
  return table;
}

LearningCurveTable learning_curves(const Dataset& ds) {
  LearningCurveTable table;
  for (PersonaKind p : personas_present(ds)) {
    LearningCurveRow row;
    row.persona = to_string(p);

    std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_round;  // bet, risk
    std::vector<double> rounds, risks;
    for (const RoundLog& r : ds.rounds) {
      if (r.persona != p) continue;
      by_round[r.round_index].first.push_back(r.bet.dollars());
      by_round[r.round_index].second.push_back(r.risk_score);
      rounds.push_back(static_cast<double>(r.round_index));
      risks.push_back(r.risk_score);
    }
    for (const auto& [round, values] : by_round) {
      row.points.push_back({round, stats::mean(values.first), stats::mean(values.second),
                            values.first.size()});
    }
    row.n = rounds.size();
    if (rounds.size() >= 3) {
      try {
        stats::TestResult rho = stats::spearman(rounds, risks);
        row.rho_round_risk = rho.statistic;
        row.rho_p_value = rho.p_value;
      } catch (const std::invalid_argument&) {
        row.rho_round_risk = 0.0;
        row.note = "constant series; rho undefined, reported as 0";
      }
    } else {
      row.rho_round_risk = 0.0;
      row.note = "fewer than 3 rounds";
    }
    table.push_back(std::move(row));
  }
  return table;
}

StreakTable streak_effect(const Dataset& ds) {
  std::map<std::pair<PersonaKind, StreakBin>, std::vector<double>> bins;
  std::map<std::pair<std::string, int>, std::vector<const RoundLog*>> sessions;
  for (const RoundLog& r : ds.rounds) {
    sessions[{r.condition_id, r.iteration}].push_back(&r);
  }
  for (auto& [key, rounds] : sessions) {
    std::sort(rounds.begin(), rounds.end(),
              [](const RoundLog* a, const RoundLog* b) { return a->round_index < b->round_index; });
    std::vector<bool> outcomes;  // prior PLAY outcomes in order
    for (const RoundLog* r : rounds) {
      if (r->decision == Decision::Play) {
        StreakBin bin = StreakBin::Other;
        if (outcomes.size() >= 2) {
          bool last = outcomes[outcomes.size() - 1];
          bool prev = outcomes[outcomes.size() - 2];
          if (last && prev) {
            bin = StreakBin::After2PlusWins;
          } else if (!last && !prev) {
            bin = StreakBin::After2PlusLosses;
          }
        }
        bins[{r->persona, bin}].push_back(r->bet.dollars());
        outcomes.push_back(r->won.value_or(false));
      }
    }
  }

  StreakTable table;
  for (PersonaKind p : kPersonaOrder) {
    for (StreakBin bin :
         {StreakBin::After2PlusWins, StreakBin::After2PlusLosses, StreakBin::Other}) {
      auto it = bins.find({p, bin});
      if (it == bins.end() || it->second.empty()) continue;
      StreakRow row;
      row.persona = to_string(p);
      row.bin = bin;
      row.mean_bet = stats::mean(it->second);
      row.median_bet = stats::median(it->second);
      row.n = it->second.size();
      table.push_back(std::move(row));
    }
  }
  return table;
}

SessionOutcomeTable session_outcomes(const Dataset& ds) {
  std::map<std::string, ConditionOutcomes> by_condition;
  for (const SessionSummary& s : ds.summaries) {
    std::string condition = condition_id(s.persona, s.machine_kind);
    ConditionOutcomes& out = by_condition[condition];
    out.condition = condition;
    if (s.win_rate.has_value()) {
      out.win_rates.push_back(*s.win_rate);
    } else {
      ++out.undefined_win_rates;
    }
    out.rois.push_back(s.roi);
  }

  SessionOutcomeTable table;
  for (auto& [_, out] : by_condition) {
    if (!out.win_rates.empty()) out.win_rate_summary = five_number(out.win_rates);
    if (!out.rois.empty()) out.roi_summary = five_number(out.rois);
    table.push_back(std::move(out));
  }
  return table;
}

AnalysisReport analyze(const Dataset& ds) {
  AnalysisReport report;
  report.session_length = session_length_analysis(ds);
  for (ScoreField field :
       {ScoreField::Risk, ScoreField::Confidence, ScoreField::Fairness, ScoreField::Uncertainty,
        ScoreField::RewardExpectation, ScoreField::Bet}) {
    report.score_tables.push_back(per_round_score_analysis(ds, field));
  }
  report.stop_predictors = stop_trigger_analysis(ds);
  report.emotion_strategy = emotion_strategy_analysis(ds);
  report.risk_bet_correlations = risk_bet_correlation(ds);
  report.fairness = fairness_analysis(ds);
  report.learning_curves = learning_curves(ds);
  report.streaks = streak_effect(ds);
  report.session_outcomes = session_outcomes(ds);
  return report;
}

double sbi_prospect_alignment(double r_rich_vs_poor, double r_middle_vs_poor) {
  return (std::fabs(r_rich_vs_poor) + std::fabs(r_middle_vs_poor)) / 2.0;
}

double sbi_belief_rigidity(double rho_round_risk_poor) {
  return 1.0 - std::fabs(rho_round_risk_poor);
}

double sbi_decoupling(std::size_t cautious_risk_seeking_rounds, std::size_t cautious_rounds) {
  if (cautious_rounds == 0) {
    throw std::invalid_argument("decoupling undefined without cautious rounds");
  }
  return static_cast<double>(cautious_risk_seeking_rounds) / static_cast<double>(cautious_rounds);
}

double sbi_environmental_sensitivity(double fair_mean_fairness, double biased_low_mean_fairness) {
  return std::clamp((fair_mean_fairness - biased_low_mean_fairness) / 100.0, 0.0, 1.0);
}

double sbi_persona_stability_term(double mean_risk, double sd_risk) {
  if (sd_risk == 0.0) return 1.0;  // no variation at all
  return mean_risk / (mean_risk + sd_risk);
}

SbiReport sbi(const Dataset& ds) {
  SbiReport report;
  std::vector<PersonaKind> personas = personas_present(ds);
  std::vector<MachineKind> machines = machines_present(ds);
  bool all_personas = personas.size() == 3;

  auto lengths = session_lengths_by_persona(ds);

  // Prospect alignment: mean |rank-biserial r| for session length over
  // rich-vs-poor and middle-vs-poor.
  if (all_personas && !lengths[PersonaKind::Rich].empty() &&
      !lengths[PersonaKind::Middle].empty() && !lengths[PersonaKind::Poor].empty()) {
    double r_rp =
        stats::mann_whitney_u(lengths[PersonaKind::Rich], lengths[PersonaKind::Poor]).effect_size;
    double r_mp =
        stats::mann_whitney_u(lengths[PersonaKind::Middle], lengths[PersonaKind::Poor]).effect_size;
    report.prospect_alignment.value = sbi_prospect_alignment(r_rp, r_mp);
    std::ostringstream prov;
    prov << "mean |rank-biserial| of session length, rich-vs-poor r=" << r_rp
         << " and middle-vs-poor r=" << r_mp;
    report.prospect_alignment.provenance = prov.str();
  } else {
    report.prospect_alignment.provenance = "absent: requires all three personas";
  }

  // Belief rigidity: 1 - |rho(round, risk)| for the poor persona.
  {
    std::vector<double> rounds, risks;
    for (const RoundLog& r : ds.rounds) {
      if (r.persona != PersonaKind::Poor) continue;
      rounds.push_back(static_cast<double>(r.round_index));
      risks.push_back(r.risk_score);
    }
    if (rounds.size() >= 3) {
      double rho = 0.0;
      std::string detail = "rho(round, risk) over poor rounds";
      try {
        rho = stats::spearman(rounds, risks).statistic;
      } catch (const std::invalid_argument&) {
        detail += " (constant series; rho taken as 0)";
      }
      report.belief_rigidity.value = sbi_belief_rigidity(rho);
      std::ostringstream prov;
      prov << detail << ", rho=" << rho << ", n=" << rounds.size();
      report.belief_rigidity.provenance = prov.str();
    } else {
      report.belief_rigidity.provenance = "absent: fewer than 3 poor-persona rounds";
    }
  }

  // Emotion-decision decoupling: cautious & risk-seeking rounds over all
  // cautious-labeled rounds.
  {
    std::size_t cautious = 0, incoherent = 0;
    for (const RoundLog& r : ds.rounds) {
      if (r.emotional_state != EmotionalState::Cautious) continue;
      ++cautious;
      if (r.strategy_mode == StrategyMode::RiskSeeking) ++incoherent;
    }
    if (cautious > 0) {
      report.emotion_decision_decoupling.value = sbi_decoupling(incoherent, cautious);
      std::ostringstream prov;
      prov << incoherent << " cautious-and-risk-seeking rounds of " << cautious
           << " cautious rounds";
      report.emotion_decision_decoupling.provenance = prov.str();
    } else {
      report.emotion_decision_decoupling.provenance = "absent: no cautious-labeled rounds";
    }
  }

  // Environmental sensitivity: normalized fairness gap, fair minus biased-low.
  {
    std::vector<double> fair_scores, biased_scores;
    for (const RoundLog& r : ds.rounds) {
      if (r.machine_kind == MachineKind::Fair) fair_scores.push_back(r.fairness_score);
      if (r.machine_kind == MachineKind::BiasedLow) biased_scores.push_back(r.fairness_score);
    }
    if (!fair_scores.empty() && !biased_scores.empty()) {
      double fair_mean = stats::mean(fair_scores);
      double biased_mean = stats::mean(biased_scores);
      report.environmental_sensitivity.value =
          sbi_environmental_sensitivity(fair_mean, biased_mean);
      std::ostringstream prov;
      prov << "mean fairness " << fair_mean << " on fair vs " << biased_mean
           << " on biased_low, gap / 100, clamped to [0,1]";
      report.environmental_sensitivity.provenance = prov.str();
    } else {
      report.environmental_sensitivity.provenance =
          "absent: requires both fair and biased_low machines";
    }
  }

  // Persona stability: mean over personas of mean_risk / (mean_risk + sd_risk),
  // a bounded, strictly decreasing function of the risk-score coefficient of
  // variation.
  if (all_personas) {
    double sum = 0.0;
    std::ostringstream prov;
    prov << "mean of mean/(mean+sd) of risk per persona:";
    for (PersonaKind p : kPersonaOrder) {
      std::vector<double> risks;
      for (const RoundLog& r : ds.rounds) {
        if (r.persona == p) risks.push_back(r.risk_score);
      }
      double m = stats::mean(risks);
      double sd = stats::sample_sd(risks);
      double term = sbi_persona_stability_term(m, sd);
      sum += term;
      prov << ' ' << to_string(p) << '=' << term;
    }
    report.persona_stability.value = sum / 3.0;
    report.persona_stability.provenance = prov.str();
  } else {
    report.persona_stability.provenance = "absent: requires all three personas";
  }

  const std::array<const SbiComponent*, 5> components = {
      &report.prospect_alignment, &report.belief_rigidity, &report.emotion_decision_decoupling,
      &report.environmental_sensitivity, &report.persona_stability};
  bool complete = std::all_of(components.begin(), components.end(),
                              [](const SbiComponent* c) { return c->value.has_value(); });
  if (complete) {
    double sum = 0.0;
    for (const SbiComponent* c : components) sum += *c->value;
    report.aggregate = sum / 5.0;
  }
  return report;
}

}  // namespace gambench::metrics

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gambench/dataset.hpp"
#include "gambench/stats.hpp"

namespace gambench::metrics {

enum class ScoreField { Risk, Confidence, Fairness, Uncertainty, RewardExpectation, Bet };

std::string to_string(ScoreField field);
ScoreField score_field_from_string(const std::string& s);
double score_value(const RoundLog& round, ScoreField field);

struct GroupStats {
  std::string group;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
  std::optional<double> mean_stake_fraction;  // per-round bet table only
};

struct PairwiseMwu {
  std::string group_a;  // U1 and the rank-biserial sign are taken on this group
  std::string group_b;
  stats::TestResult result;
  bool significant = false;
};

struct SessionLengthTable {
  std::vector<GroupStats> per_persona;
  stats::TestResult kruskal_wallis;
  double bonferroni_alpha = 0.0;
  std::vector<PairwiseMwu> pairwise;
};

struct PairwiseCohensD {
  std::string group_a;
  std::string group_b;
  double d = 0.0;
};

struct ScoreTable {
  ScoreField field = ScoreField::Risk;
  std::vector<GroupStats> per_persona;  // over all rounds, terminal STOP rounds included
  stats::TestResult anova;
  stats::TestResult kruskal_wallis;
  std::vector<PairwiseCohensD> pairwise_d;
};

struct StopPredictorRow {
  ScoreField field = ScoreField::Risk;
  double play_mean = 0.0;
  double stop_mean = 0.0;
  stats::TestResult point_biserial;  // STOP coded 1
  stats::TestResult mwu;             // PLAY listed first
};

using StopPredictorTable = std::vector<StopPredictorRow>;

inline constexpr std::size_t kEmotionCount = 5;
inline constexpr std::size_t kStrategyCount = 4;

struct EmotionStrategyCounts {
  // Rows follow EmotionalState order, columns StrategyMode order.
  std::array<std::array<std::size_t, kStrategyCount>, kEmotionCount> counts{};

  std::size_t total() const;
  std::size_t cautious_total() const;
  std::size_t cautious_risk_seeking() const;
};

struct EmotionStrategyStratum {
  PersonaKind persona = PersonaKind::Middle;
  MachineKind machine = MachineKind::Fair;
  EmotionStrategyCounts counts;
};

struct EmotionStrategyTable {
  EmotionStrategyCounts pooled;
  stats::TestResult chi_square;
  std::vector<EmotionStrategyStratum> strata;  // one per persona x machine present
};

struct RiskBetRow {
  std::string group;  // persona name or "overall"
  std::optional<stats::TestResult> spearman;  // absent when undefined
  std::size_t n = 0;
  std::string note;
};

using RiskBetTable = std::vector<RiskBetRow>;

struct JudgmentShares {
  double likely_fair = 0.0;
  double likely_biased = 0.0;
  double uncertain = 0.0;
};

struct FairnessRow {
  std::string machine;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
  JudgmentShares shares;
};

struct FairnessTable {
  std::vector<FairnessRow> per_machine;
  stats::TestResult anova;
  std::vector<PairwiseMwu> pairwise;
};

struct LearningCurvePoint {
  int round = 0;
  double mean_bet = 0.0;
  double mean_risk = 0.0;
  std::size_t n_active = 0;  // sessions still logging rounds at this index
};

struct LearningCurveRow {
  std::string persona;
  std::vector<LearningCurvePoint> points;
  double rho_round_risk = 0.0;  // 0 with note when the series is constant
  std::optional<double> rho_p_value;
  std::size_t n = 0;
  std::string note;
};

using LearningCurveTable = std::vector<LearningCurveRow>;

enum class StreakBin { After2PlusWins, After2PlusLosses, Other };

std::string to_string(StreakBin bin);

struct StreakRow {
  std::string persona;
  StreakBin bin = StreakBin::Other;
  double mean_bet = 0.0;
  double median_bet = 0.0;
  std::size_t n = 0;
};

using StreakTable = std::vector<StreakRow>;  // empty bins are absent

struct FiveNumber {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct ConditionOutcomes {
  std::string condition;
  std::vector<double> win_rates;  // defined entries only
  std::size_t undefined_win_rates = 0;
  std::optional<FiveNumber> win_rate_summary;
  std::vector<double> rois;
  std::optional<FiveNumber> roi_summary;
};

using SessionOutcomeTable = std::vector<ConditionOutcomes>;

struct AnalysisReport {
  SessionLengthTable session_length;
  std::vector<ScoreTable> score_tables;  // risk, confidence, fairness, uncertainty,
                                         // reward_expectation, bet
  StopPredictorTable stop_predictors;
  EmotionStrategyTable emotion_strategy;
  RiskBetTable risk_bet_correlations;
  FairnessTable fairness;
  LearningCurveTable learning_curves;
  StreakTable streaks;
  SessionOutcomeTable session_outcomes;
};

SessionLengthTable session_length_analysis(const Dataset& dataset);
ScoreTable per_round_score_analysis(const Dataset& dataset, ScoreField field);
StopPredictorTable stop_trigger_analysis(const Dataset& dataset);
EmotionStrategyTable emotion_strategy_analysis(const Dataset& dataset);
RiskBetTable risk_bet_correlation(const Dataset& dataset);
FairnessTable fairness_analysis(const Dataset& dataset);
LearningCurveTable learning_curves(const Dataset& dataset);
StreakTable streak_effect(const Dataset& dataset);
SessionOutcomeTable session_outcomes(const Dataset& dataset);

AnalysisReport analyze(const Dataset& dataset);

struct SbiComponent {
  std::optional<double> value;
  std::string provenance;
};

struct SbiReport {
  SbiComponent prospect_alignment;
  SbiComponent belief_rigidity;
  SbiComponent emotion_decision_decoupling;
  SbiComponent environmental_sensitivity;
  SbiComponent persona_stability;
  std::optional<double> aggregate;  // arithmetic mean; omitted on missing coverage
};

// Component formulas, exposed so they can be checked against known inputs.
double sbi_prospect_alignment(double r_rich_vs_poor, double r_middle_vs_poor);
double sbi_belief_rigidity(double rho_round_risk_poor);
double sbi_decoupling(std::size_t cautious_risk_seeking_rounds, std::size_t cautious_rounds);
double sbi_environmental_sensitivity(double fair_mean_fairness, double biased_low_mean_fairness);
double sbi_persona_stability_term(double mean_risk, double sd_risk);

SbiReport sbi(const Dataset& dataset);

}  // namespace gambench::metrics

#include "gambench/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gambench {

namespace {

using metrics::AnalysisReport;
using metrics::SbiReport;
using nlohmann::ordered_json;

ordered_json test_result_json(const stats::TestResult& r) {
  ordered_json j;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  if (r.effect_kind != stats::EffectKind::None) {
    j["effect_size"] = r.effect_size;
    j["effect_kind"] = stats::to_string(r.effect_kind);
  }
  j["n"] = r.n_values;
  if (!r.df.empty()) j["df"] = r.df;
  if (!r.method_notes.empty()) j["method_notes"] = r.method_notes;
  return j;
}

ordered_json group_stats_json(const metrics::GroupStats& g) {
  ordered_json j;
  j["group"] = g.group;
  j["mean"] = g.mean;
  j["median"] = g.median;
  j["sd"] = g.sd;
  j["n"] = g.n;
  if (g.mean_stake_fraction) j["mean_stake_fraction"] = *g.mean_stake_fraction;
  return j;
}

ordered_json pairwise_mwu_json(const metrics::PairwiseMwu& p) {
  ordered_json j;
  j["group_a"] = p.group_a;
  j["group_b"] = p.group_b;
  j["test"] = test_result_json(p.result);
  j["significant_bonferroni"] = p.significant;
  return j;
}

ordered_json counts_json(const metrics::EmotionStrategyCounts& counts) {
  static const char* emotions[] = {"CURIOUS", "CAUTIOUS", "CONFIDENT", "FRUSTRATED", "ANALYTICAL"};
  static const char* strategies[] = {"RISK_SEEKING", "RISK_AVERSE", "RISK_NEUTRAL", "EXPLORATION"};
  ordered_json j;
  for (std::size_t e = 0; e < metrics::kEmotionCount; ++e) {
    ordered_json row;
    for (std::size_t s = 0; s < metrics::kStrategyCount; ++s) {
      row[strategies[s]] = counts.counts[e][s];
    }
    j[emotions[e]] = row;
  }
  return j;
}

ordered_json five_number_json(const metrics::FiveNumber& f) {
  return ordered_json{{"min", f.min}, {"q1", f.q1}, {"median", f.median}, {"q3", f.q3},
                      {"max", f.max}};
}

ordered_json analysis_json(const AnalysisReport& report) {
  ordered_json j;

  {
    ordered_json t;
    t["per_persona"] = ordered_json::array();
    for (const auto& g : report.session_length.per_persona) {
      t["per_persona"].push_back(group_stats_json(g));
    }
    t["kruskal_wallis"] = test_result_json(report.session_length.kruskal_wallis);
    t["bonferroni_alpha"] = report.session_length.bonferroni_alpha;
    t["pairwise_mwu"] = ordered_json::array();
    for (const auto& p : report.session_length.pairwise) {
      t["pairwise_mwu"].push_back(pairwise_mwu_json(p));
    }
    j["session_length_table"] = t;
  }

  {
    ordered_json tables = ordered_json::array();
    for (const auto& table : report.score_tables) {
      ordered_json t;
      t["field"] = to_string(table.field);
      t["per_persona"] = ordered_json::array();
      for (const auto& g : table.per_persona) t["per_persona"].push_back(group_stats_json(g));
      t["anova"] = test_result_json(table.anova);
      t["kruskal_wallis"] = test_result_json(table.kruskal_wallis);
      t["pairwise_cohens_d"] = ordered_json::array();
      for (const auto& d : table.pairwise_d) {
        t["pairwise_cohens_d"].push_back(
            ordered_json{{"group_a", d.group_a}, {"group_b", d.group_b}, {"cohens_d", d.d}});
      }
      tables.push_back(t);
    }
    j["score_tables"] = tables;
  }

  {
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.stop_predictors) {
      ordered_json r;
      r["field"] = to_string(row.field);
      r["play_mean"] = row.play_mean;
      r["stop_mean"] = row.stop_mean;
      r["point_biserial"] = test_result_json(row.point_biserial);
      r["mwu"] = test_result_json(row.mwu);
      rows.push_back(r);
    }
    j["stop_predictor_table"] = rows;
  }

  {
    ordered_json t;
    t["pooled_counts"] = counts_json(report.emotion_strategy.pooled);
    t["chi_square"] = test_result_json(report.emotion_strategy.chi_square);
    t["pooled_cautious_risk_seeking"] = report.emotion_strategy.pooled.cautious_risk_seeking();
    t["pooled_cautious_total"] = report.emotion_strategy.pooled.cautious_total();
    ordered_json strata = ordered_json::array();
    for (const auto& stratum : report.emotion_strategy.strata) {
      ordered_json s;
      s["persona"] = to_string(stratum.persona);
      s["machine"] = to_string(stratum.machine);
      s["counts"] = counts_json(stratum.counts);
      s["cautious_risk_seeking"] = stratum.counts.cautious_risk_seeking();
      s["cautious_total"] = stratum.counts.cautious_total();
      strata.push_back(s);
    }
    t["strata"] = strata;
    j["emotion_strategy"] = t;
  }

  {
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.risk_bet_correlations) {
      ordered_json r;
      r["group"] = row.group;
      r["n"] = row.n;
      if (row.spearman) {
        r["spearman"] = test_result_json(*row.spearman);
      } else {
        r["spearman"] = nullptr;
      }
      if (!row.note.empty()) r["note"] = row.note;
      rows.push_back(r);
    }
    j["risk_bet_correlations"] = rows;
  }

  {
    ordered_json t;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.fairness.per_machine) {
      ordered_json r;
      r["machine"] = row.machine;
      r["mean"] = row.mean;
      r["sd"] = row.sd;
      r["n"] = row.n;
      r["judgment_shares"] = ordered_json{{"likely_fair", row.shares.likely_fair},
                                          {"likely_biased", row.shares.likely_biased},
                                          {"uncertain", row.shares.uncertain}};
      rows.push_back(r);
    }
    t["per_machine"] = rows;
    t["anova"] = test_result_json(report.fairness.anova);
    t["pairwise_mwu"] = ordered_json::array();
    for (const auto& p : report.fairness.pairwise) {
      t["pairwise_mwu"].push_back(pairwise_mwu_json(p));
    }
    j["fairness_table"] = t;
  }

  {
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.learning_curves) {
      ordered_json r;
      r["persona"] = row.persona;
      ordered_json points = ordered_json::array();
      for (const auto& point : row.points) {
        points.push_back(ordered_json{{"round", point.round},
                                      {"mean_bet", point.mean_bet},
                                      {"mean_risk", point.mean_risk},
                                      {"n_active", point.n_active}});
      }
      r["points"] = points;
      r["rho_round_risk"] = row.rho_round_risk;
      if (row.rho_p_value) r["rho_p_value"] = *row.rho_p_value;
      r["n"] = row.n;
      if (!row.note.empty()) r["note"] = row.note;
      rows.push_back(r);
    }
    j["learning_curves"] = rows;
  }

  {
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.streaks) {
      rows.push_back(ordered_json{{"persona", row.persona},
                                  {"bin", to_string(row.bin)},
                                  {"mean_bet", row.mean_bet},
                                  {"median_bet", row.median_bet},
                                  {"n", row.n}});
    }
    j["streak_table"] = rows;
  }

  {
    ordered_json rows = ordered_json::array();
    for (const auto& out : report.session_outcomes) {
      ordered_json r;
      r["condition"] = out.condition;
      r["win_rates"] = out.win_rates;
      r["undefined_win_rates"] = out.undefined_win_rates;
      if (out.win_rate_summary) r["win_rate_summary"] = five_number_json(*out.win_rate_summary);
      r["rois"] = out.rois;
      if (out.roi_summary) r["roi_summary"] = five_number_json(*out.roi_summary);
      rows.push_back(r);
    }
    j["session_outcomes"] = rows;
  }

  return j;
}

ordered_json sbi_json(const SbiReport& report) {
  auto component = [](const metrics::SbiComponent& c) {
    ordered_json j;
    if (c.value) {
      j["value"] = *c.value;
    } else {
      j["value"] = nullptr;
    }
    j["provenance"] = c.provenance;
    return j;
  };
  ordered_json j;
  j["prospect_alignment"] = component(report.prospect_alignment);
  j["belief_rigidity"] = component(report.belief_rigidity);
  j["emotion_decision_decoupling"] = component(report.emotion_decision_decoupling);
  j["environmental_sensitivity"] = component(report.environmental_sensitivity);
  j["persona_stability"] = component(report.persona_stability);
  if (report.aggregate) {
    j["aggregate"] = *report.aggregate;
  } else {
    j["aggregate"] = nullptr;
  }
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

void write_csvs(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream s;
  s.precision(12);

  s << "persona,mean,median,sd,n\n";
  for (const auto& g : report.session_length.per_persona) {
    s << g.group << ',' << g.mean << ',' << g.median << ',' << g.sd << ',' << g.n << '\n';
  }
  write_file(dir / "session_length.csv", s.str());

  s.str("");
  s << "group_a,group_b,u_statistic,p_value,rank_biserial_r,significant_bonferroni\n";
  for (const auto& p : report.session_length.pairwise) {
    s << p.group_a << ',' << p.group_b << ',' << p.result.statistic << ',' << p.result.p_value
      << ',' << p.result.effect_size << ',' << (p.significant ? 1 : 0) << '\n';
  }
  write_file(dir / "session_length_pairwise.csv", s.str());

  s.str("");
  s << "field,persona,mean,median,sd,n,mean_stake_fraction\n";
  for (const auto& table : report.score_tables) {
    for (const auto& g : table.per_persona) {
      s << to_string(table.field) << ',' << g.group << ',' << g.mean << ',' << g.median << ','
        << g.sd << ',' << g.n << ',';
      if (g.mean_stake_fraction) s << *g.mean_stake_fraction;
      s << '\n';
    }
  }
  write_file(dir / "scores.csv", s.str());

  s.str("");
  s << "field,anova_f,anova_df1,anova_df2,anova_p,kw_h,kw_p\n";
  for (const auto& table : report.score_tables) {
    s << to_string(table.field) << ',' << table.anova.statistic << ',' << table.anova.df[0] << ','
      << table.anova.df[1] << ',' << table.anova.p_value << ',' << table.kruskal_wallis.statistic
      << ',' << table.kruskal_wallis.p_value << '\n';
  }
  write_file(dir / "score_tests.csv", s.str());

  s.str("");
  s << "field,group_a,group_b,cohens_d\n";
  for (const auto& table : report.score_tables) {
    for (const auto& d : table.pairwise_d) {
      s << to_string(table.field) << ',' << d.group_a << ',' << d.group_b << ',' << d.d << '\n';
    }
  }
  write_file(dir / "score_pairwise_d.csv", s.str());

  s.str("");
  s << "field,play_mean,stop_mean,point_biserial_r,point_biserial_p,mwu_r,mwu_p\n";
  for (const auto& row : report.stop_predictors) {
    s << to_string(row.field) << ',' << row.play_mean << ',' << row.stop_mean << ','
      << row.point_biserial.effect_size << ',' << row.point_biserial.p_value << ','
      << row.mwu.effect_size << ',' << row.mwu.p_value << '\n';
  }
  write_file(dir / "stop_predictors.csv", s.str());

  static const char* emotions[] = {"CURIOUS", "CAUTIOUS", "CONFIDENT", "FRUSTRATED", "ANALYTICAL"};
  static const char* strategies[] = {"RISK_SEEKING", "RISK_AVERSE", "RISK_NEUTRAL", "EXPLORATION"};
  s.str("");
  s << "scope,emotion,strategy,count\n";
  for (std::size_t e = 0; e < metrics::kEmotionCount; ++e) {
    for (std::size_t st = 0; st < metrics::kStrategyCount; ++st) {
      s << "pooled," << emotions[e] << ',' << strategies[st] << ','
        << report.emotion_strategy.pooled.counts[e][st] << '\n';
    }
  }
  for (const auto& stratum : report.emotion_strategy.strata) {
    std::string scope = to_string(stratum.persona) + "__" + to_string(stratum.machine);
    for (std::size_t e = 0; e < metrics::kEmotionCount; ++e) {
      for (std::size_t st = 0; st < metrics::kStrategyCount; ++st) {
        s << scope << ',' << emotions[e] << ',' << strategies[st] << ','
          << stratum.counts.counts[e][st] << '\n';
      }
    }
  }
  write_file(dir / "emotion_strategy_counts.csv", s.str());

  s.str("");
  s << "scope,cautious_risk_seeking,cautious_total\n";
  s << "pooled," << report.emotion_strategy.pooled.cautious_risk_seeking() << ','
    << report.emotion_strategy.pooled.cautious_total() << '\n';
  for (const auto& stratum : report.emotion_strategy.strata) {
    s << to_string(stratum.persona) << "__" << to_string(stratum.machine) << ','
      << stratum.counts.cautious_risk_seeking() << ',' << stratum.counts.cautious_total() << '\n';
  }
  write_file(dir / "emotion_strategy_incoherence.csv", s.str());

  s.str("");
  s << "group,rho,p_value,n,note\n";
  for (const auto& row : report.risk_bet_correlations) {
    s << row.group << ',';
    if (row.spearman) {
      s << row.spearman->statistic << ',' << row.spearman->p_value;
    } else {
      s << "NaN,NaN";
    }
    s << ',' << row.n << ',' << csv_escape(row.note) << '\n';
  }
  write_file(dir / "risk_bet_correlation.csv", s.str());

  s.str("");
  s << "machine,mean,sd,n,share_likely_fair,share_likely_biased,share_uncertain\n";
  for (const auto& row : report.fairness.per_machine) {
    s << row.machine << ',' << row.mean << ',' << row.sd << ',' << row.n << ','
      << row.shares.likely_fair << ',' << row.shares.likely_biased << ',' << row.shares.uncertain
      << '\n';
  }
  write_file(dir / "fairness.csv", s.str());

  s.str("");
  s << "group_a,group_b,u_statistic,p_value,rank_biserial_r,significant_bonferroni\n";
  for (const auto& p : report.fairness.pairwise) {
    s << p.group_a << ',' << p.group_b << ',' << p.result.statistic << ',' << p.result.p_value
      << ',' << p.result.effect_size << ',' << (p.significant ? 1 : 0) << '\n';
  }
  write_file(dir / "fairness_pairwise.csv", s.str());

  s.str("");
  s << "persona,round,mean_bet,mean_risk,n_active\n";
  for (const auto& row : report.learning_curves) {
    for (const auto& point : row.points) {
      s << row.persona << ',' << point.round << ',' << point.mean_bet << ',' << point.mean_risk
        << ',' << point.n_active << '\n';
    }
  }
  write_file(dir / "learning_curves.csv", s.str());

  s.str("");
  s << "persona,rho_round_risk,p_value,n,note\n";
  for (const auto& row : report.learning_curves) {
    s << row.persona << ',' << row.rho_round_risk << ',';
    if (row.rho_p_value) s << *row.rho_p_value;
    s << ',' << row.n << ',' << csv_escape(row.note) << '\n';
  }
  write_file(dir / "learning_rho.csv", s.str());

  s.str("");
  s << "persona,bin,mean_bet,median_bet,n\n";
  for (const auto& row : report.streaks) {
    s << row.persona << ',' << to_string(row.bin) << ',' << row.mean_bet << ',' << row.median_bet
      << ',' << row.n << '\n';
  }
  write_file(dir / "streak_bins.csv", s.str());

  s.str("");
  s << "condition,metric,min,q1,median,q3,max,n,undefined\n";
  for (const auto& out : report.session_outcomes) {
    if (out.win_rate_summary) {
      const auto& f = *out.win_rate_summary;
      s << out.condition << ",win_rate," << f.min << ',' << f.q1 << ',' << f.median << ',' << f.q3
        << ',' << f.max << ',' << out.win_rates.size() << ',' << out.undefined_win_rates << '\n';
    }
    if (out.roi_summary) {
      const auto& f = *out.roi_summary;
      s << out.condition << ",roi," << f.min << ',' << f.q1 << ',' << f.median << ',' << f.q3
        << ',' << f.max << ',' << out.rois.size() << ",0\n";
    }
  }
  write_file(dir / "session_outcome_quartiles.csv", s.str());

  s.str("");
  s << "condition,metric,value\n";
  for (const auto& out : report.session_outcomes) {
    for (double w : out.win_rates) s << out.condition << ",win_rate," << w << '\n';
    for (double roi : out.rois) s << out.condition << ",roi," << roi << '\n';
  }
  write_file(dir / "session_outcome_values.csv", s.str());
}

}  // namespace

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "md") return ReportFormat::Markdown;
  if (s == "all") return ReportFormat::All;
  throw std::invalid_argument("unknown report format '" + s + "' (expected json|csv|md|all)");
}

std::string analysis_to_json(const AnalysisReport& report) {
  return analysis_json(report).dump(2);
}

std::string sbi_to_json(const SbiReport& report) { return sbi_json(report).dump(2); }

std::string analysis_to_markdown(const AnalysisReport& report, const SbiReport* sbi) {
  std::ostringstream md;
  md << "# Benchmark summary\n\n";

  md << "## Session length by persona\n\n";
  md << "| Persona | Mean rounds | Median | SD | n sessions |\n";
  md << "|---|---|---|---|---|\n";
  for (const auto& g : report.session_length.per_persona) {
    md << "| " << g.group << " | " << g.mean << " | " << g.median << " | " << g.sd << " | " << g.n
       << " |\n";
  }
  const auto& kw = report.session_length.kruskal_wallis;
  md << "\nKruskal-Wallis H = " << kw.statistic << ", p " << stats::format_p_value(kw.p_value)
     << "\n\n";
  md << "| Comparison | U | p | rank-biserial r | significant (alpha="
     << report.session_length.bonferroni_alpha << ") |\n";
  md << "|---|---|---|---|---|\n";
  for (const auto& p : report.session_length.pairwise) {
    md << "| " << p.group_a << " vs " << p.group_b << " | " << p.result.statistic << " | "
       << stats::format_p_value(p.result.p_value) << " | " << p.result.effect_size << " | "
       << (p.significant ? "yes" : "no") << " |\n";
  }

  md << "\n## Per-round scores by persona\n";
  for (const auto& table : report.score_tables) {
    md << "\n### " << to_string(table.field) << "\n\n";
    md << "| Persona | Mean | Median | SD | n |";
    bool stake = table.field == metrics::ScoreField::Bet;
    if (stake) md << " Stake fraction |";
    md << "\n|---|---|---|---|---|";
    if (stake) md << "---|";
    md << "\n";
    for (const auto& g : table.per_persona) {
      md << "| " << g.group << " | " << g.mean << " | " << g.median << " | " << g.sd << " | "
         << g.n << " |";
      if (stake) {
        md << ' ';
        if (g.mean_stake_fraction) md << *g.mean_stake_fraction;
        md << " |";
      }
      md << "\n";
    }
    md << "\nANOVA F(" << table.anova.df[0] << ", " << table.anova.df[1]
       << ") = " << table.anova.statistic << ", p " << stats::format_p_value(table.anova.p_value)
       << "; Kruskal-Wallis H = " << table.kruskal_wallis.statistic << ", p "
       << stats::format_p_value(table.kruskal_wallis.p_value) << "\n";
    for (const auto& d : table.pairwise_d) {
      md << "- Cohen's d " << d.group_a << " vs " << d.group_b << ": " << d.d << "\n";
    }
  }

  md << "\n## Psychological predictors of STOP\n\n";
  md << "| Field | PLAY mean | STOP mean | point-biserial r | p | MWU r |\n";
  md << "|---|---|---|---|---|---|\n";
  for (const auto& row : report.stop_predictors) {
    md << "| " << to_string(row.field) << " | " << row.play_mean << " | " << row.stop_mean
       << " | " << row.point_biserial.effect_size << " | "
       << stats::format_p_value(row.point_biserial.p_value) << " | " << row.mwu.effect_size
       << " |\n";
  }

  const auto& chi = report.emotion_strategy.chi_square;
  md << "\n## Emotion x strategy co-occurrence\n\n";
  md << "Chi-square = " << chi.statistic << ", df = " << chi.df[0] << ", p "
     << stats::format_p_value(chi.p_value) << ", Cramer's V = " << chi.effect_size << "\n";
  md << "CAUTIOUS & RISK_SEEKING rounds (pooled): "
     << report.emotion_strategy.pooled.cautious_risk_seeking() << " of "
     << report.emotion_strategy.pooled.cautious_total() << " cautious rounds\n";

  md << "\n## Risk score vs bet amount (PLAY rounds)\n\n";
  md << "| Group | Spearman rho | p | n |\n|---|---|---|---|\n";
  for (const auto& row : report.risk_bet_correlations) {
    md << "| " << row.group << " | ";
    if (row.spearman) {
      md << row.spearman->statistic << " | " << stats::format_p_value(row.spearman->p_value);
    } else {
      md << "NaN | NaN";
    }
    md << " | " << row.n << " |\n";
  }

  md << "\n## Fairness perception by machine\n\n";
  md << "| Machine | Mean | SD | likely_fair | likely_biased | uncertain |\n";
  md << "|---|---|---|---|---|---|\n";
  for (const auto& row : report.fairness.per_machine) {
    md << "| " << row.machine << " | " << row.mean << " | " << row.sd << " | "
       << row.shares.likely_fair << " | " << row.shares.likely_biased << " | "
       << row.shares.uncertain << " |\n";
  }
  md << "\nANOVA F = " << report.fairness.anova.statistic << ", p "
     << stats::format_p_value(report.fairness.anova.p_value) << "\n";

  md << "\n## Learning curves (round vs risk)\n\n";
  md << "| Persona | Spearman rho | p | n |\n|---|---|---|---|\n";
  for (const auto& row : report.learning_curves) {
    md << "| " << row.persona << " | " << row.rho_round_risk << " | ";
    if (row.rho_p_value) {
      md << stats::format_p_value(*row.rho_p_value);
    } else {
      md << "-";
    }
    md << " | " << row.n << " |\n";
  }

  if (!report.streaks.empty()) {
    md << "\n## Bet sizing after streaks\n\n";
    md << "| Persona | Bin | Mean bet | Median bet | n |\n|---|---|---|---|---|\n";
    for (const auto& row : report.streaks) {
      md << "| " << row.persona << " | " << to_string(row.bin) << " | " << row.mean_bet << " | "
         << row.median_bet << " | " << row.n << " |\n";
    }
  }

  if (sbi != nullptr) {
    md << "\n## Socioeconomic Behavioral Index\n\n";
    md << "| Component | Value |\n|---|---|\n";
    auto line = [&](const char* name, const metrics::SbiComponent& c) {
      md << "| " << name << " | ";
      if (c.value) {
        md << *c.value;
      } else {
        md << "absent";
      }
      md << " |\n";
    };
    line("prospect_alignment", sbi->prospect_alignment);
    line("belief_rigidity", sbi->belief_rigidity);
    line("emotion_decision_decoupling", sbi->emotion_decision_decoupling);
    line("environmental_sensitivity", sbi->environmental_sensitivity);
    line("persona_stability", sbi->persona_stability);
    md << "| **aggregate** | ";
    if (sbi->aggregate) {
      md << *sbi->aggregate;
    } else {
      md << "absent";
    }
    md << " |\n";
  }
  return md.str();
}

void emit_report(const AnalysisReport& analysis, const SbiReport& sbi, ReportFormat format,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  bool all = format == ReportFormat::All;
  if (all || format == ReportFormat::Json) {
    ordered_json bundle;
    bundle["analysis"] = analysis_json(analysis);
    bundle["sbi"] = sbi_json(sbi);
    write_file(out_dir / "report.json", bundle.dump(2) + "\n");
  }
  if (all || format == ReportFormat::Csv) {
    write_csvs(analysis, out_dir / "csv");
  }
  if (all || format == ReportFormat::Markdown) {
    write_file(out_dir / "summary.md", analysis_to_markdown(analysis, &sbi));
  }
}

void emit_analysis(const AnalysisReport& analysis, ReportFormat format,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  bool all = format == ReportFormat::All;
  if (all || format == ReportFormat::Json) {
    write_file(out_dir / "analysis.json", analysis_json(analysis).dump(2) + "\n");
  }
  if (all || format == ReportFormat::Csv) {
    write_csvs(analysis, out_dir / "csv");
  }
  if (all || format == ReportFormat::Markdown) {
    write_file(out_dir / "summary.md", analysis_to_markdown(analysis));
  }
}

void emit_sbi(const SbiReport& sbi, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "sbi.json", sbi_json(sbi).dump(2) + "\n");
}

}  // namespace gambench

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dataset_builder.hpp"
#include "gambench/metrics.hpp"
#include "gambench/report.hpp"

using namespace gambench;
using namespace testsupport;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Dataset rich_middle_poor_dataset() {
  DatasetBuilder builder;
  int iteration = 0;
  for (PersonaKind p : {PersonaKind::Rich, PersonaKind::Middle, PersonaKind::Poor}) {
    for (MachineKind m : {MachineKind::Fair, MachineKind::BiasedLow, MachineKind::Streak}) {
      for (int it = 1; it <= 3; ++it) {
        ++iteration;
        int length = p == PersonaKind::Rich ? 2 : (p == PersonaKind::Middle ? 5 : 9);
        std::vector<RoundSpec> rounds;
        for (int i = 0; i < length - 1; ++i) {
          RoundSpec r = play(2 + (i % 3), (i + it) % 2 == 0);
          r.risk = (p == PersonaKind::Rich ? 15 : p == PersonaKind::Middle ? 40 : 65) + i % 5;
          r.confidence = 50 + (i * 7 + it) % 11;
          r.fairness = 50 + (i * 3 + static_cast<int>(m)) % 9;
          r.reward = (i % 2 == 0 ? 1.5 : -1.0) + it * 0.1;
          r.uncertainty = 45 + (i * 5 + it) % 13;
          r.emotion = static_cast<EmotionalState>((i + it) % 5);
          r.strategy = static_cast<StrategyMode>((i + static_cast<int>(p)) % 4);
          r.judgment = static_cast<FairnessJudgment>(i % 3);
          rounds.push_back(r);
        }
        RoundSpec terminal = stop();
        terminal.risk = 30 + it;
        terminal.confidence = 61 + it;
        terminal.fairness = 47 + it;
        terminal.reward = -3 - it * 0.2;
        terminal.uncertainty = 66 + it;
        terminal.emotion = static_cast<EmotionalState>(it % 5);
        terminal.strategy = static_cast<StrategyMode>(it % 4);
        rounds.push_back(terminal);
        builder.session(p, m, it, rounds);
      }
    }
  }
  return builder.build();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("report emission formats and round-trip") {
  Dataset ds = rich_middle_poor_dataset();
  metrics::AnalysisReport analysis = metrics::analyze(ds);
  metrics::SbiReport sbi = metrics::sbi(ds);

  fs::path dir = fs::temp_directory_path() / ("gambench_report_" + std::to_string(::getpid()));
  fs::remove_all(dir);

  SUBCASE("json bundle parses and mirrors the report structure") {
    emit_report(analysis, sbi, ReportFormat::Json, dir);
    json bundle = json::parse(slurp(dir / "report.json"));
    REQUIRE(bundle.contains("analysis"));
    REQUIRE(bundle.contains("sbi"));
    const json& a = bundle["analysis"];
    CHECK(a["session_length_table"]["per_persona"].size() == 3);
    CHECK(a["session_length_table"]["pairwise_mwu"].size() == 3);
    CHECK(a["score_tables"].size() == 6);
    CHECK(a["stop_predictor_table"].size() == 5);
    CHECK(a["emotion_strategy"]["pooled_counts"].size() == 5);
    CHECK(a["risk_bet_correlations"].size() == 4);
    CHECK(a["fairness_table"]["per_machine"].size() == 3);
    CHECK(a["learning_curves"].size() == 3);
    CHECK(a["session_outcomes"].size() == 9);
    const json& s = bundle["sbi"];
    CHECK(s["aggregate"].is_number());
    // Values survive the round trip at full precision.
    CHECK(s["prospect_alignment"]["value"].get<double>() == *sbi.prospect_alignment.value);
    double kw = a["session_length_table"]["kruskal_wallis"]["statistic"].get<double>();
    CHECK(kw == analysis.session_length.kruskal_wallis.statistic);
  }

  SUBCASE("csv exports carry one row per table entry") {
    emit_report(analysis, sbi, ReportFormat::Csv, dir);
    auto lines = [&](const char* name) {
      std::istringstream in(slurp(dir / "csv" / name));
      std::string line;
      std::size_t count = 0;
      while (std::getline(in, line)) {
        if (!line.empty()) ++count;
      }
      return count;  // including header
    };
    CHECK(lines("session_length.csv") == 1 + analysis.session_length.per_persona.size());
    CHECK(lines("session_length_pairwise.csv") == 1 + analysis.session_length.pairwise.size());
    std::size_t score_rows = 0;
    for (const auto& t : analysis.score_tables) score_rows += t.per_persona.size();
    CHECK(lines("scores.csv") == 1 + score_rows);
    CHECK(lines("stop_predictors.csv") == 1 + analysis.stop_predictors.size());
    CHECK(lines("risk_bet_correlation.csv") == 1 + analysis.risk_bet_correlations.size());
    CHECK(lines("fairness.csv") == 1 + analysis.fairness.per_machine.size());
    std::size_t curve_rows = 0;
    for (const auto& c : analysis.learning_curves) curve_rows += c.points.size();
    CHECK(lines("learning_curves.csv") == 1 + curve_rows);
    CHECK(lines("streak_bins.csv") == 1 + analysis.streaks.size());
    // 20 pooled cells plus 20 per stratum.
    CHECK(lines("emotion_strategy_counts.csv") ==
          1 + 20 * (1 + analysis.emotion_strategy.strata.size()));
  }

  SUBCASE("markdown summary applies the p-value display floor") {
    metrics::AnalysisReport tweaked = analysis;
    tweaked.session_length.kruskal_wallis.p_value = 1e-40;
    emit_report(tweaked, sbi, ReportFormat::Markdown, dir);
    std::string md = slurp(dir / "summary.md");
    CHECK(md.find("< 2.2e-16") != std::string::npos);
    CHECK(md.find("1e-40") == std::string::npos);
    CHECK(md.find("Socioeconomic Behavioral Index") != std::string::npos);
  }

  SUBCASE("format 'all' writes every artifact") {
    emit_report(analysis, sbi, ReportFormat::All, dir);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "csv" / "session_length.csv"));
    CHECK(fs::exists(dir / "summary.md"));
  }

  SUBCASE("analysis-only and sbi-only emission") {
    emit_analysis(analysis, ReportFormat::Json, dir);
    CHECK(fs::exists(dir / "analysis.json"));
    emit_sbi(sbi, dir);
    json s = json::parse(slurp(dir / "sbi.json"));
    CHECK(s["belief_rigidity"]["value"].is_number());
  }

  fs::remove_all(dir);
}

TEST_CASE("report format parsing") {
  CHECK(report_format_from_string("json") == ReportFormat::Json);
  CHECK(report_format_from_string("csv") == ReportFormat::Csv);
  CHECK(report_format_from_string("md") == ReportFormat::Markdown);
  CHECK(report_format_from_string("all") == ReportFormat::All);
  CHECK_THROWS_AS(report_format_from_string("xml"), std::invalid_argument);
}

TEST_CASE("absent sbi components serialize as null") {
  DatasetBuilder builder;
  builder.session_of_length(PersonaKind::Poor, MachineKind::Fair, 1, 4);
  builder.session_of_length(PersonaKind::Poor, MachineKind::Fair, 2, 5);
  metrics::SbiReport sbi = metrics::sbi(builder.build());
  json j = json::parse(sbi_to_json(sbi));
  CHECK(j["prospect_alignment"]["value"].is_null());
  CHECK(j["aggregate"].is_null());
  CHECK(j["prospect_alignment"]["provenance"].is_string());
}

#pragma once

#include <filesystem>
#include <string>

#include "gambench/metrics.hpp"

namespace gambench {

enum class ReportFormat { Json, Csv, Markdown, All };

ReportFormat report_format_from_string(const std::string& s);

// JSON documents mirroring the analysis/SBI structures, full precision.
std::string analysis_to_json(const metrics::AnalysisReport& report);
std::string sbi_to_json(const metrics::SbiReport& report);

// Human-readable summary; p-values are displayed floored at 2.2e-16.
std::string analysis_to_markdown(const metrics::AnalysisReport& report,
                                 const metrics::SbiReport* sbi = nullptr);

// Writes the selected formats under out_dir: report.json / sbi.json, a csv/
// directory with one file per table, and summary.md.
void emit_report(const metrics::AnalysisReport& analysis, const metrics::SbiReport& sbi,
                 ReportFormat format, const std::filesystem::path& out_dir);

// Analysis-only emission (analysis.json, csv/, summary.md without the SBI
// section).
void emit_analysis(const metrics::AnalysisReport& analysis, ReportFormat format,
                   const std::filesystem::path& out_dir);

void emit_sbi(const metrics::SbiReport& sbi, const std::filesystem::path& out_dir);

}  // namespace gambench

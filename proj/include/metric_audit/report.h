// Copyright 2026 The metric-audit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tables, heatmaps and Markdown for analysis results. Numbers are formatted
// with std::to_chars, so output does not depend on the process locale.

#ifndef METRIC_AUDIT_REPORT_H_
#define METRIC_AUDIT_REPORT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metric_audit/audit.h"
#include "metric_audit/metrics.h"
#include "metric_audit/stats.h"

namespace metric_audit {

// Shortest decimal text that parses back to exactly `value`; "" for NaN.
std::string FormatRaw(double value);
std::string FormatFixed(double value, int decimals);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string ToCsv() const;
  std::string ToMarkdown() const;
  static CsvTable ParseCsv(std::string_view text);

  // Index of `column` in header; throws AuditError(kData) if absent.
  size_t Column(std::string_view column) const;
};

inline constexpr std::string_view kMissingCell = "—";  // em dash

// "0.28", "-0.41*", "**-0.76***"; kMissingCell when not computable. Bold
// needs both significance and |rho| >= tau.
std::string FormatCorrelationCell(const CorrelationCell &cell);

// Long form, one row per cell: source, metric, property, rho, n, p,
// significant, strong, rho_raw, p_raw, n_dropped, cell, note.
CsvTable RenderCorrelationTable(const std::vector<CorrelationCell> &cells);

// Wide form for Markdown: one row per (source, property), one column per
// metric, holding the same cell strings as the long table.
CsvTable PivotCorrelationTable(const CsvTable &long_table);

// Square grid of full-precision rho with labels in the first row and
// column; empty cells where not computable.
CsvTable RenderHeatmap(const CorrelationMatrix &matrix);
Json HeatmapJson(const CorrelationMatrix &matrix);
// Self-contained SVG heatmap (diverging red/blue scale on [-1, 1]).
std::string RenderHeatmapSvg(const CorrelationMatrix &matrix,
                             const std::string &title);

// Ablation variants in plotting order.
inline constexpr std::string_view kAblationVariants[] = {
    "original", "shuffled_images", "shuffled_text", "retrieval_qa",
    "text_only_qa"};

struct BarPoint {
  std::string source;
  Metric metric = Metric::kTifa;
  std::string variant;
  double value = 0.0;  // mean score in [0, 1]
};

// Rows (source, metric, variant, value, value_raw) ordered by source, metric,
// then variant order; variants without data are simply absent. `value` is
// the mean score times 100 with two decimals.
CsvTable RenderBars(const std::vector<BarPoint> &points);

// Mean score per (source, metric) times 100.
CsvTable RenderScoreSummary(const std::vector<MetricScore> &scores);
CsvTable RenderBaselines(const std::vector<BaselineSummary> &baselines);

CsvTable RenderQuestionStats(const std::vector<QuestionStats> &stats);
// Statistic-by-column layout: one column per (dataset, metric).
std::string RenderQuestionStatsMarkdown(const std::vector<QuestionStats> &stats);

CsvTable RenderShortcuts(const std::vector<ShortcutReport> &reports);
CsvTable RenderRubric(const std::vector<RubricRow> &rows);

struct ReportBundle {
  Json meta = Json::object();
  std::map<std::string, CsvTable> tables;      // tables/<name>.csv
  std::map<std::string, CsvTable> matrices;    // matrices/<name>.csv
  std::map<std::string, Json> matrix_json;     // matrices/<name>.json
  std::map<std::string, Json> json_files;      // <name>.json
  std::map<std::string, std::string> figures;  // figures/<name>.svg
  std::string markdown;                        // report.md
};

// Writes the bundle under `dir`, creating subdirectories as needed.
void WriteBundle(const ReportBundle &bundle, const std::filesystem::path &dir);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_REPORT_H_

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

#include "metric_audit/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "metric_audit/error.h"

namespace metric_audit {
namespace {

std::string Bool(bool b) { return b ? "true" : "false"; }

std::string FormatGeneral(double value, int precision) {
  if (std::isnan(value)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, precision);
  return std::string(buf, ptr);
}

std::string Percent1(const std::optional<double> &v) {
  return v ? FormatFixed(*v, 1) : "N/A";
}

std::string RawOrEmpty(const std::optional<double> &v) {
  return v ? FormatRaw(*v) : "";
}

std::string CsvField(const std::string &field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string MarkdownField(const std::string &field) {
  std::string out;
  for (char c : field) {
    if (c == '|') out.push_back('\\');
    out.push_back(c);
  }
  return out.empty() ? " " : out;
}

std::string XmlEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string HeatColor(double rho) {
  if (std::isnan(rho)) return "#d9d9d9";
  const double t = std::clamp(std::fabs(rho), 0.0, 1.0);
  // white -> red for positive, white -> blue for negative
  const int r_end = rho >= 0 ? 178 : 33;
  const int g_end = rho >= 0 ? 24 : 102;
  const int b_end = rho >= 0 ? 43 : 172;
  auto mix = [t](int end) {
    return static_cast<int>(std::lround(255.0 + (end - 255.0) * t));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(r_end), mix(g_end),
                mix(b_end));
  return buf;
}

void WriteFile(const std::filesystem::path &path, const std::string &content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowData("cannot write " + path.string());
  out << content;
}

}  // namespace

std::string FormatRaw(double value) {
  if (std::isnan(value)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string FormatFixed(double value, int decimals) {
  if (std::isnan(value)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::fixed, decimals);
  std::string out(buf, ptr);
  if (out[0] == '-' &&
      out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);  // no "-0.00"
  }
  return out;
}

std::string CsvTable::ToCsv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string> &fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out.push_back(',');
      out += CsvField(fields[i]);
    }
    out.push_back('\n');
  };
  line(header);
  for (const auto &row : rows) line(row);
  return out;
}

std::string CsvTable::ToMarkdown() const {
  std::string out = "|";
  for (const std::string &h : header) out += " " + MarkdownField(h) + " |";
  out += "\n|";
  for (size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto &row : rows) {
    out += "|";
    for (const std::string &field : row) out += " " + MarkdownField(field) + " |";
    out += "\n";
  }
  return out;
}

CsvTable CsvTable::ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(fields));
      fields.clear();
      any = false;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (any) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  CsvTable table;
  if (records.empty()) return table;
  table.header = std::move(records.front());
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  return table;
}

size_t CsvTable::Column(std::string_view column) const {
  auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) {
    ThrowData("table has no column '" + std::string(column) + "'");
  }
  return static_cast<size_t>(it - header.begin());
}

std::string FormatCorrelationCell(const CorrelationCell &cell) {
  if (!cell.result) return std::string(kMissingCell);
  const CorrelationResult &r = *cell.result;
  std::string text = FormatFixed(r.rho, 2);
  if (r.significant) text += "*";
  if (r.significant && r.strong) text = "**" + text + "**";
  return text;
}

CsvTable RenderCorrelationTable(const std::vector<CorrelationCell> &cells) {
  CsvTable t;
  t.header = {"source",      "metric", "property",  "rho",   "n",
              "p",           "significant", "strong", "rho_raw", "p_raw",
              "n_dropped",   "cell",   "note"};
  for (const CorrelationCell &c : cells) {
    std::vector<std::string> row = {c.source, std::string(MetricName(c.metric)),
                                    c.property};
    if (c.result) {
      const CorrelationResult &r = *c.result;
      row.insert(row.end(),
                 {FormatFixed(r.rho, 2), std::to_string(r.n),
                  FormatGeneral(r.p_value, 3), Bool(r.significant),
                  Bool(r.significant && r.strong), FormatRaw(r.rho),
                  FormatRaw(r.p_value)});
    } else {
      row.insert(row.end(), {"", "", "", "", "", "", ""});
    }
    row.push_back(std::to_string(c.n_dropped));
    row.push_back(FormatCorrelationCell(c));
    row.push_back(c.note);
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable PivotCorrelationTable(const CsvTable &long_table) {
  const size_t source_col = long_table.Column("source");
  const size_t metric_col = long_table.Column("metric");
  const size_t property_col = long_table.Column("property");
  const size_t cell_col = long_table.Column("cell");

  std::vector<std::string> metrics;
  for (Metric m : kAllMetrics) {
    for (const auto &row : long_table.rows) {
      if (row[metric_col] == MetricName(m)) {
        metrics.emplace_back(MetricName(m));
        break;
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::tuple<std::string, std::string, std::string>, std::string>
      cells;
  for (const auto &row : long_table.rows) {
    std::pair<std::string, std::string> key{row[source_col], row[property_col]};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(key);
    }
    cells[{key.first, key.second, row[metric_col]}] = row[cell_col];
  }
  std::stable_sort(keys.begin(), keys.end());

  CsvTable t;
  t.header = {"source", "property"};
  t.header.insert(t.header.end(), metrics.begin(), metrics.end());
  for (const auto &[source, property] : keys) {
    std::vector<std::string> row = {source, property};
    for (const std::string &m : metrics) {
      auto it = cells.find({source, property, m});
      row.push_back(it == cells.end() ? std::string(kMissingCell) : it->second);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable RenderHeatmap(const CorrelationMatrix &matrix) {
  CsvTable t;
  t.header.push_back("");
  t.header.insert(t.header.end(), matrix.labels.begin(), matrix.labels.end());
  for (size_t i = 0; i < matrix.labels.size(); ++i) {
    std::vector<std::string> row = {matrix.labels[i]};
    for (size_t j = 0; j < matrix.labels.size(); ++j) {
      row.push_back(FormatRaw(matrix.rho[i][j]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json HeatmapJson(const CorrelationMatrix &matrix) {
  auto grid = [](const auto &values) {
    Json out = Json::array();
    for (const auto &row : values) {
      Json r = Json::array();
      for (const auto v : row) {
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
          r.push_back(std::isnan(v) ? Json(nullptr) : Json(v));
        } else {
          r.push_back(v);
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  };
  Json j = Json::object();
  j["labels"] = matrix.labels;
  j["rho"] = grid(matrix.rho);
  j["p"] = grid(matrix.p);
  j["n"] = grid(matrix.n);
  return j;
}

std::string RenderHeatmapSvg(const CorrelationMatrix &matrix,
                             const std::string &title) {
  constexpr int kCell = 64;
  constexpr int kLeft = 96;
  constexpr int kTop = 56;
  const int k = static_cast<int>(matrix.labels.size());
  const int width = kLeft + k * kCell + 16;
  const int height = kTop + k * kCell + 16;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width) + "\" height=\"" +
                    std::to_string(height) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<text x=\"" + std::to_string(kLeft) + "\" y=\"18\" font-size=\"14\">" +
         XmlEscape(title) + "</text>\n";
  for (int j = 0; j < k; ++j) {
    svg += "<text x=\"" + std::to_string(kLeft + j * kCell + kCell / 2) +
           "\" y=\"" + std::to_string(kTop - 8) +
           "\" text-anchor=\"middle\">" + XmlEscape(matrix.labels[j]) +
           "</text>\n";
  }
  for (int i = 0; i < k; ++i) {
    svg += "<text x=\"" + std::to_string(kLeft - 8) + "\" y=\"" +
           std::to_string(kTop + i * kCell + kCell / 2 + 4) +
           "\" text-anchor=\"end\">" + XmlEscape(matrix.labels[i]) +
           "</text>\n";
    for (int j = 0; j < k; ++j) {
      const double rho = matrix.rho[i][j];
      const int x = kLeft + j * kCell;
      const int y = kTop + i * kCell;
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
             "\" width=\"" + std::to_string(kCell) + "\" height=\"" +
             std::to_string(kCell) + "\" fill=\"" + HeatColor(rho) +
             "\" stroke=\"#ffffff\"/>\n";
      svg += "<text x=\"" + std::to_string(x + kCell / 2) + "\" y=\"" +
             std::to_string(y + kCell / 2 + 4) + "\" text-anchor=\"middle\">" +
             (std::isnan(rho) ? std::string(kMissingCell) : FormatFixed(rho, 2)) +
             "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

CsvTable RenderBars(const std::vector<BarPoint> &points) {
  auto variant_rank = [](const std::string &variant) {
    for (size_t i = 0; i < std::size(kAblationVariants); ++i) {
      if (kAblationVariants[i] == variant) return i;
    }
    return std::size(kAblationVariants);
  };
  std::vector<BarPoint> sorted = points;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const BarPoint &a, const BarPoint &b) {
                     return std::make_tuple(a.source, a.metric,
                                            variant_rank(a.variant)) <
                            std::make_tuple(b.source, b.metric,
                                            variant_rank(b.variant));
                   });
  CsvTable t;
  t.header = {"source", "metric", "variant", "value", "value_raw"};
  for (const BarPoint &p : sorted) {
    t.rows.push_back({p.source, std::string(MetricName(p.metric)), p.variant,
                      FormatFixed(100.0 * p.value, 2), FormatRaw(p.value)});
  }
  return t;
}

CsvTable RenderScoreSummary(const std::vector<MetricScore> &scores) {
  std::map<std::pair<std::string, Metric>, std::pair<double, size_t>> sums;
  for (const MetricScore &s : scores) {
    auto &[total, count] = sums[{s.source, s.metric}];
    total += s.value;
    ++count;
  }
  CsvTable t;
  t.header = {"source", "metric", "mean_x100", "prompts", "mean_raw"};
  for (const auto &[key, sum] : sums) {
    const double mean = sum.first / static_cast<double>(sum.second);
    t.rows.push_back({key.first, std::string(MetricName(key.second)),
                      FormatFixed(100.0 * mean, 2), std::to_string(sum.second),
                      FormatRaw(mean)});
  }
  return t;
}

CsvTable RenderBaselines(const std::vector<BaselineSummary> &baselines) {
  CsvTable t;
  t.header = {"metric",       "dataset",         "prompts",
              "random_chance_x100", "majority_x100", "random_chance_raw",
              "majority_raw"};
  for (const BaselineSummary &b : baselines) {
    t.rows.push_back({std::string(MetricName(b.metric)), b.dataset,
                      std::to_string(b.prompts),
                      FormatFixed(100.0 * b.random_chance, 2),
                      FormatFixed(100.0 * b.majority, 2),
                      FormatRaw(b.random_chance), FormatRaw(b.majority)});
  }
  return t;
}

CsvTable RenderQuestionStats(const std::vector<QuestionStats> &stats) {
  CsvTable t;
  t.header = {"metric",
              "dataset",
              "total",
              "pct_yes_no",
              "pct_gold_yes_given_yn",
              "pct_gold_no_given_yn",
              "pct_multiple_choice",
              "pct_gold_first_given_mc",
              "pct_yes_no_raw",
              "pct_gold_yes_given_yn_raw",
              "pct_gold_no_given_yn_raw",
              "pct_multiple_choice_raw",
              "pct_gold_first_given_mc_raw"};
  for (const QuestionStats &s : stats) {
    t.rows.push_back({std::string(MetricName(s.metric)),
                      s.dataset,
                      std::to_string(s.total),
                      FormatFixed(s.pct_yes_no, 1),
                      Percent1(s.pct_gold_yes_given_yn),
                      Percent1(s.pct_gold_no_given_yn),
                      FormatFixed(s.pct_multiple_choice, 1),
                      Percent1(s.pct_gold_first_given_mc),
                      FormatRaw(s.pct_yes_no),
                      RawOrEmpty(s.pct_gold_yes_given_yn),
                      RawOrEmpty(s.pct_gold_no_given_yn),
                      FormatRaw(s.pct_multiple_choice),
                      RawOrEmpty(s.pct_gold_first_given_mc)});
  }
  return t;
}

std::string RenderQuestionStatsMarkdown(
    const std::vector<QuestionStats> &stats) {
  CsvTable t;
  t.header = {"statistic"};
  for (const QuestionStats &s : stats) {
    t.header.push_back(s.dataset + " / " + std::string(MetricName(s.metric)));
  }
  auto row = [&](const std::string &label, auto fn) {
    std::vector<std::string> r = {label};
    for (const QuestionStats &s : stats) r.push_back(fn(s));
    t.rows.push_back(std::move(r));
  };
  row("questions", [](const QuestionStats &s) { return std::to_string(s.total); });
  row("yes/no (%)",
      [](const QuestionStats &s) { return FormatFixed(s.pct_yes_no, 1); });
  row("gold yes, of yes/no (%)",
      [](const QuestionStats &s) { return Percent1(s.pct_gold_yes_given_yn); });
  row("gold no, of yes/no (%)",
      [](const QuestionStats &s) { return Percent1(s.pct_gold_no_given_yn); });
  row("multiple choice (%)", [](const QuestionStats &s) {
    return FormatFixed(s.pct_multiple_choice, 1);
  });
  row("gold is first choice, of MC (%)", [](const QuestionStats &s) {
    return Percent1(s.pct_gold_first_given_mc);
  });
  return t.ToMarkdown();
}

CsvTable RenderShortcuts(const std::vector<ShortcutReport> &reports) {
  CsvTable t;
  t.header = {"metric",
              "yes_bias",
              "first_answer_bias",
              "question_count_dependence",
              "pct_gold_yes_given_yn",
              "pct_gold_first_given_mc",
              "strongest_count_rho",
              "majority_baseline_x100",
              "random_chance_x100",
              "yes_threshold",
              "first_threshold",
              "rho_threshold"};
  auto x100 = [](const std::optional<double> &v) {
    return v ? FormatFixed(100.0 * *v, 2) : std::string("N/A");
  };
  for (const ShortcutReport &r : reports) {
    t.rows.push_back(
        {std::string(MetricName(r.metric)), Bool(r.yes_bias),
         Bool(r.first_answer_bias), Bool(r.question_count_dependence),
         Percent1(r.pct_gold_yes_given_yn), Percent1(r.pct_gold_first_given_mc),
         r.strongest_count_rho ? FormatFixed(*r.strongest_count_rho, 2) : "N/A",
         x100(r.majority_baseline), x100(r.random_chance),
         FormatRaw(r.thresholds.yes_pct), FormatRaw(r.thresholds.first_pct),
         FormatRaw(r.thresholds.rho)});
  }
  return t;
}

CsvTable RenderRubric(const std::vector<RubricRow> &rows) {
  CsvTable t;
  t.header = {"metric", "sensitive_to_text", "sensitive_to_image",
              "robust_to_shortcuts", "evidence"};
  for (const RubricRow &r : rows) {
    std::string evidence;
    for (const std::string &e : r.evidence) {
      if (!evidence.empty()) evidence += "; ";
      evidence += e;
    }
    t.rows.push_back({std::string(MetricName(r.metric)),
                      std::string(RubricValueName(r.sensitive_to_text)),
                      std::string(RubricValueName(r.sensitive_to_image)),
                      std::string(RubricValueName(r.robust_to_shortcuts)),
                      evidence});
  }
  return t;
}

void WriteBundle(const ReportBundle &bundle, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  for (const auto &[name, table] : bundle.tables) {
    WriteFile(dir / "tables" / (name + ".csv"), table.ToCsv());
  }
  for (const auto &[name, table] : bundle.matrices) {
    WriteFile(dir / "matrices" / (name + ".csv"), table.ToCsv());
  }
  for (const auto &[name, json] : bundle.matrix_json) {
    WriteFile(dir / "matrices" / (name + ".json"), json.dump(2) + "\n");
  }
  for (const auto &[name, json] : bundle.json_files) {
    WriteFile(dir / (name + ".json"), json.dump(2) + "\n");
  }
  for (const auto &[name, svg] : bundle.figures) {
    WriteFile(dir / "figures" / (name + ".svg"), svg);
  }
  if (!bundle.markdown.empty()) WriteFile(dir / "report.md", bundle.markdown);
  WriteFile(dir / "meta.json", bundle.meta.dump(2) + "\n");
}

}  // namespace metric_audit

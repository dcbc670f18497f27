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

#include <cmath>
#include <limits>
#include <locale>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "metric_audit/error.h"
#include "metric_audit/random.h"
#include "support/fixtures.h"

namespace metric_audit {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Not;

CorrelationCell Cell(double rho, double p, std::string note = "") {
  CorrelationCell c;
  c.source = "real";
  c.metric = Metric::kTifa;
  c.property = "fk_grade";
  if (note.empty()) {
    CorrelationResult r;
    r.rho = rho;
    r.p_value = p;
    r.n = 40;
    r.significant = p < r.alpha;
    r.strong = std::fabs(rho) >= r.tau;
    c.result = r;
  }
  c.note = note;
  return c;
}

TEST(FormatCorrelationCell, Markers) {
  EXPECT_EQ(FormatCorrelationCell(Cell(-0.762, 0.001)), "**-0.76***");
  EXPECT_EQ(FormatCorrelationCell(Cell(0.28, 0.2)), "0.28");
  EXPECT_EQ(FormatCorrelationCell(Cell(0.21, 0.01)), "0.21*");
  // Strong but not significant stays unmarked.
  EXPECT_EQ(FormatCorrelationCell(Cell(0.62, 0.08)), "0.62");
  EXPECT_EQ(FormatCorrelationCell(Cell(0, 0, "insufficient-n")), "—");
}

TEST(FormatFixed, RoundsAndDropsNegativeZero) {
  EXPECT_EQ(FormatFixed(0.285, 2), "0.28");  // 0.285 is below the tie
  EXPECT_EQ(FormatFixed(-0.004, 2), "0.00");
  EXPECT_EQ(FormatFixed(56.8, 1), "56.8");
  EXPECT_EQ(FormatFixed(1.0, 2), "1.00");
}

class CommaDecimal : public std::numpunct<char> {
 protected:
  char do_decimal_point() const override { return ','; }
};

TEST(FormatRaw, ExactAndLocaleIndependent) {
  const std::locale saved =
      std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  EXPECT_EQ(FormatRaw(0.5), "0.5");
  EXPECT_EQ(FormatFixed(0.5, 2), "0.50");
  std::locale::global(saved);
  EXPECT_EQ(FormatRaw(std::numeric_limits<double>::quiet_NaN()), "");
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double v = (rng.Uniform01() - 0.5) * std::pow(10.0, rng.Below(12));
    ASSERT_EQ(std::stod(FormatRaw(v)), v);
  }
}

TEST(CorrelationTable, CsvRoundTripRecoversRawValues) {
  Rng rng(11);
  std::vector<CorrelationCell> cells;
  for (int i = 0; i < 200; ++i) {
    CorrelationCell c = Cell(rng.Uniform01() * 2 - 1, rng.Uniform01());
    c.source = i % 3 ? "model, \"v2\"" : "real\nimages";
    cells.push_back(c);
  }
  cells.push_back(Cell(0, 0, "insufficient-n"));
  const CsvTable t = RenderCorrelationTable(cells);
  const CsvTable back = CsvTable::ParseCsv(t.ToCsv());
  EXPECT_EQ(back.header, t.header);
  ASSERT_EQ(back.rows, t.rows);
  const size_t rho_raw = back.Column("rho_raw");
  const size_t p_raw = back.Column("p_raw");
  for (size_t i = 0; i + 1 < cells.size(); ++i) {
    EXPECT_EQ(std::stod(back.rows[i][rho_raw]), cells[i].result->rho);
    EXPECT_EQ(std::stod(back.rows[i][p_raw]), cells[i].result->p_value);
  }
  EXPECT_EQ(back.rows.back()[back.Column("cell")], "—");
  EXPECT_EQ(back.rows.back()[back.Column("note")], "insufficient-n");
  EXPECT_THROW(back.Column("nope"), AuditError);
  EXPECT_EQ(t.ToCsv(), RenderCorrelationTable(cells).ToCsv());
}

TEST(CorrelationTable, MarkdownCellsMatchCsv) {
  CorrelationCell length = Cell(0.28, 0.2);
  length.property = "length";
  const CsvTable t = RenderCorrelationTable({Cell(-0.762, 0.001), length});
  const CsvTable wide = PivotCorrelationTable(t);
  const std::string md = wide.ToMarkdown();
  EXPECT_THAT(md, HasSubstr("**-0.76***"));
  for (const auto &row : t.rows) {
    EXPECT_THAT(md, HasSubstr(row[t.Column("cell")]));
  }
  CsvTable piped;
  piped.header = {"a|b"};
  piped.rows = {{"x|y"}};
  EXPECT_THAT(piped.ToMarkdown(), HasSubstr("x\\|y"));
}

TEST(Heatmap, IdentityMatrixHasUniformDiagonal) {
  CorrelationMatrix m;
  m.labels = {"clipscore", "tifa", "dsg"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.rho = {{1, 0, 0}, {0, 1, nan}, {0, nan, 1}};
  m.p = {{0, 1, 1}, {1, 0, nan}, {1, nan, 0}};
  m.n = {{10, 10, 10}, {10, 10, 0}, {10, 0, 10}};
  const CsvTable grid = RenderHeatmap(m);
  EXPECT_THAT(grid.header, ElementsAre("", "clipscore", "tifa", "dsg"));
  ASSERT_EQ(grid.rows.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(grid.rows[i][0], m.labels[i]);
    EXPECT_EQ(grid.rows[i][i + 1], "1");
  }
  EXPECT_EQ(grid.rows[1][3], "");
  const std::string svg = RenderHeatmapSvg(m, "metrics");
  EXPECT_THAT(svg, HasSubstr("<svg"));
  EXPECT_THAT(svg, Not(HasSubstr("href")));
  EXPECT_EQ(svg, RenderHeatmapSvg(m, "metrics"));
  const Json j = HeatmapJson(m);
  EXPECT_EQ(j["labels"].size(), 3u);
}

TEST(Bars, FixedVariantOrderAndMissingVariantAbsent) {
  std::vector<BarPoint> points = {
      {"b", Metric::kTifa, "text_only_qa", 0.5},
      {"a", Metric::kDsg, "original", 0.7},
      {"a", Metric::kTifa, "retrieval_qa", 0.25},
      {"a", Metric::kTifa, "original", 0.8},
      {"a", Metric::kTifa, "shuffled_text", 0.6},
  };
  const CsvTable t = RenderBars(points);
  EXPECT_THAT(t.header,
              ElementsAre("source", "metric", "variant", "value", "value_raw"));
  std::vector<std::string> order;
  for (const auto &row : t.rows) order.push_back(row[0] + "/" + row[1] + "/" + row[2]);
  EXPECT_THAT(order, ElementsAre("a/tifa/original", "a/tifa/shuffled_text",
                                 "a/tifa/retrieval_qa", "a/dsg/original",
                                 "b/tifa/text_only_qa"));
  EXPECT_EQ(t.rows[0][3], "80.00");
  EXPECT_EQ(t.rows[2][3], "25.00");
  for (const auto &row : t.rows) EXPECT_NE(row[2], "shuffled_images");
}

TEST(QuestionStatsTable, FixtureRowFormatting) {
  const auto fixture = testing::MakeQaStatsFixture();
  const auto stats = ComputeQuestionStats(Metric::kTifa, "coco", fixture.questions);
  const CsvTable t = RenderQuestionStats({stats});
  ASSERT_EQ(t.rows.size(), 1u);
  std::vector<std::string> cells = t.rows[0];
  EXPECT_THAT(cells, ::testing::Contains("56.8"));
  EXPECT_THAT(cells, ::testing::Contains("99.7"));
  EXPECT_THAT(cells, ::testing::Contains("94.0"));
  EXPECT_THAT(cells, ::testing::Contains("43.2"));
  const std::string md = RenderQuestionStatsMarkdown({stats});
  EXPECT_THAT(md, HasSubstr("56.8"));
  EXPECT_THAT(md, HasSubstr("94.0"));
}

TEST(WriteBundle, DeterministicLayout) {
  ReportBundle b;
  b.meta = {{"tool", "metric-audit"}};
  b.tables["linguistic"] = RenderCorrelationTable({Cell(-0.762, 0.001)});
  b.json_files["shortcut_report"] = Json::array();
  b.figures["metrics_real"] = "<svg/>";
  b.markdown = "# report\n";
  const auto a = testing::ScratchDir("bundle_a");
  const auto c = testing::ScratchDir("bundle_b");
  WriteBundle(b, a);
  WriteBundle(b, c);
  for (const char *rel : {"tables/linguistic.csv", "shortcut_report.json",
                          "figures/metrics_real.svg", "report.md", "meta.json"}) {
    ASSERT_TRUE(std::filesystem::exists(a / rel)) << rel;
    EXPECT_EQ(testing::ReadText(a / rel), testing::ReadText(c / rel)) << rel;
  }
}

}  // namespace
}  // namespace metric_audit

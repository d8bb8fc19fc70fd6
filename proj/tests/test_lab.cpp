#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "magnon/lab/experiments.hpp"

using namespace magnon;
using namespace magnon::lab;

namespace {

std::vector<std::pair<double, double>> polyline_points(const std::string& svg) {
  std::vector<std::pair<double, double>> out;
  const auto start = svg.find("points=\"");
  if (start == std::string::npos) return out;
  const auto stop = svg.find('"', start + 8);
  std::istringstream in(svg.substr(start + 8, stop - start - 8));
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    out.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

TEST(Config, ExperimentNames) {
  for (auto e : kAllExperiments) EXPECT_EQ(parse_experiment(to_string(e)), e);
  EXPECT_FALSE(parse_experiment("harper").has_value());
}

TEST(Config, DefaultsAndOverrides) {
  ExperimentConfig c(Experiment::KickedTime);
  EXPECT_EQ(c.unsigned_int("N"), 101u);
  EXPECT_EQ(c.seed(), 1u);
  c.merge_text("# comment\nexperiment = kicked-time\n tau = 0.8 # trailing\n\nsite=7\n");
  EXPECT_EQ(c.reals("tau"), std::vector<double>{0.8});
  EXPECT_EQ(c.unsigned_int("site"), 7u);
  c.set("N", "55");
  EXPECT_EQ(c.unsigned_int("N"), 55u);
}

TEST(Config, ErrorsCarryKey) {
  ExperimentConfig c(Experiment::HarperSweep);
  try {
    c.set("nonsense", "1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "nonsense");
  }
  EXPECT_THROW(c.set("experiment", "rmt-table"), ConfigError);
  EXPECT_THROW(c.set("N", "  "), ConfigError);
  EXPECT_THROW(c.merge_text("N 5\n"), ConfigError);
  c.set("N", "abc");
  EXPECT_THROW(c.unsigned_int("N"), ConfigError);
  c.set("g", "1,x");
  EXPECT_THROW(c.reals("g"), ConfigError);
  c.set("g", "0:1");
  EXPECT_THROW(c.reals("g"), ConfigError);
  EXPECT_THROW(c.merge_file("/nonexistent/config.txt"), ConfigError);
}

TEST(Config, ListAndRangeSyntax) {
  ExperimentConfig c(Experiment::KickedNeighbor);
  c.set("tau", "0:1:5, 2");
  EXPECT_EQ(c.reals("tau"), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0, 2.0}));
  c.set("tau", "3:4:1");
  EXPECT_EQ(c.reals("tau"), std::vector<double>{3.0});
  c.set("r", "1:3,7");
  EXPECT_EQ(c.sizes("r"), (std::vector<std::size_t>{1, 2, 3, 7}));
  c.set("r", "4:2");
  EXPECT_THROW(c.sizes("r"), ConfigError);
}

TEST(Config, HashIsStableAndSensitive) {
  ExperimentConfig a(Experiment::RmtTable), b(Experiment::RmtTable);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.set("seed", "2");
  EXPECT_NE(a.hash(), b.hash());
  b.set("seed", "1");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.hash(), ExperimentConfig(Experiment::HarperSweep).hash());
}

TEST(Csv, RoundTripIsBitExact) {
  ResultTable t({"name", "x", "y"});
  const std::vector<double> xs{0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -2.5e17, 5e-324};
  for (double x : xs) t.add_row({std::string("row"), x, std::exp(x * 1e-3)});
  t.set_provenance("seed", "42");
  const auto text = to_csv(t);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto back = parse_csv(text);
  ASSERT_EQ(back.n_rows(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(std::get<double>(back.at(i, 1)), xs[i]);
    EXPECT_EQ(std::get<double>(back.at(i, 2)), std::get<double>(t.at(i, 2)));
    EXPECT_EQ(std::get<std::string>(back.at(i, 0)), "row");
  }
  EXPECT_EQ(to_csv(back), text);
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  ResultTable t({"a", "b"});
  EXPECT_EQ(to_csv(t), "a,b\n");
  EXPECT_EQ(parse_csv("a,b\n").n_rows(), 0u);
}

TEST(Csv, ShapeAndTextChecks) {
  ResultTable t({"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), ShapeError);
  EXPECT_THROW(t.add_row({std::string("x,y"), 1.0}), ShapeError);
  EXPECT_THROW(t.column_index("c"), ShapeError);
  EXPECT_THROW(write_text("/nonexistent/dir/file.csv", "x"), IoError);
}

TEST(Csv, ProvenanceCarriesSeedAndHash) {
  ExperimentConfig c(Experiment::RmtTable);
  c.set("seed", "99");
  ResultTable t({"x"});
  stamp(t, c);
  const auto text = to_csv(t);
  EXPECT_NE(text.find("# seed: 99\n"), std::string::npos);
  EXPECT_NE(text.find("# config_hash: " + c.hash() + "\n"), std::string::npos);
  EXPECT_NE(text.find("# experiment: rmt-table\n"), std::string::npos);
}

TEST(Svg, SinglePointRenders) {
  PlotSpec p;
  p.series.push_back({"one", {2.0}, {3.0}, SeriesStyle::Line});
  const auto svg = render_svg(p);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST(Svg, LogLogPowerLawIsStraight) {
  PlotSpec p;
  p.log_log = true;
  std::vector<double> x, y;
  for (double v : {101.0, 144.0, 233.0, 377.0, 610.0}) {
    x.push_back(v);
    y.push_back(3e-7 * v * v);
  }
  p.series.push_back({"power", x, y, SeriesStyle::Line});
  const auto pts = polyline_points(render_svg(p));
  ASSERT_EQ(pts.size(), 5u);
  const double slope = (pts[4].second - pts[0].second) / (pts[4].first - pts[0].first);
  for (std::size_t i = 1; i < 4; ++i) {
    const double predicted = pts[0].second + slope * (pts[i].first - pts[0].first);
    EXPECT_NEAR(pts[i].second, predicted, 1e-9 * std::abs(predicted));
  }
}

TEST(Svg, AxesCoverData) {
  PlotSpec p;
  p.series.push_back({"s", {-3.7, 0.2, 12.9}, {0.001, -5.0, 44.0}, SeriesStyle::Line});
  const auto pts = polyline_points(render_svg(p));
  ASSERT_EQ(pts.size(), 3u);
  for (const auto& [x, y] : pts) {
    EXPECT_GE(x, svg_detail::kLeft - 1e-9);
    EXPECT_LE(x, p.width - svg_detail::kRight + 1e-9);
    EXPECT_GE(y, svg_detail::kTop - 1e-9);
    EXPECT_LE(y, p.height - svg_detail::kBottom + 1e-9);
  }
  EXPECT_NE(render_svg(p).find("<text"), std::string::npos);
}

TEST(Run, ValidationHappensBeforeCompute) {
  ExperimentConfig c(Experiment::KickedTime);
  c.set("site", "500");
  EXPECT_THROW(run(c), ConfigError);
  ExperimentConfig d(Experiment::HarperSweep);
  d.set("beta", "0.7");
  EXPECT_THROW(run(d), ConfigError);
  ExperimentConfig e(Experiment::RmtTable);
  e.set("N", "2");
  EXPECT_THROW(run(e), ConfigError);
}

TEST(Run, RmtTableValuesAndDeterminism) {
  ExperimentConfig c(Experiment::RmtTable);
  c.set("N", "31");
  c.set("sample_size", "40");
  const auto a = run(c);
  const auto b = run(c, {3});
  ASSERT_EQ(a.tables.size(), 1u);
  EXPECT_EQ(to_csv(a.tables[0].table), to_csv(b.tables[0].table));
  const auto& t = a.tables[0].table;
  ASSERT_EQ(t.n_rows(), 2u);
  const auto quad = t.numeric_column("quadrature_mean");
  EXPECT_NEAR(quad[0], 4.0 / std::numbers::pi, 1e-6);
  EXPECT_NEAR(quad[1], std::numbers::pi / 2.0, 1e-6);
  c.set("seed", "2");
  EXPECT_NE(to_csv(run(c).tables[0].table), to_csv(a.tables[0].table));
}

TEST(Run, WritesByteIdenticalFiles) {
  ExperimentConfig c(Experiment::KickedTau);
  c.set("N", "21");
  c.set("tau", "0.1,0.8");
  const auto dir = std::filesystem::temp_directory_path() / "magnon_lab_test_run";
  std::filesystem::remove_all(dir);
  const auto first = write_outputs(run(c), dir / "a", true);
  const auto second = write_outputs(run(c), dir / "b", true);
  ASSERT_EQ(first.size(), second.size());
  ASSERT_FALSE(first.empty());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].filename(), second[i].filename());
    EXPECT_EQ(slurp(first[i]), slurp(second[i]));
  }
  std::filesystem::remove_all(dir);
}

TEST(Run, KickedTauColumnsAndReferenceRows) {
  ExperimentConfig c(Experiment::KickedTau);
  c.set("N", "21");
  c.set("tau", "0.1,0.8");
  const auto out = run(c);
  const auto& t = out.tables[0].table;
  EXPECT_EQ(t.columns(), (std::vector<std::string>{"series", "tau", "beta", "avg_C", "N_times_avg_C"}));
  std::size_t refs = 0;
  for (std::size_t i = 0; i < t.n_rows(); ++i) {
    const auto& series = std::get<std::string>(t.at(i, 0));
    const double avg = std::get<double>(t.at(i, 3));
    const double scaled = std::get<double>(t.at(i, 4));
    EXPECT_NEAR(scaled, 21.0 * avg, 1e-15 * scaled + 1e-300);
    if (series.rfind("RMT_", 0) == 0) {
      ++refs;
      EXPECT_TRUE(std::isnan(std::get<double>(t.at(i, 2))));
    }
  }
  EXPECT_EQ(refs, 4u);
  ASSERT_EQ(out.plots.size(), 1u);
}

TEST(Run, ClassicalPortraitOrbits) {
  ExperimentConfig c(Experiment::ClassicalPortrait);
  c.set("tau", "0.3");
  c.set("n_iter", "50");
  const auto out = run(c);
  const auto orbit = out.tables[0].table.numeric_column("orbit");
  EXPECT_GE(*std::max_element(orbit.begin(), orbit.end()) + 1.0, 30.0);
  for (double q : out.tables[0].table.numeric_column("q")) {
    EXPECT_GE(q, 0.0);
    EXPECT_LT(q, 1.0);
  }
}

TEST(Run, ScalingNeedsThreeLengths) {
  ExperimentConfig c(Experiment::HarperScaling);
  c.set("N", "101,144");
  EXPECT_THROW(run(c), ConfigError);
}

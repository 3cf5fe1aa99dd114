#include <gtest/gtest.h>

#include <sstream>

#include "wpcn/report.hpp"
#include "wpcn/sweep.hpp"

using namespace wpcn;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.kind = SweepKind::custom;
  spec.parameter = "system.p0";
  spec.values = {0.5, 1.0, 2.0};
  spec.schemes = {{Scheme::backscatter, 1e5}, {Scheme::no_backscatter, 0.0}};
  spec.seed = 5;
  return spec;
}

std::string csv_of(const SweepSpec& spec) {
  std::ostringstream out;
  write_sweep_csv(out, spec, run_sweep(spec));
  return out.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Presets, ChannelDisparityPreset) {
  const SweepSpec s = fig4_preset();
  EXPECT_EQ(s.kind, SweepKind::channel_disparity);
  ASSERT_EQ(s.values.size(), 10u);
  EXPECT_EQ(s.values.front(), 1.0);
  EXPECT_EQ(s.values.back(), 10.0);
  EXPECT_EQ(s.schemes.size(), 3u);
  EXPECT_TRUE(validate(s).empty());
  const Config c = sweep_instance(s, 4.0, {Scheme::backscatter, 5e4});
  EXPECT_EQ(c.gains.h_e1, 8.5e-5);
  EXPECT_EQ(c.gains.h_1a, 8.5e-6);
  EXPECT_EQ(c.gains.h_2a, 8.5e-6 / 4.0);
  EXPECT_EQ(c.gains.h_12, path_loss_gain(4.0, c.params));
  EXPECT_EQ(c.params.rb, 5e4);
}

TEST(Presets, InterUserDistancePreset) {
  const SweepSpec s = fig5_preset();
  ASSERT_EQ(s.values.size(), 9u);
  EXPECT_EQ(s.values.front(), 1.0);
  EXPECT_EQ(s.values.back(), 5.0);
  const Config c = sweep_instance(s, 2.5, {Scheme::no_backscatter, 0.0});
  EXPECT_EQ(c.gains.h_12, path_loss_gain(2.5, c.params));
  EXPECT_EQ(c.gains.h_21, c.gains.h_12);
  EXPECT_EQ(c.gains.h_2a, c.gains.h_1a);
}

TEST(SweepSpec, Validation) {
  SweepSpec s = small_spec();
  EXPECT_TRUE(validate(s).empty());
  s.values = {1.0, 1.0};
  EXPECT_FALSE(validate(s).empty());
  s.values = {3.0, 2.0, 1.0};
  EXPECT_TRUE(validate(s).empty());
  s.values.clear();
  EXPECT_FALSE(validate(s).empty());
  s = small_spec();
  s.schemes.clear();
  EXPECT_FALSE(validate(s).empty());
  EXPECT_THROW((void)run_sweep(s), ConfigError);
}

TEST(SweepSpec, FromConfig) {
  const Config c = load_config(WPCN_TEST_DATA_DIR "/custom_sweep.ini");
  const SweepSpec s = sweep_from_config(c);
  EXPECT_EQ(s.parameter, "system.p0");
  EXPECT_EQ(s.values.size(), 3u);
  EXPECT_EQ(s.seed, 3u);
  EXPECT_FALSE(s.base.sweep.has_value());
  EXPECT_THROW((void)sweep_from_config(Config{}), ConfigError);
}

TEST(RunSweep, SinglePointEqualsDirectSolve) {
  SweepSpec s = small_spec();
  s.values = {1.0};
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 2u);
  const SystemParams p;
  const ChannelGains g = reference_gains(p);
  EXPECT_EQ(rows[0].solution.common_throughput,
            maximize_common_throughput(g, p).common_throughput);
  EXPECT_EQ(rows[1].solution.common_throughput, maximize_benchmark(g, p).common_throughput);
  EXPECT_EQ(rows[0].status, "ok");
}

TEST(RunSweep, RowsFollowAbscissaOrder) {
  const auto rows = run_sweep(small_spec());
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].abscissa, 0.5);
  EXPECT_EQ(rows[1].scheme.scheme, Scheme::no_backscatter);
  EXPECT_EQ(rows[5].abscissa, 2.0);
  EXPECT_LT(rows[0].solution.common_throughput, rows[4].solution.common_throughput);
}

TEST(RunSweep, PerPointFailuresAreRecordedInRow) {
  SweepSpec s = small_spec();
  s.values = {-1.0, 1.0};  // negative power fails validation at the first point only
  s.schemes = {{Scheme::backscatter, 1e5}};
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status.rfind("error: ", 0), 0u);
  EXPECT_EQ(rows[1].status, "ok");

  s.values = {1.0};
  s.base.solver.max_iterations = 1;
  EXPECT_EQ(run_sweep(s)[0].status.rfind("nonconverged: ", 0), 0u);
}

TEST(SweepCsv, ByteIdenticalAcrossRuns) {
  const SweepSpec s = small_spec();
  EXPECT_EQ(csv_of(s), csv_of(s));
}

TEST(SweepCsv, VersionedHeaderAndRoundTrip) {
  const SweepSpec spec = small_spec();
  std::istringstream in(csv_of(spec));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# wpcn-sweep-csv v1");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# kind=custom parameter=system.p0 seed=5", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config: system.p0=", 0), 0u);
  std::getline(in, line);
  const auto header = split(line);
  ASSERT_EQ(header.size(), 20u);
  EXPECT_EQ(header[3], "common_throughput");

  int rows = 0;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    ASSERT_EQ(cells.size(), header.size()) << line;
    ++rows;
    SystemParams p;
    p.p0 = std::stod(cells[0]);
    const ChannelGains g = reference_gains(p);
    const auto t = TimeAllocation::with_symmetric_joint(
        std::stod(cells[4]), std::stod(cells[5]), std::stod(cells[6]), std::stod(cells[7]),
        std::stod(cells[8]));
    RateBreakdown b;
    if (cells[1] == "backscatter") {
      p.rb = std::stod(cells[2]);
      b = overall_rates(t, g, p);
    } else {
      b = benchmark_rates(t, std::stod(cells[9]), std::stod(cells[10]), g, p);
    }
    EXPECT_NEAR(b.common(), std::stod(cells[3]), 1e-9) << line;
  }
  EXPECT_EQ(rows, 6);
}

TEST(SweepCsv, GridCheckFillsGapColumn) {
  SweepSpec s = small_spec();
  s.values = {1.0};
  s.schemes = {{Scheme::backscatter, 1e5}};
  s.base.solver.grid_resolution = 0.05;
  s.grid_check = true;
  const auto rows = run_sweep(s);
  ASSERT_TRUE(rows[0].has_grid);
  EXPECT_GE(rows[0].solution.common_throughput, rows[0].grid_throughput - 1e-9);
  std::ostringstream out;
  write_sweep_csv(out, s, rows);
  EXPECT_EQ(out.str().back(), '\n');
  EXPECT_NE(out.str().find("grid_check=true"), std::string::npos);
}

TEST(SweepGnuplot, OneBlockPerScheme) {
  const SweepSpec s = small_spec();
  std::ostringstream out;
  write_sweep_gnuplot(out, s, run_sweep(s));
  const std::string text = out.str();
  EXPECT_NE(text.find("# scheme=backscatter rb=100000"), std::string::npos);
  EXPECT_NE(text.find("# scheme=no_backscatter"), std::string::npos);
  EXPECT_NE(text.find("\n\n\n"), std::string::npos);
}

TEST(BerReport, EmptyPointListGivesHeaderOnly) {
  Config c;
  c.ber.d12 = std::vector<double>{};
  const auto rows = run_ber_report(c);
  EXPECT_TRUE(rows.empty());
  std::ostringstream out;
  write_ber_csv(out, c, rows);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("# wpcn-ber-csv v1\n", 0), 0u);
  EXPECT_EQ(text.substr(text.rfind("direction,")),
            "direction,d12_m,h_12,samples_per_bit,lemma_ber,mc_ber,ci_halfwidth,ratio,"
            "threshold,best_threshold,best_threshold_ber,seed\n");
}

TEST(BerReport, CoinFlipRow) {
  Config c;
  c.params.beta = 1.0;
  c.ber.n_bits = 20000;
  const auto rows = run_ber_report(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].comparison.lemma_ber, 0.5);
  EXPECT_NEAR(rows[0].comparison.monte_carlo.p_hat, 0.5, 0.015);
}

TEST(BerReport, ReproducibleAndDistinctSeedsPerPoint) {
  Config c = load_config(WPCN_TEST_DATA_DIR "/ber_small.ini");
  c.ber.n_bits = 5000;
  const auto a = run_ber_report(c);
  ASSERT_EQ(a.size(), 6u);  // three distances, both directions
  EXPECT_EQ(a[0].seed, a[1].seed);
  EXPECT_NE(a[0].seed, a[2].seed);
  std::ostringstream first, second;
  write_ber_csv(first, c, a);
  write_ber_csv(second, c, run_ber_report(c));
  EXPECT_EQ(first.str(), second.str());
}

#include <gtest/gtest.h>

#include <sstream>

#include "wpcn/config.hpp"

using namespace wpcn;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.ini");
}

std::string error_of(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, EmptyInputGivesReferenceSetup) {
  const Config c = parse("");
  EXPECT_EQ(c.gain_source, GainSource::defaults);
  EXPECT_EQ(c.params.p0, 1.0);
  EXPECT_EQ(c.params.rb, 1e5);
  EXPECT_EQ(c.gains.h_e1, 8.5e-5);
  EXPECT_EQ(c.gains.h_12, c.gains.h_21);
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(Config, SystemKeysCommentsAndWhitespace) {
  const Config c = parse(
      "# header comment\n"
      "[system]\n"
      "  p0 = 2.5   ; trailing comment\n"
      "beta=0.4\n"
      "\n"
      "[policy]\n"
      "own_slot_mode = \"full\"\n"
      "include_cross_term = false\n"
      "[solver]\n"
      "max_iterations = 50\n");
  EXPECT_EQ(c.params.p0, 2.5);
  EXPECT_EQ(c.params.beta, 0.4);
  EXPECT_EQ(c.policy.own_slot_mode, OwnSlotMode::full);
  EXPECT_FALSE(c.policy.include_cross_term);
  EXPECT_EQ(c.solver.max_iterations, 50);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_of("[system]\n\nbta = 0.5\n"), "test.ini:3: unknown key 'bta' in [system]");
  EXPECT_EQ(error_of("[nope]\n"), "test.ini:1: unknown section [nope]");
  EXPECT_EQ(error_of("p0 = 1\n"), "test.ini:1: key outside of any section");
  EXPECT_EQ(error_of("[system]\np0 1\n"), "test.ini:2: expected key = value");
  EXPECT_EQ(error_of("[system]\np0 = abc\n"), "test.ini:2: expected a number, got 'abc'");
  EXPECT_EQ(error_of("[gains]\nh_99 = 1\n"), "test.ini:2: unknown key 'h_99' in [gains]");
}

TEST(Config, InvalidValuesAreReported) {
  const std::string msg = error_of("[system]\nbeta = 1.5\n");
  EXPECT_NE(msg.find("invalid configuration"), std::string::npos);
  EXPECT_NE(msg.find("beta"), std::string::npos);
  EXPECT_NE(error_of("[solver]\ngrid_resolution = 0.5\n").find("grid_resolution"),
            std::string::npos);
}

TEST(Config, ExplicitGainsFillFromReferenceAndStayReciprocal) {
  const Config c = parse("[gains]\nh_12 = 1e-5\n");
  EXPECT_EQ(c.gain_source, GainSource::explicit_gains);
  EXPECT_EQ(c.gains.h_12, 1e-5);
  EXPECT_EQ(c.gains.h_21, 1e-5);
  EXPECT_EQ(c.gains.h_1a, 8.5e-6);
}

TEST(Config, TopologyBuildsGains) {
  const Config c = parse("[topology]\nd_e1 = 2\nd_e2 = 2\nd_1a = 10\nd_2a = 10\nd_12 = 4\n");
  EXPECT_EQ(c.gain_source, GainSource::topology);
  EXPECT_EQ(c.gains.h_12, path_loss_gain(4.0, c.params));
  EXPECT_EQ(c.gains.h_e1, path_loss_gain(2.0, c.params));
  EXPECT_NE(error_of("[topology]\nd_e1 = 2\n").find("missing"), std::string::npos);
  EXPECT_NE(error_of("[topology]\nd_e1=0\nd_e2=1\nd_1a=1\nd_2a=1\nd_12=1\n").find("d_e1"),
            std::string::npos);
}

TEST(Config, ExplicitGainsTakePrecedenceOverTopology) {
  const Config c = load_config(WPCN_TEST_DATA_DIR "/precedence.ini");
  EXPECT_EQ(c.gain_source, GainSource::explicit_gains);
  ASSERT_TRUE(c.topology.has_value());
  EXPECT_EQ(c.gains.h_e1, 8.5e-5);
  EXPECT_NE(c.gains.h_e1, path_loss_gain(2.0, c.params));
}

TEST(Config, SweepSection) {
  const Config c = parse(
      "[sweep]\n"
      "kind = custom\n"
      "parameter = system.p0\n"
      "values = [0.5, 1, 2]\n"
      "schemes = backscatter@5e4, no_backscatter\n"
      "seed = 9\n"
      "grid_check = yes\n");
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->values, (std::vector<double>{0.5, 1.0, 2.0}));
  ASSERT_EQ(c.sweep->schemes.size(), 2u);
  EXPECT_EQ(c.sweep->schemes[0].rb, 5e4);
  EXPECT_EQ(c.sweep->schemes[1].scheme, Scheme::no_backscatter);
  EXPECT_EQ(c.sweep->seed, 9u);
  EXPECT_TRUE(c.sweep->grid_check);
  EXPECT_NE(error_of("[sweep]\nschemes = active\n").find("unknown scheme"), std::string::npos);
  EXPECT_NE(error_of("[sweep]\nvalues = [1, 2\n").find("unterminated"), std::string::npos);
}

TEST(Config, BerSection) {
  const Config c = parse(
      "[ber]\nd12 = 1, 2, 4\nn_bits = 500\nseed = 4\ndirection = both\n"
      "signal_model = unit_modulus_random_phase\n");
  ASSERT_TRUE(c.ber.d12.has_value());
  EXPECT_EQ(c.ber.d12->size(), 3u);
  EXPECT_EQ(c.ber.n_bits, 500u);
  EXPECT_EQ(c.ber.directions.size(), 2u);
  EXPECT_EQ(c.ber.signal_model, SignalModel::unit_modulus_random_phase);
  const Config empty = parse("[ber]\nd12 = []\n");
  ASSERT_TRUE(empty.ber.d12.has_value());
  EXPECT_TRUE(empty.ber.d12->empty());
}

TEST(Config, ApplySettingKeepsReciprocity) {
  Config c;
  apply_setting(c, "gains", "h_21", "3e-6");
  EXPECT_EQ(c.gains.h_12, 3e-6);
  apply_setting(c, "system", "p0", "4");
  EXPECT_EQ(c.params.p0, 4.0);
  EXPECT_THROW(apply_setting(c, "system", "nope", "1"), ConfigError);
  EXPECT_THROW(apply_setting(c, "topology", "d_12", "1"), ConfigError);
}

TEST(Config, DescribeRoundTrips) {
  Config c = parse("[system]\np0 = 0.1\n[gains]\nh_12 = 1.2345678901234567e-6\n");
  for (const auto& kv : describe(c)) {
    const auto dot = kv.find('.');
    const auto eq = kv.find('=');
    Config copy;
    apply_setting(copy, kv.substr(0, dot), kv.substr(dot + 1, eq - dot - 1), kv.substr(eq + 1));
  }
  const auto entries = describe(c);
  EXPECT_NE(std::find(entries.begin(), entries.end(), "gains.h_12=1.2345678901234567e-06"),
            entries.end());
  EXPECT_NE(std::find(entries.begin(), entries.end(), "system.p0=0.10000000000000001"),
            entries.end());
}

TEST(Config, MissingFileIsReported) {
  EXPECT_THROW((void)load_config("/nonexistent/path.ini"), ConfigError);
}

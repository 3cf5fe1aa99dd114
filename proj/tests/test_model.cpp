#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wpcn/model.hpp"

using namespace wpcn;

namespace {

bool mentions(const std::vector<std::string>& report, const std::string& needle) {
  for (const auto& s : report) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(PathLoss, ReferenceDistanceMatchesHighPrecisionValue) {
  // 2 * (3e8 / (4 pi 4 915e6))^2.5, evaluated at 40 digits.
  EXPECT_NEAR(path_loss_gain(4.0, SystemParams{}), 6.8723577455034983303e-6, 1e-19);
  EXPECT_NEAR(path_loss_gain(1.0, SystemParams{}), 2.1991544785611194657e-4, 1e-17);
}

TEST(PathLoss, DoublingDistanceScalesByPowerLaw) {
  const SystemParams p;
  for (double d : {0.3, 1.0, 4.0, 17.5}) {
    EXPECT_NEAR(path_loss_gain(2.0 * d, p) / path_loss_gain(d, p), std::pow(2.0, -2.5), 1e-14);
  }
}

TEST(PathLoss, ZeroExponentGivesAntennaGain) {
  SystemParams p;
  p.lambda_pl = 0.0;
  for (double d : {0.1, 1.0, 100.0}) EXPECT_EQ(path_loss_gain(d, p), p.ga);
}

TEST(PathLoss, NonPositiveDistanceIsDomainError) {
  EXPECT_THROW((void)path_loss_gain(0.0, SystemParams{}), std::domain_error);
  EXPECT_THROW((void)path_loss_gain(-1.0, SystemParams{}), std::domain_error);
}

TEST(PathLoss, StrictlyDecreasingAndPowerLawInvariant) {
  const SystemParams p;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.05, 50.0);
  const double k = path_loss_gain(1.0, p);
  for (int i = 0; i < 200; ++i) {
    const double a = dist(rng);
    const double b = a * (1.0 + 1e-6 + dist(rng));
    EXPECT_GT(path_loss_gain(a, p), path_loss_gain(b, p));
    EXPECT_NEAR(path_loss_gain(a, p) * std::pow(a, 2.5) / k, 1.0, 1e-12);
  }
}

TEST(Topology, GainsAreReciprocalAndFollowDistances) {
  const SystemParams p;
  const Topology topo{2.0, 3.0, 10.0, 12.0, 4.0};
  const ChannelGains g = gains_from_topology(topo, p);
  EXPECT_EQ(g.h_12, g.h_21);
  EXPECT_EQ(g.h_e1, path_loss_gain(2.0, p));
  EXPECT_EQ(g.h_2a, path_loss_gain(12.0, p));
  EXPECT_NEAR(g.h_12, 6.8723577455034983303e-6, 1e-19);
  EXPECT_TRUE(validate(p, g).empty());
}

TEST(Topology, EqualDistancesGiveEqualGains) {
  const ChannelGains g = gains_from_topology({3.0, 3.0, 3.0, 3.0, 3.0}, SystemParams{});
  EXPECT_EQ(g.h_e1, g.h_e2);
  EXPECT_EQ(g.h_e1, g.h_1a);
  EXPECT_EQ(g.h_e1, g.h_2a);
  EXPECT_EQ(g.h_e1, g.h_12);
}

TEST(Topology, PositiveDistancesAlwaysValidate) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(0.1, 40.0);
  const SystemParams p;
  for (int i = 0; i < 100; ++i) {
    const Topology t{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
    EXPECT_TRUE(validate(p, gains_from_topology(t, p)).empty());
  }
}

TEST(Validate, DefaultsAreValid) {
  EXPECT_TRUE(validate(SystemParams{}, reference_gains()).empty());
}

TEST(Validate, BetaOutOfRangeIsReported) {
  SystemParams p;
  p.beta = 1.2;
  const auto report = validate(p, reference_gains());
  ASSERT_EQ(report.size(), 1u);
  EXPECT_TRUE(mentions(report, "beta"));
}

TEST(Validate, ReciprocityViolationIsReported) {
  ChannelGains g = reference_gains();
  g.h_21 = 2.0 * g.h_12;
  EXPECT_TRUE(mentions(validate(SystemParams{}, g), "reciprocity"));
}

TEST(Validate, ListsEveryViolation) {
  SystemParams p;
  p.p0 = -1.0;
  p.mu2 = 2.0;
  p.t0 = 1.0;
  p.s_rate = 0.5 * p.rb;
  ChannelGains g = reference_gains();
  g.h_1a = 0.0;
  const auto report = validate(p, g);
  EXPECT_TRUE(mentions(report, "p0"));
  EXPECT_TRUE(mentions(report, "mu2"));
  EXPECT_TRUE(mentions(report, "t0"));
  EXPECT_TRUE(mentions(report, "samples per bit"));
  EXPECT_TRUE(mentions(report, "h_1a"));
  EXPECT_THROW(require_valid(p, g), std::invalid_argument);
}

TEST(TimeAllocation, BudgetAndSignConstraints) {
  EXPECT_TRUE(allocation_violations({0.0, 0.4, 0.1, 0.1, 0.2, 0.2}).empty());
  EXPECT_TRUE(mentions(allocation_violations({0.0, 0.4, 0.1, 0.1, 0.2, 0.3}), "budget"));
  EXPECT_TRUE(mentions(allocation_violations({0.0, 0.6, -0.1, 0.1, 0.2, 0.2}), "t21"));
  const auto t = TimeAllocation::with_symmetric_joint(0.1, 0.3, 0.1, 0.1, 0.4);
  EXPECT_EQ(t.t31, t.t32);
  EXPECT_NEAR(t.total(), 1.0, 1e-15);
}

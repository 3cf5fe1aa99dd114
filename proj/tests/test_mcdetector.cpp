#include <gtest/gtest.h>

#include <cmath>

#include "wpcn/mcdetector.hpp"

using namespace wpcn;

namespace {

/// Strong inter-user link so the two hypotheses are well separated.
ChannelGains strong_link() {
  ChannelGains g = reference_gains();
  g.h_12 = g.h_21 = 0.5;
  return g;
}

SystemParams with_samples_per_bit(int n) {
  SystemParams p;
  p.rb = p.s_rate / n;
  return p;
}

bool within_three_sigma_of_half(const BerEstimate& e) {
  return std::abs(e.p_hat - 0.5) <= 3.0 * std::sqrt(0.25 / double(e.n_bits));
}

}  // namespace

TEST(McDetector, FullSplitToHarvesterIsCoinFlip) {
  SystemParams p;
  p.beta = 1.0;
  const BerEstimate e = simulate_ber({Link::one_to_two, 20000, 5}, reference_gains(), p);
  EXPECT_TRUE(within_three_sigma_of_half(e)) << e.p_hat;
}

TEST(McDetector, NoReflectionIsCoinFlip) {
  SystemParams p;
  p.mu1 = p.mu2 = 0.0;
  for (auto model : {SignalModel::gaussian_energy_signal, SignalModel::unit_modulus_random_phase}) {
    const BerEstimate e = simulate_ber({Link::two_to_one, 20000, 9, model}, strong_link(), p);
    EXPECT_TRUE(within_three_sigma_of_half(e)) << e.p_hat;
  }
}

TEST(McDetector, DeterministicGivenSeed) {
  const SystemParams p;
  const DetectorScenario sc{Link::one_to_two, 30000, 77};
  const BerEstimate a = simulate_ber(sc, strong_link(), p);
  const BerEstimate b = simulate_ber(sc, strong_link(), p);
  EXPECT_EQ(a.p_hat, b.p_hat);
  EXPECT_EQ(a.best_threshold, b.best_threshold);
  EXPECT_EQ(a.best_threshold_ber, b.best_threshold_ber);
  const BerEstimate c = simulate_ber({Link::one_to_two, 30000, 78}, strong_link(), p);
  EXPECT_NE(a.p_hat, c.p_hat);
}

TEST(McDetector, ThresholdIsMidpointOfHypothesisMeans) {
  const SystemParams p;
  const ChannelGains g = strong_link();
  for (Link dir : {Link::one_to_two, Link::two_to_one}) {
    const double m0 = hypothesis_mean_energy(dir, 0, g, p);
    const double m1 = hypothesis_mean_energy(dir, 1, g, p);
    EXPECT_GT(m1, m0);
    EXPECT_DOUBLE_EQ(detector_threshold(dir, g, p), 0.5 * (m0 + m1));
    EXPECT_DOUBLE_EQ(simulate_ber({dir, 100, 1}, g, p).threshold, 0.5 * (m0 + m1));
  }
}

TEST(McDetector, HypothesisMeansFollowSignalModel) {
  const SystemParams p;
  const ChannelGains g = reference_gains(p);
  const double m0 = hypothesis_mean_energy(Link::one_to_two, 0, g, p);
  EXPECT_DOUBLE_EQ(m0, (1.0 - p.beta) * (p.p0 * g.h_e2 + p.sigma0_sq) + p.sigmas_sq);
  const double m1 = hypothesis_mean_energy(Link::one_to_two, 1, g, p);
  // m1 - m0 cancels most digits of m0, so compare relatively.
  const double reflected = (1.0 - p.beta) * p.p0 * p.mu1 * p.mu1 * g.h_e1 * g.h_12;
  EXPECT_NEAR((m1 - m0) / reflected, 1.0, 1e-9);
}

TEST(McDetector, NonIntegralSamplesPerBitIsRejected) {
  SystemParams p;
  p.rb = 7e4;
  EXPECT_THROW((void)integral_samples_per_bit(p), std::invalid_argument);
  EXPECT_THROW((void)simulate_ber({}, reference_gains(), p), std::invalid_argument);
  EXPECT_EQ(integral_samples_per_bit(SystemParams{}), 6);
}

TEST(McDetector, ZeroBitsIsRejected) {
  EXPECT_THROW((void)simulate_ber({Link::one_to_two, 0, 1}, reference_gains(), SystemParams{}),
               std::invalid_argument);
}

TEST(McDetector, MoreSamplesPerBitNeverHurts) {
  const ChannelGains g = strong_link();
  BerEstimate previous = simulate_ber({Link::one_to_two, 100000, 1}, g, with_samples_per_bit(6));
  EXPECT_LT(previous.p_hat, 0.45);
  for (int n : {12, 24}) {
    const BerEstimate e = simulate_ber({Link::one_to_two, 100000, 2}, g, with_samples_per_bit(n));
    EXPECT_LE(e.p_hat, previous.p_hat + e.ci_halfwidth + previous.ci_halfwidth) << "N=" << n;
    previous = e;
  }
}

TEST(McDetector, MorePowerNeverHurts) {
  const ChannelGains g = strong_link();
  BerEstimate previous;
  previous.p_hat = 1.0;
  for (double p0 : {0.25, 1.0, 4.0}) {
    SystemParams p;
    p.p0 = p0;
    const BerEstimate e = simulate_ber({Link::one_to_two, 100000, 3}, g, p);
    EXPECT_LE(e.p_hat, previous.p_hat + e.ci_halfwidth + previous.ci_halfwidth) << "P0=" << p0;
    previous = e;
  }
}

TEST(McDetector, EmpiricalBestThresholdIsNoWorseThanMidpoint) {
  const BerEstimate e = simulate_ber({Link::one_to_two, 50000, 4}, strong_link(), SystemParams{});
  EXPECT_LE(e.best_threshold_ber, e.p_hat);
  EXPECT_GE(e.ci_halfwidth, 0.0);
}

TEST(CompareWithLemma, CoinFlipCaseAgrees) {
  SystemParams p;
  p.beta = 1.0;
  const LemmaComparison c = compare_with_lemma({Link::one_to_two, 20000, 6}, reference_gains(), p);
  EXPECT_EQ(c.lemma_ber, 0.5);
  EXPECT_NEAR(c.ratio, 1.0, 0.03);
  EXPECT_EQ(c.samples_per_bit, 6);
}

TEST(CompareWithLemma, NamesAreStable) {
  EXPECT_EQ(to_string(Link::one_to_two), "1->2");
  EXPECT_EQ(to_string(Link::two_to_one), "2->1");
  EXPECT_EQ(to_string(SignalModel::unit_modulus_random_phase), "unit_modulus_random_phase");
}

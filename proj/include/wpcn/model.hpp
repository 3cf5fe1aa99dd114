#pragma once

#include <string>
#include <vector>

namespace wpcn {

/// Speed of light used by the free-space term of the path-loss model, m/s.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Physical constants of the two-user network.
///
/// Defaults reproduce the reference simulation setup: 1 W energy node,
/// 0.8 harvesting efficiency, 70% of the received power routed to the
/// harvester during backscatter, 100 kbit/s backscatter at 600 ksample/s.
struct SystemParams {
  double p0 = 1.0;            ///< energy-node transmit power, W
  double eta = 0.8;           ///< energy-harvesting efficiency
  double beta = 0.7;          ///< power-splitter fraction routed to harvesting
  double mu1 = 0.8;           ///< reflection coefficient of WD1
  double mu2 = 0.8;           ///< reflection coefficient of WD2
  double sigma0_sq = 1e-10;   ///< antenna noise power, W
  double sigmas_sq = 1e-10;   ///< splitter/decoder circuit noise power, W
  double rb = 1e5;            ///< backscatter bit rate, bit/s
  double s_rate = 6e5;        ///< backscatter receiver sampling rate, samples/s
  double t0 = 0.0;            ///< channel-estimation overhead, fraction of the block
  double bandwidth = 1e5;     ///< active-link bandwidth, Hz
  double ga = 2.0;            ///< antenna power gain
  double fd = 915e6;          ///< carrier frequency, Hz
  double lambda_pl = 2.5;     ///< path-loss exponent

  /// Samples per backscatter bit, N = S / R_b.
  [[nodiscard]] double samples_per_bit() const { return s_rate / rb; }
};

/// Reciprocal power gains of the six links. Amplitudes are sqrt(h).
struct ChannelGains {
  double h_e1 = 0.0;
  double h_e2 = 0.0;
  double h_1a = 0.0;
  double h_2a = 0.0;
  double h_12 = 0.0;
  double h_21 = 0.0;
};

/// Link distances in meters. The inter-user distance serves both directions.
struct Topology {
  double d_e1 = 0.0;
  double d_e2 = 0.0;
  double d_1a = 0.0;
  double d_2a = 0.0;
  double d_12 = 0.0;
};

/// Fractions of the unit block spent in each protocol stage.
struct TimeAllocation {
  double t0 = 0.0;   ///< channel estimation
  double t1 = 0.0;   ///< wireless energy transfer
  double t21 = 0.0;  ///< WD1 backscatters to WD2
  double t22 = 0.0;  ///< WD2 backscatters to WD1
  double t31 = 0.0;  ///< joint transmission of WD1's message
  double t32 = 0.0;  ///< joint transmission of WD2's message

  [[nodiscard]] double t3() const { return t31 + t32; }
  [[nodiscard]] double total() const { return t0 + t1 + t21 + t22 + t31 + t32; }

  /// Allocation with t31 = t32 = t3 / 2.
  static TimeAllocation with_symmetric_joint(double t0, double t1, double t21,
                                             double t22, double t3) {
    return {t0, t1, t21, t22, t3 / 2.0, t3 / 2.0};
  }
};

inline constexpr double kBudgetTolerance = 1e-12;

/// Every violated constraint of the unit-block budget; empty iff feasible.
[[nodiscard]] std::vector<std::string> allocation_violations(
    const TimeAllocation& t, double tolerance = kBudgetTolerance);

/// G_A * (c / (4 pi d f_d))^lambda. Throws std::domain_error for d <= 0.
[[nodiscard]] double path_loss_gain(double distance_m, const SystemParams& params);

[[nodiscard]] ChannelGains gains_from_topology(const Topology& topo,
                                               const SystemParams& params);

/// Gains of the reference two-user setup: h_E = 8.5e-5, h_A = 8.5e-6 and a
/// 4 m inter-user separation through the path-loss model.
[[nodiscard]] ChannelGains reference_gains(const SystemParams& params = {});

/// Lists every violated invariant of the two records. Empty means valid.
[[nodiscard]] std::vector<std::string> validate(const SystemParams& params,
                                                const ChannelGains& gains);
[[nodiscard]] std::vector<std::string> validate(const SystemParams& params);
[[nodiscard]] std::vector<std::string> validate(const Topology& topo);

/// Throws std::invalid_argument listing every violation, if any.
void require_valid(const SystemParams& params, const ChannelGains& gains);

}  // namespace wpcn

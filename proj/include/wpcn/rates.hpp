#pragma once

#include <optional>
#include <utility>

#include "wpcn/model.hpp"

namespace wpcn {

/// Direction of a backscatter exchange.
enum class Link {
  one_to_two,  ///< WD1 reflects, WD2 decodes
  two_to_one,  ///< WD2 reflects, WD1 decodes
};

/// Energy a device harvests while it backscatters its own bits.
enum class OwnSlotMode {
  none,          ///< nothing
  full,          ///< eta * P0 * h_Ei * t_2i, as if every bit absorbed the carrier
  bit_averaged,  ///< full scaled by (1 - mu_i^2 / 2) for equiprobable bits
};

struct HarvestPolicy {
  OwnSlotMode own_slot_mode = OwnSlotMode::bit_averaged;
  bool include_cross_term = true;
};

/// Joules harvested per device and stage.
struct EnergyLedger {
  double e1_wet = 0.0;
  double e2_wet = 0.0;
  double e1_bs = 0.0;
  double e2_bs = 0.0;

  [[nodiscard]] double total1() const { return e1_wet + e1_bs; }
  [[nodiscard]] double total2() const { return e2_wet + e2_bs; }
};

/// Bit-error rates and BSC capacities of the two backscatter links.
/// pe2/c2 describe WD1 -> WD2, pe1/c1 describe WD2 -> WD1.
struct LinkQuality {
  double pe1 = 0.5;
  double pe2 = 0.5;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Everything computed for one evaluated allocation. Rates are in bits per
/// unit block.
struct RateBreakdown {
  double r1_ex = 0.0;  ///< exchange-stage rate of WD1's message
  double r2_ex = 0.0;
  double r3 = 0.0;     ///< joint-transmission rate, identical for both users
  double r1 = 0.0;     ///< min(r1_ex, r3)
  double r2 = 0.0;     ///< min(r2_ex, r3)
  /// Present for the backscatter scheme only.
  std::optional<LinkQuality> link;
  double p1 = 0.0;     ///< stage-3 transmit power, W
  double p2 = 0.0;
  EnergyLedger ledger;

  [[nodiscard]] double common() const { return r1 < r2 ? r1 : r2; }
};

/// (E1, E2) harvested during the energy-transfer stage.
[[nodiscard]] std::pair<double, double> harvest_wet(double t1, const ChannelGains& gains,
                                                    const SystemParams& params);

/// (E1, E2) harvested during the backscatter exchange stage.
///
/// Each device collects the receiving-side term while the other one
/// reflects (power split beta, optional cross term between the direct and
/// reflected paths) plus the own-slot term selected by the policy.
[[nodiscard]] std::pair<double, double> harvest_backscatter(double t21, double t22,
                                                            const ChannelGains& gains,
                                                            const SystemParams& params,
                                                            const HarvestPolicy& policy);

/// Argument of erfc in the energy-detector BER for the given direction.
[[nodiscard]] double ber_erfc_argument(Link direction, const ChannelGains& gains,
                                       const SystemParams& params);

/// Energy-detector BER of the backscatter link, clamped to [0, 0.5].
[[nodiscard]] double ber_backscatter(Link direction, const ChannelGains& gains,
                                     const SystemParams& params);

/// 1 - H2(pe) in bits per channel use. Throws std::domain_error outside [0, 0.5].
[[nodiscard]] double bsc_capacity(double pe);

[[nodiscard]] LinkQuality link_quality(const ChannelGains& gains, const SystemParams& params);

/// (R1, R2) = (R_b t21 C2, R_b t22 C1). WD1's message is decoded by WD2.
[[nodiscard]] std::pair<double, double> exchange_rates(double t21, double t22, double c1,
                                                       double c2, const SystemParams& params);

/// Stage-3 powers when each device exhausts its ledger over t3.
[[nodiscard]] std::pair<double, double> transmit_powers(const EnergyLedger& ledger, double t3);

/// (t3 / 2) * W * log2(1 + (p1 h_1A + p2 h_2A) / sigma0^2).
[[nodiscard]] double alamouti_rate(double t3, double p1, double p2, const ChannelGains& gains,
                                   const SystemParams& params);

/// t * W * log2(1 + snr_energy / t), continuous at t = 0.
///
/// This is the perspective of W log2(1 + x) and is jointly concave in
/// (t, snr_energy). The joint-transmission and active-exchange rates are
/// both instances of it.
[[nodiscard]] double perspective_rate(double t, double snr_energy, double bandwidth);

/// Full evaluation of the backscatter-assisted scheme at one allocation.
/// Throws std::domain_error naming the constraint if t is infeasible.
[[nodiscard]] RateBreakdown overall_rates(const TimeAllocation& t, const ChannelGains& gains,
                                          const SystemParams& params,
                                          const HarvestPolicy& policy = {});

/// Evaluation of the no-backscatter baseline: WD_i spends e_ex_i joules of
/// its stage-1 harvest on an active exchange transmission, nothing is
/// harvested during the exchange, and the residual energy feeds the joint
/// transmission.
[[nodiscard]] RateBreakdown benchmark_rates(const TimeAllocation& t, double e_ex1, double e_ex2,
                                            const ChannelGains& gains,
                                            const SystemParams& params);

}  // namespace wpcn

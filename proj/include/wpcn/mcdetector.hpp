#pragma once

#include <cstdint>
#include <string>

#include "wpcn/model.hpp"
#include "wpcn/rates.hpp"

namespace wpcn {

/// Statistics of the energy-node carrier x_k (unit average power).
enum class SignalModel {
  gaussian_energy_signal,     ///< circular complex Gaussian
  unit_modulus_random_phase,  ///< |x_k| = 1 with a uniform phase per sample
};

struct DetectorScenario {
  Link direction = Link::one_to_two;
  std::uint64_t n_bits = 100000;
  std::uint64_t seed = 1;
  SignalModel signal_model = SignalModel::gaussian_energy_signal;
};

struct BerEstimate {
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;  ///< 95% normal-approximation binomial interval
  std::uint64_t n_bits = 0;
  double threshold = 0.0;     ///< midpoint of the two hypothesis mean energies
  /// Threshold minimizing the error count on the simulated bits, and that error rate.
  double best_threshold = 0.0;
  double best_threshold_ber = 0.0;
};

/// Mean per-sample energy at the decoder for the reflector sending `bit`:
/// (1 - beta) (P0 (h_direct + bit * mu^2 h_reflector h_inter) + sigma0^2) + sigmas^2.
[[nodiscard]] double hypothesis_mean_energy(Link direction, int bit, const ChannelGains& gains,
                                            const SystemParams& params);

/// Midpoint of the two hypothesis mean energies.
[[nodiscard]] double detector_threshold(Link direction, const ChannelGains& gains,
                                        const SystemParams& params);

/// Integral samples per bit; throws std::invalid_argument when s_rate / rb is
/// not a whole number.
[[nodiscard]] int integral_samples_per_bit(const SystemParams& params);

/// Sample-level simulation of the power-splitting backscatter receiver with
/// an averaging energy detector. Deterministic for a given scenario.
[[nodiscard]] BerEstimate simulate_ber(const DetectorScenario& scenario,
                                       const ChannelGains& gains, const SystemParams& params);

struct LemmaComparison {
  double lemma_ber = 0.0;
  BerEstimate monte_carlo;
  double ratio = 0.0;  ///< monte_carlo.p_hat / lemma_ber
  int samples_per_bit = 0;
};

[[nodiscard]] LemmaComparison compare_with_lemma(const DetectorScenario& scenario,
                                                 const ChannelGains& gains,
                                                 const SystemParams& params);

[[nodiscard]] std::string to_string(Link direction);
[[nodiscard]] std::string to_string(SignalModel model);

}  // namespace wpcn

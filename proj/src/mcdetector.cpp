#include "wpcn/mcdetector.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace wpcn {

namespace {

constexpr std::uint64_t kBitsPerBlock = 4096;

struct LinkAmplitudes {
  double direct;     // sqrt(h_E,receiver)
  double reflected;  // mu * sqrt(h_E,reflector) * sqrt(h_inter)
};

LinkAmplitudes amplitudes(Link direction, const ChannelGains& g, const SystemParams& p) {
  if (direction == Link::one_to_two) {
    return {std::sqrt(g.h_e2), p.mu1 * std::sqrt(g.h_e1) * std::sqrt(g.h_12)};
  }
  return {std::sqrt(g.h_e1), p.mu2 * std::sqrt(g.h_e2) * std::sqrt(g.h_21)};
}

/// Independent stream per block so blocks can run in any order.
std::mt19937_64 block_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(block),
                    std::uint32_t(block >> 32)};
  return std::mt19937_64(seq);
}

struct BitSample {
  double energy;
  bool bit;
};

void simulate_block(std::uint64_t block, std::uint64_t first, std::uint64_t count,
                    const DetectorScenario& sc, const LinkAmplitudes& amp, int samples,
                    const SystemParams& p, std::vector<BitSample>& out) {
  auto rng = block_stream(sc.seed, block);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double split = std::sqrt(1.0 - p.beta);
  const double carrier = std::sqrt(p.p0);
  const double antenna_sd = std::sqrt(p.sigma0_sq / 2.0);
  const double circuit_sd = std::sqrt(p.sigmas_sq / 2.0);
  using cd = std::complex<double>;

  for (std::uint64_t i = 0; i < count; ++i) {
    const bool bit = coin(rng);
    const double phi = phase(rng);
    const cd channel = carrier * (amp.direct + (bit ? amp.reflected : 0.0) * std::polar(1.0, phi));
    double energy = 0.0;
    for (int k = 0; k < samples; ++k) {
      cd x;
      if (sc.signal_model == SignalModel::gaussian_energy_signal) {
        const double re = normal(rng);
        const double im = normal(rng);
        x = cd(re, im) * std::numbers::sqrt2 * 0.5;
      } else {
        x = std::polar(1.0, phase(rng));
      }
      const double n0_re = normal(rng);
      const double n0_im = normal(rng);
      const double ns_re = normal(rng);
      const double ns_im = normal(rng);
      const cd n0(antenna_sd * n0_re, antenna_sd * n0_im);
      const cd ns(circuit_sd * ns_re, circuit_sd * ns_im);
      const cd y = split * (channel * x + n0) + ns;
      energy += std::norm(y);
    }
    out[first + i] = {energy / samples, bit};
  }
}

}  // namespace

double hypothesis_mean_energy(Link direction, int bit, const ChannelGains& gains,
                              const SystemParams& params) {
  const auto amp = amplitudes(direction, gains, params);
  const double signal =
      params.p0 * (amp.direct * amp.direct + (bit ? amp.reflected * amp.reflected : 0.0));
  return (1.0 - params.beta) * (signal + params.sigma0_sq) + params.sigmas_sq;
}

double detector_threshold(Link direction, const ChannelGains& gains, const SystemParams& params) {
  return 0.5 * (hypothesis_mean_energy(direction, 0, gains, params) +
                hypothesis_mean_energy(direction, 1, gains, params));
}

int integral_samples_per_bit(const SystemParams& params) {
  const double n = params.samples_per_bit();
  const double rounded = std::round(n);
  if (!(rounded >= 1.0) || std::abs(n - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument("samples per bit s_rate/rb must be a whole number >= 1");
  }
  return int(rounded);
}

BerEstimate simulate_ber(const DetectorScenario& sc, const ChannelGains& gains,
                         const SystemParams& params) {
  require_valid(params, gains);
  if (sc.n_bits < 1) throw std::invalid_argument("simulate_ber: n_bits must be >= 1");
  const int samples = integral_samples_per_bit(params);
  const auto amp = amplitudes(sc.direction, gains, params);

  std::vector<BitSample> bits(sc.n_bits);
  const std::uint64_t blocks = (sc.n_bits + kBitsPerBlock - 1) / kBitsPerBlock;
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           unsigned(blocks)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) {
          const std::uint64_t first = b * kBitsPerBlock;
          const std::uint64_t count = std::min(kBitsPerBlock, sc.n_bits - first);
          simulate_block(b, first, count, sc, amp, samples, params, bits);
        }
      });
    }
  }

  BerEstimate est;
  est.n_bits = sc.n_bits;
  est.threshold = detector_threshold(sc.direction, gains, params);
  std::uint64_t errors = 0;
  for (const auto& s : bits) errors += (s.energy > est.threshold) != s.bit;
  const double n = double(sc.n_bits);
  est.p_hat = double(errors) / n;
  est.ci_halfwidth = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);

  // Sweep every cut between sorted energies; "1" is decided above the cut.
  std::sort(bits.begin(), bits.end(),
            [](const BitSample& a, const BitSample& b) { return a.energy < b.energy; });
  std::int64_t current = 0;
  for (const auto& s : bits) current += !s.bit;
  std::int64_t best = current;
  double best_cut = bits.front().energy - std::abs(bits.front().energy);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    current += bits[i].bit ? 1 : -1;
    if (current < best) {
      best = current;
      best_cut = i + 1 < bits.size() ? 0.5 * (bits[i].energy + bits[i + 1].energy)
                                     : bits[i].energy;
    }
  }
  est.best_threshold = best_cut;
  est.best_threshold_ber = double(best) / n;
  return est;
}

LemmaComparison compare_with_lemma(const DetectorScenario& sc, const ChannelGains& gains,
                                   const SystemParams& params) {
  LemmaComparison out;
  out.samples_per_bit = integral_samples_per_bit(params);
  out.lemma_ber = ber_backscatter(sc.direction, gains, params);
  out.monte_carlo = simulate_ber(sc, gains, params);
  out.ratio = out.lemma_ber > 0.0 ? out.monte_carlo.p_hat / out.lemma_ber
                                  : std::numeric_limits<double>::infinity();
  return out;
}

std::string to_string(Link direction) {
  return direction == Link::one_to_two ? "1->2" : "2->1";
}

std::string to_string(SignalModel model) {
  return model == SignalModel::gaussian_energy_signal ? "gaussian_energy_signal"
                                                      : "unit_modulus_random_phase";
}

}  // namespace wpcn

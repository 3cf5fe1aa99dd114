#include "wpcn/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace wpcn {

namespace {

void require_feasible(const TimeAllocation& t, const char* where) {
  const auto issues = allocation_violations(t);
  if (issues.empty()) return;
  std::string msg = std::string(where) + ": infeasible allocation:";
  for (const auto& s : issues) msg += " " + s + ";";
  throw std::domain_error(msg);
}

// 0 * log2(0) := 0.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

std::pair<double, double> harvest_wet(double t1, const ChannelGains& gains,
                                      const SystemParams& params) {
  if (!(t1 >= 0.0)) throw std::domain_error("harvest_wet: t1 must be >= 0");
  const double scale = params.p0 * params.eta * t1;
  return {scale * gains.h_e1, scale * gains.h_e2};
}

std::pair<double, double> harvest_backscatter(double t21, double t22,
                                              const ChannelGains& gains,
                                              const SystemParams& params,
                                              const HarvestPolicy& policy) {
  if (!(t21 >= 0.0) || !(t22 >= 0.0)) {
    throw std::domain_error("harvest_backscatter: durations must be >= 0");
  }
  const double eta = params.eta;
  const double p0 = params.p0;

  // WD2 listens while WD1 reflects, and vice versa.
  auto receiving = [&](double h_direct, double h_reflector, double h_inter, double mu,
                       double duration) {
    const double cross =
        policy.include_cross_term ? mu * std::sqrt(h_reflector * h_direct * h_inter) : 0.0;
    return eta * params.beta * duration * p0 *
           (h_direct + cross + 0.5 * mu * mu * h_reflector * h_inter);
  };
  auto own_slot = [&](double h_e, double mu, double duration) {
    switch (policy.own_slot_mode) {
      case OwnSlotMode::none:
        return 0.0;
      case OwnSlotMode::full:
        return eta * p0 * h_e * duration;
      case OwnSlotMode::bit_averaged:
        return eta * p0 * h_e * duration * (1.0 - 0.5 * mu * mu);
    }
    return 0.0;
  };

  const double e2 = receiving(gains.h_e2, gains.h_e1, gains.h_12, params.mu1, t21) +
                    own_slot(gains.h_e2, params.mu2, t22);
  const double e1 = receiving(gains.h_e1, gains.h_e2, gains.h_21, params.mu2, t22) +
                    own_slot(gains.h_e1, params.mu1, t21);
  return {e1, e2};
}

double ber_erfc_argument(Link direction, const ChannelGains& gains, const SystemParams& params) {
  const double split = 1.0 - params.beta;
  const double scale = split * params.p0 * std::sqrt(params.samples_per_bit()) /
                       (4.0 * split * params.sigma0_sq + 4.0 * params.sigmas_sq);
  const double reflected = direction == Link::one_to_two
                               ? params.mu1 * params.mu1 * gains.h_e1 * gains.h_12
                               : params.mu2 * params.mu2 * gains.h_e2 * gains.h_21;
  return scale * reflected;
}

double ber_backscatter(Link direction, const ChannelGains& gains, const SystemParams& params) {
  const double pe = 0.5 * std::erfc(ber_erfc_argument(direction, gains, params));
  return std::clamp(pe, 0.0, 0.5);
}

double bsc_capacity(double pe) {
  if (!(pe >= 0.0 && pe <= 0.5)) {
    throw std::domain_error("bsc_capacity: crossover probability must lie in [0, 0.5]");
  }
  const double c = 1.0 + xlog2x(1.0 - pe) + xlog2x(pe);
  return std::clamp(c, 0.0, 1.0);
}

LinkQuality link_quality(const ChannelGains& gains, const SystemParams& params) {
  LinkQuality q;
  q.pe2 = ber_backscatter(Link::one_to_two, gains, params);
  q.pe1 = ber_backscatter(Link::two_to_one, gains, params);
  q.c2 = bsc_capacity(q.pe2);
  q.c1 = bsc_capacity(q.pe1);
  return q;
}

std::pair<double, double> exchange_rates(double t21, double t22, double c1, double c2,
                                         const SystemParams& params) {
  return {params.rb * t21 * c2, params.rb * t22 * c1};
}

std::pair<double, double> transmit_powers(const EnergyLedger& ledger, double t3) {
  const double e1 = ledger.total1();
  const double e2 = ledger.total2();
  if (t3 > 0.0) return {e1 / t3, e2 / t3};
  if (e1 == 0.0 && e2 == 0.0) return {0.0, 0.0};
  throw std::domain_error("transmit_powers: positive energy with zero transmission time");
}

double perspective_rate(double t, double snr_energy, double bandwidth) {
  if (!(t > 0.0) || !(snr_energy > 0.0)) return 0.0;
  return t * bandwidth * std::log1p(snr_energy / t) / std::numbers::ln2;
}

double alamouti_rate(double t3, double p1, double p2, const ChannelGains& gains,
                     const SystemParams& params) {
  const double snr = (p1 * gains.h_1a + p2 * gains.h_2a) / params.sigma0_sq;
  if (!(t3 > 0.0) || !(snr > 0.0)) return 0.0;
  return 0.5 * t3 * params.bandwidth * std::log1p(snr) / std::numbers::ln2;
}

RateBreakdown overall_rates(const TimeAllocation& t, const ChannelGains& gains,
                            const SystemParams& params, const HarvestPolicy& policy) {
  require_feasible(t, "overall_rates");
  RateBreakdown out;
  const auto [e1_wet, e2_wet] = harvest_wet(t.t1, gains, params);
  const auto [e1_bs, e2_bs] = harvest_backscatter(t.t21, t.t22, gains, params, policy);
  out.ledger = {e1_wet, e2_wet, e1_bs, e2_bs};

  const LinkQuality q = link_quality(gains, params);
  out.link = q;
  std::tie(out.r1_ex, out.r2_ex) = exchange_rates(t.t21, t.t22, q.c1, q.c2, params);

  // No joint-transmission slot means nothing is sent; the energy stays unused.
  const double t3 = t.t3();
  if (t3 > 0.0) std::tie(out.p1, out.p2) = transmit_powers(out.ledger, t3);
  out.r3 = alamouti_rate(t3, out.p1, out.p2, gains, params);
  out.r1 = std::min(out.r1_ex, out.r3);
  out.r2 = std::min(out.r2_ex, out.r3);
  return out;
}

RateBreakdown benchmark_rates(const TimeAllocation& t, double e_ex1, double e_ex2,
                              const ChannelGains& gains, const SystemParams& params) {
  require_feasible(t, "benchmark_rates");
  RateBreakdown out;
  const auto [e1_wet, e2_wet] = harvest_wet(t.t1, gains, params);
  if (!(e_ex1 >= 0.0 && e_ex1 <= e1_wet) || !(e_ex2 >= 0.0 && e_ex2 <= e2_wet)) {
    throw std::domain_error(
        "benchmark_rates: exchange energy must lie in [0, stage-1 harvested energy]");
  }
  out.ledger = {e1_wet, e2_wet, 0.0, 0.0};

  const double w = params.bandwidth;
  out.r1_ex = perspective_rate(t.t21, e_ex1 * gains.h_12 / params.sigma0_sq, w);
  out.r2_ex = perspective_rate(t.t22, e_ex2 * gains.h_21 / params.sigma0_sq, w);

  const double t3 = t.t3();
  const EnergyLedger residual{e1_wet - e_ex1, e2_wet - e_ex2, 0.0, 0.0};
  if (t3 > 0.0) std::tie(out.p1, out.p2) = transmit_powers(residual, t3);
  out.r3 = alamouti_rate(t3, out.p1, out.p2, gains, params);
  out.r1 = std::min(out.r1_ex, out.r3);
  out.r2 = std::min(out.r2_ex, out.r3);
  return out;
}

}  // namespace wpcn

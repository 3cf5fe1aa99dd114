#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "scalar_search.hpp"
#include "solver_common.hpp"
#include "wpcn/solver.hpp"

namespace wpcn {

namespace {

// exp(x) for x above this is treated as unreachable exchange energy.
constexpr double kMaxExponent = 600.0;

struct BaselineTerms {
  double budget;
  double w;
  double harvest1;  // joules per unit t1, WD1
  double harvest2;
  double joint1;    // SNR-energy per joule at the AP, WD1
  double joint2;
  double inter12;   // SNR-energy per joule on the exchange link
  double inter21;
};

BaselineTerms baseline_terms(const ChannelGains& g, const SystemParams& p) {
  const auto [a1, a2] = harvest_wet(1.0, g, p);
  return {1.0 - p.t0,           p.bandwidth,          a1, a2, g.h_1a / p.sigma0_sq,
          g.h_2a / p.sigma0_sq, g.h_12 / p.sigma0_sq, g.h_21 / p.sigma0_sq};
}

/// Smallest energy that carries z bits over an active link of duration t:
/// t * (2^(z / (W t)) - 1) / snr_per_joule.
double exchange_energy(double z, double t, double snr_per_joule, double w) {
  if (z <= 0.0) return 0.0;
  if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
  const double exponent = z * std::numbers::ln2 / (w * t);
  if (exponent > kMaxExponent) return std::numeric_limits<double>::infinity();
  return t * std::expm1(exponent) / snr_per_joule;
}

double joint_rate(double t3, double snr_energy, double bandwidth) {
  return 0.5 * perspective_rate(t3, snr_energy, bandwidth);
}

struct Inner {
  double slack;
  double t1;
  double e1;
  double e2;
};

/// For fixed exchange durations, the best split of the rest between charging
/// and joint transmission. Infeasible pairs get a penalty that decreases
/// linearly with the energy shortfall so the outer searches stay unimodal.
Inner best_split(double z, double t21, double t22, const BaselineTerms& b, double tolerance) {
  const double e1 = exchange_energy(z, t21, b.inter12, b.w);
  const double e2 = exchange_energy(z, t22, b.inter21, b.w);
  const double rest = b.budget - t21 - t22;
  const double min_t1 = std::max(e1 / b.harvest1, e2 / b.harvest2);
  if (!(min_t1 < rest)) {
    const double shortfall = std::isfinite(min_t1) ? min_t1 - rest : 1e300;
    return {-z - b.w * std::min(shortfall, 1e300 / b.w), rest, e1, e2};
  }
  auto rate = [&](double t1) {
    const double k = (b.harvest1 * t1 - e1) * b.joint1 + (b.harvest2 * t1 - e2) * b.joint2;
    return joint_rate(rest - t1, k, b.w);
  };
  const auto best = detail::golden_max(rate, min_t1, rest, tolerance);
  return {best.value - z, best.x, e1, e2};
}

}  // namespace

FeasibilityProbe benchmark_feasibility(double z, const ChannelGains& gains,
                                       const SystemParams& params, const SolverConfig& cfg) {
  const BaselineTerms b = baseline_terms(gains, params);
  const double tol = cfg.inner_tolerance;

  // Durations below these make the exchange energy overflow.
  const double floor21 = z > 0.0 ? z * std::numbers::ln2 / (b.w * kMaxExponent) : 0.0;
  const double floor22 = floor21;

  auto over_t22 = [&](double t21) {
    return detail::golden_max(
        [&](double t22) { return best_split(z, t21, t22, b, tol).slack; },
        std::min(floor22, b.budget - t21), b.budget - t21, tol);
  };
  const auto outer =
      detail::golden_max([&](double t21) { return over_t22(t21).value; },
                         std::min(floor21, b.budget), b.budget, tol);
  const double t21 = outer.x;
  const double t22 = over_t22(t21).x;
  const Inner inner = best_split(z, t21, t22, b, tol);

  FeasibilityProbe out;
  out.slack = inner.slack;
  const double t1 = std::clamp(inner.t1, 0.0, b.budget - t21 - t22);
  TimeAllocation t = TimeAllocation::with_symmetric_joint(params.t0, t1, t21, t22,
                                                          b.budget - t21 - t22 - t1);
  detail::close_budget(t);
  out.allocation = t;
  const auto [wet1, wet2] = harvest_wet(t.t1, gains, params);
  out.exchange_energies = std::make_pair(std::clamp(inner.e1, 0.0, wet1),
                                         std::clamp(inner.e2, 0.0, wet2));
  return out;
}

Solution maximize_benchmark(const ChannelGains& gains, const SystemParams& params,
                            const SolverConfig& cfg) {
  require_valid(params, gains);
  if (const auto issues = validate(cfg); !issues.empty()) {
    throw std::invalid_argument("invalid solver configuration: " + issues.front());
  }
  const BaselineTerms b = baseline_terms(gains, params);

  // Ceiling: harvest-then-transmit with no exchange, and each exchange link
  // given the whole block and the whole harvest of that block.
  const double relaxed =
      detail::golden_max(
          [&](double t3) {
            const double k = (b.harvest1 * b.joint1 + b.harvest2 * b.joint2) * (b.budget - t3);
            return joint_rate(t3, k, b.w);
          },
          0.0, b.budget, cfg.inner_tolerance)
          .value;
  const double link1 = perspective_rate(b.budget, b.harvest1 * b.budget * b.inter12, b.w);
  const double link2 = perspective_rate(b.budget, b.harvest2 * b.budget * b.inter21, b.w);
  const double z_upper =
      std::min({relaxed, link1, link2}) * (1.0 + 1e-9) + cfg.z_tolerance;

  const auto run = detail::bisect_common_rate(
      [&](double z) { return benchmark_feasibility(z, gains, params, cfg); }, z_upper, cfg);

  Solution s;
  s.allocation = run.certificate.allocation;
  const auto energies = run.certificate.exchange_energies.value_or(std::make_pair(0.0, 0.0));
  s.exchange_energies = energies;
  s.breakdown = benchmark_rates(s.allocation, energies.first, energies.second, gains, params);
  s.common_throughput = s.breakdown.common();
  s.diagnostics.iterations = run.iterations;
  s.diagnostics.converged = run.converged;
  s.diagnostics.upper_bound = z_upper;
  s.diagnostics.active_constraints = detail::active_constraints(
      s.breakdown, detail::active_tolerance(cfg, s.common_throughput));
  if (!run.converged) throw SolverError("maximize_benchmark: bisection did not converge", s);
  return s;
}

Solution benchmark_grid_oracle(const ChannelGains& gains, const SystemParams& params,
                               double time_resolution, int energy_levels) {
  if (!(time_resolution > 0.0 && time_resolution <= 0.25)) {
    throw std::invalid_argument("benchmark_grid_oracle: resolution must lie in (0, 0.25]");
  }
  if (energy_levels < 2) {
    throw std::invalid_argument("benchmark_grid_oracle: need at least two energy levels");
  }
  require_valid(params, gains);
  const double budget = 1.0 - params.t0;
  const int cells = std::max(1, int(std::lround(budget / time_resolution)));
  const double step = budget / cells;

  Solution best;
  best.common_throughput = -1.0;
  for (int i1 = 0; i1 <= cells; ++i1) {
    for (int i21 = 0; i21 <= cells - i1; ++i21) {
      for (int i22 = 0; i22 <= cells - i1 - i21; ++i22) {
        const int i3 = cells - i1 - i21 - i22;
        const auto t = TimeAllocation::with_symmetric_joint(params.t0, i1 * step, i21 * step,
                                                            i22 * step, i3 * step);
        const auto [wet1, wet2] = harvest_wet(t.t1, gains, params);
        for (int l1 = 0; l1 < energy_levels; ++l1) {
          for (int l2 = 0; l2 < energy_levels; ++l2) {
            const double e1 = wet1 * (double(l1) / (energy_levels - 1));
            const double e2 = wet2 * (double(l2) / (energy_levels - 1));
            RateBreakdown r = benchmark_rates(t, e1, e2, gains, params);
            if (r.common() > best.common_throughput) {
              best.allocation = t;
              best.exchange_energies = std::make_pair(e1, e2);
              best.breakdown = r;
              best.common_throughput = r.common();
            }
          }
        }
      }
    }
  }
  best.diagnostics.converged = true;
  std::ostringstream note;
  note << "baseline grid oracle, " << cells << " cells, " << energy_levels
       << " energy levels";
  best.diagnostics.note = note.str();
  return best;
}

}  // namespace wpcn

#include "wpcn/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "scalar_search.hpp"
#include "solver_common.hpp"

namespace wpcn {

namespace {

/// Receiver SNR-energy (h_1A E1 + h_2A E2) / sigma0^2 accumulated per unit
/// duration of each stage. Harvested energy is linear in every duration.
struct JointCoefficients {
  double per_t1 = 0.0;
  double per_t21 = 0.0;
  double per_t22 = 0.0;
};

JointCoefficients joint_coefficients(const ChannelGains& g, const SystemParams& p,
                                     const HarvestPolicy& policy) {
  auto snr_energy = [&](std::pair<double, double> e) {
    return (e.first * g.h_1a + e.second * g.h_2a) / p.sigma0_sq;
  };
  return {snr_energy(harvest_wet(1.0, g, p)),
          snr_energy(harvest_backscatter(1.0, 0.0, g, p, policy)),
          snr_energy(harvest_backscatter(0.0, 1.0, g, p, policy))};
}

double joint_rate(double t3, double snr_energy, double bandwidth) {
  return 0.5 * perspective_rate(t3, snr_energy, bandwidth);
}

void check_inputs(const ChannelGains& gains, const SystemParams& params,
                  const SolverConfig& cfg) {
  require_valid(params, gains);
  const auto issues = validate(cfg);
  if (issues.empty()) return;
  std::string msg = "invalid solver configuration:";
  for (const auto& s : issues) msg += "\n  " + s;
  throw std::invalid_argument(msg);
}

Solution finish(const FeasibilityProbe& cert, const ChannelGains& gains,
                const SystemParams& params, const HarvestPolicy& policy,
                const SolverConfig& cfg, const detail::BisectionResult& run, double z_upper) {
  Solution s;
  s.allocation = cert.allocation;
  s.breakdown = overall_rates(s.allocation, gains, params, policy);
  s.common_throughput = s.breakdown.common();
  s.diagnostics.iterations = run.iterations;
  s.diagnostics.converged = run.converged;
  s.diagnostics.upper_bound = z_upper;
  s.diagnostics.active_constraints = detail::active_constraints(
      s.breakdown, detail::active_tolerance(cfg, s.common_throughput));
  return s;
}

}  // namespace

std::vector<std::string> validate(const SolverConfig& cfg) {
  std::vector<std::string> out;
  if (!(cfg.z_tolerance > 0.0)) out.emplace_back("z_tolerance must be > 0");
  if (!(cfg.inner_tolerance > 0.0)) out.emplace_back("inner_tolerance must be > 0");
  if (cfg.max_iterations < 1) out.emplace_back("max_iterations must be >= 1");
  if (!(cfg.grid_resolution > 0.0 && cfg.grid_resolution <= 0.25)) {
    out.emplace_back("grid_resolution must lie in (0, 0.25]");
  }
  return out;
}

FeasibilityProbe backscatter_feasibility(double z, const ChannelGains& gains,
                                         const SystemParams& params,
                                         const HarvestPolicy& policy, const SolverConfig& cfg) {
  FeasibilityProbe out;
  const double budget = 1.0 - params.t0;
  const LinkQuality q = link_quality(gains, params);
  if (z > 0.0 && (q.c1 <= 0.0 || q.c2 <= 0.0)) {
    out.slack = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double min_t21 = z > 0.0 ? z / (params.rb * q.c2) : 0.0;
  const double min_t22 = z > 0.0 ? z / (params.rb * q.c1) : 0.0;
  const double rem = budget - min_t21 - min_t22;
  if (rem < 0.0) {
    out.slack = -z + params.rb * rem;
    return out;
  }

  const JointCoefficients k = joint_coefficients(gains, params, policy);
  const double base = k.per_t21 * min_t21 + k.per_t22 * min_t22;
  const double best_k = std::max({k.per_t1, k.per_t21, k.per_t22});
  const double w = params.bandwidth;

  // Every free unit of time goes to the stage with the largest coefficient.
  const auto best = detail::golden_max(
      [&](double t3) { return joint_rate(t3, base + best_k * (rem - t3), w); }, 0.0, rem,
      cfg.inner_tolerance * std::max(rem, 1e-300));

  const double free_time = rem - best.x;
  const auto ties = [&](double c) { return c >= best_k * (1.0 - 1e-12); };
  const int winners = int(ties(k.per_t1)) + int(ties(k.per_t21)) + int(ties(k.per_t22));
  const double share = free_time / winners;

  TimeAllocation t = TimeAllocation::with_symmetric_joint(
      params.t0, ties(k.per_t1) ? share : 0.0, min_t21 + (ties(k.per_t21) ? share : 0.0),
      min_t22 + (ties(k.per_t22) ? share : 0.0), best.x);
  detail::close_budget(t);
  out.allocation = t;
  out.slack = best.value - z;
  return out;
}

Solution maximize_common_throughput(const ChannelGains& gains, const SystemParams& params,
                                    const HarvestPolicy& policy, const SolverConfig& cfg) {
  check_inputs(gains, params, cfg);
  const double budget = 1.0 - params.t0;
  const LinkQuality q = link_quality(gains, params);

  if (q.c1 <= 0.0 || q.c2 <= 0.0) {
    Solution s;
    s.allocation = TimeAllocation::with_symmetric_joint(params.t0, budget, 0.0, 0.0, 0.0);
    s.breakdown = overall_rates(s.allocation, gains, params, policy);
    s.common_throughput = 0.0;
    s.diagnostics.converged = true;
    s.diagnostics.note = "exchange impossible: zero backscatter capacity";
    return s;
  }

  // Ceiling: exchange-rate limits and the joint rate with no exchange constraint.
  const JointCoefficients k = joint_coefficients(gains, params, policy);
  const double best_k = std::max({k.per_t1, k.per_t21, k.per_t22});
  const double relaxed =
      detail::golden_max(
          [&](double t3) { return joint_rate(t3, best_k * (budget - t3), params.bandwidth); },
          0.0, budget, cfg.inner_tolerance)
          .value;
  const double z_upper =
      std::min({params.rb * q.c2 * budget, params.rb * q.c1 * budget,
                relaxed * (1.0 + 1e-9) + cfg.z_tolerance});

  const auto run = detail::bisect_common_rate(
      [&](double z) { return backscatter_feasibility(z, gains, params, policy, cfg); }, z_upper,
      cfg);
  Solution s = finish(run.certificate, gains, params, policy, cfg, run, z_upper);
  if (!run.converged) {
    throw SolverError("maximize_common_throughput: bisection did not converge", s);
  }
  return s;
}

Solution grid_oracle(const ChannelGains& gains, const SystemParams& params,
                     const HarvestPolicy& policy, double resolution) {
  if (!(resolution > 0.0 && resolution <= 0.25)) {
    throw std::invalid_argument("grid_oracle: resolution must lie in (0, 0.25]");
  }
  require_valid(params, gains);
  const double budget = 1.0 - params.t0;
  const int cells = std::max(1, int(std::lround(budget / resolution)));
  const double step = budget / cells;

  Solution best;
  best.common_throughput = -1.0;
  // Ascending (t1, t21, t22) is ascending lexicographic order of the
  // allocation; strict improvement keeps the smallest among ties.
  for (int i1 = 0; i1 <= cells; ++i1) {
    for (int i21 = 0; i21 <= cells - i1; ++i21) {
      for (int i22 = 0; i22 <= cells - i1 - i21; ++i22) {
        const int i3 = cells - i1 - i21 - i22;
        const auto t = TimeAllocation::with_symmetric_joint(params.t0, i1 * step, i21 * step,
                                                            i22 * step, i3 * step);
        RateBreakdown b = overall_rates(t, gains, params, policy);
        if (b.common() > best.common_throughput) {
          best.allocation = t;
          best.breakdown = b;
          best.common_throughput = b.common();
        }
      }
    }
  }
  best.diagnostics.converged = true;
  best.diagnostics.active_constraints =
      detail::active_constraints(best.breakdown, 1e-9 * std::max(1.0, best.common_throughput));
  std::ostringstream note;
  note << "grid oracle, " << cells << " cells per unit budget";
  best.diagnostics.note = note.str();
  return best;
}

Solution refine_locally(const TimeAllocation& start, double radius, const ChannelGains& gains,
                        const SystemParams& params, const HarvestPolicy& policy,
                        const SolverConfig& cfg) {
  check_inputs(gains, params, cfg);
  const double budget = 1.0 - params.t0;
  const LinkQuality q = link_quality(gains, params);

  using Point = std::array<double, 4>;  // t1, t21, t22, t3
  const Point centre{start.t1, start.t21, start.t22, start.t3()};
  Point box_lo{};
  Point box_hi{};
  for (std::size_t i = 0; i < 4; ++i) {
    box_lo[i] = std::max(0.0, centre[i] - radius);
    box_hi[i] = std::min(budget, centre[i] + radius);
  }

  auto allocation = [&](const Point& x) {
    auto t = TimeAllocation::with_symmetric_joint(params.t0, x[0], x[1], x[2],
                                                  std::max(0.0, budget - x[0] - x[1] - x[2]));
    detail::close_budget(t);
    return t;
  };
  auto joint = [&](const Point& x) {
    return overall_rates(allocation(x), gains, params, policy).r3;
  };

  // Pairwise coordinate ascent: move mass between two stages at a time.
  auto probe = [&](double z) {
    FeasibilityProbe out;
    Point lo = box_lo;
    if (z > 0.0) {
      if (q.c1 <= 0.0 || q.c2 <= 0.0) {
        out.slack = -std::numeric_limits<double>::infinity();
        return out;
      }
      lo[1] = std::max(lo[1], z / (params.rb * q.c2));
      lo[2] = std::max(lo[2], z / (params.rb * q.c1));
    }
    double lo_sum = 0.0;
    double hi_sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (lo[i] > box_hi[i]) {
        out.slack = -z - 1.0;
        return out;
      }
      lo_sum += lo[i];
      hi_sum += box_hi[i];
    }
    if (lo_sum > budget || hi_sum < budget) {
      out.slack = -z - 1.0;
      return out;
    }
    Point x = lo;
    double missing = budget - lo_sum;
    for (std::size_t i = 0; i < 4 && missing > 0.0; ++i) {
      const double add = std::min(missing, box_hi[i] - x[i]);
      x[i] += add;
      missing -= add;
    }

    double value = joint(x);
    for (int sweep = 0; sweep < 1000; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
          const double d_lo = std::max(lo[i] - x[i], x[j] - box_hi[j]);
          const double d_hi = std::min(box_hi[i] - x[i], x[j] - lo[j]);
          if (!(d_hi > d_lo)) continue;
          auto moved = [&](double d) {
            Point y = x;
            y[i] += d;
            y[j] -= d;
            y[i] = std::clamp(y[i], lo[i], box_hi[i]);
            y[j] = std::clamp(y[j], lo[j], box_hi[j]);
            return y;
          };
          const auto best = detail::golden_max([&](double d) { return joint(moved(d)); }, d_lo,
                                               d_hi, cfg.inner_tolerance);
          if (best.value > value + 1e-14 * std::abs(value)) {
            x = moved(best.x);
            value = joint(x);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    out.allocation = allocation(x);
    out.slack = value - z;
    return out;
  };

  const double box_joint = probe(0.0).slack;
  const double z_upper =
      std::min({params.rb * q.c2 * budget, params.rb * q.c1 * budget,
                box_joint * (1.0 + 1e-9) + cfg.z_tolerance});
  const auto run = detail::bisect_common_rate(probe, z_upper, cfg);
  Solution s = finish(run.certificate, gains, params, policy, cfg, run, z_upper);
  s.diagnostics.note = "local refinement";
  if (!run.converged) throw SolverError("refine_locally: bisection did not converge", s);
  return s;
}

}  // namespace wpcn

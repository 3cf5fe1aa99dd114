#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpcn/model.hpp"
#include "wpcn/rates.hpp"

namespace wpcn {

struct SolverConfig {
  double z_tolerance = 1e-9;       ///< absolute bisection tolerance on Z, bits
  double inner_tolerance = 1e-12;  ///< width at which scalar searches stop
  int max_iterations = 200;        ///< bisection steps before giving up
  double grid_resolution = 0.005;  ///< step of the brute-force oracle
};

[[nodiscard]] std::vector<std::string> validate(const SolverConfig& cfg);

struct SolverDiagnostics {
  int iterations = 0;
  bool converged = false;
  double upper_bound = 0.0;  ///< initial bisection ceiling on Z
  /// Rate constraints binding at the returned point: exchange_1, exchange_2,
  /// joint_1, joint_2.
  std::vector<std::string> active_constraints;
  std::string note;
};

struct Solution {
  TimeAllocation allocation;
  /// Joules spent on the active exchange, baseline scheme only.
  std::optional<std::pair<double, double>> exchange_energies;
  double common_throughput = 0.0;  ///< min(breakdown.r1, breakdown.r2)
  RateBreakdown breakdown;
  SolverDiagnostics diagnostics;
};

/// Raised when bisection runs out of iterations. Carries the best certified
/// point found so far.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, Solution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  [[nodiscard]] const Solution& best() const { return best_; }

 private:
  Solution best_;
};

/// Outcome of the inner problem for a fixed target Z: the best achievable
/// joint-transmission slack r3 - Z once both exchange constraints hold, and
/// the allocation attaining it. Negative slack means Z is infeasible.
struct FeasibilityProbe {
  double slack = 0.0;
  TimeAllocation allocation;
  std::optional<std::pair<double, double>> exchange_energies;
};

/// Max-min throughput of the backscatter-assisted scheme.
///
/// Bisection on the common throughput Z. For fixed Z the exchange
/// constraints become lower bounds t21 >= Z / (R_b C2), t22 >= Z / (R_b C1)
/// and the remaining budget is spent to maximize the joint-transmission
/// rate. Because harvested energy is linear in every stage duration, that
/// inner problem collapses to a concave scalar search over t3.
///
/// Throws std::invalid_argument for invalid inputs and SolverError when
/// bisection exceeds cfg.max_iterations.
[[nodiscard]] Solution maximize_common_throughput(const ChannelGains& gains,
                                                  const SystemParams& params,
                                                  const HarvestPolicy& policy = {},
                                                  const SolverConfig& cfg = {});

[[nodiscard]] FeasibilityProbe backscatter_feasibility(double z, const ChannelGains& gains,
                                                       const SystemParams& params,
                                                       const HarvestPolicy& policy,
                                                       const SolverConfig& cfg);

/// Exhaustive search of (t1, t21, t22, t3) on the simplex of budget 1 - t0
/// with t31 = t32. Ties resolve to the lexicographically smallest allocation.
[[nodiscard]] Solution grid_oracle(const ChannelGains& gains, const SystemParams& params,
                                   const HarvestPolicy& policy, double resolution);

/// Re-solves the backscatter problem restricted to the box of half-width
/// `radius` around `start`, using pairwise coordinate ascent on the
/// black-box joint rate as the inner maximizer. Used to confirm solver
/// optima from an independent starting point.
[[nodiscard]] Solution refine_locally(const TimeAllocation& start, double radius,
                                      const ChannelGains& gains, const SystemParams& params,
                                      const HarvestPolicy& policy, const SolverConfig& cfg = {});

/// Max-min throughput of the no-backscatter baseline, jointly over the
/// four stage durations and the two exchange energies.
[[nodiscard]] Solution maximize_benchmark(const ChannelGains& gains, const SystemParams& params,
                                          const SolverConfig& cfg = {});

[[nodiscard]] FeasibilityProbe benchmark_feasibility(double z, const ChannelGains& gains,
                                                     const SystemParams& params,
                                                     const SolverConfig& cfg);

/// Exhaustive search of the baseline: stage durations on a simplex grid of
/// step `time_resolution`, exchange energies at `energy_levels` evenly
/// spaced fractions of the stage-1 harvest (including 0 and 1).
[[nodiscard]] Solution benchmark_grid_oracle(const ChannelGains& gains,
                                             const SystemParams& params,
                                             double time_resolution, int energy_levels);

}  // namespace wpcn

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wpcn/solver.hpp"

namespace wpcn::detail {

/// Constraints of the max-min problem within `tolerance` of the common rate.
inline std::vector<std::string> active_constraints(const RateBreakdown& b, double tolerance) {
  const double z = b.common();
  std::vector<std::string> out;
  if (b.r1_ex - z <= tolerance) out.emplace_back("exchange_1");
  if (b.r2_ex - z <= tolerance) out.emplace_back("exchange_2");
  if (b.r3 - z <= tolerance) {
    out.emplace_back("joint_1");
    out.emplace_back("joint_2");
  }
  return out;
}

inline double active_tolerance(const SolverConfig& cfg, double z) {
  return std::max(10.0 * cfg.z_tolerance, 1e-7 * z);
}

/// Pushes the rounding residual of the budget into the largest stage so the
/// allocation sums to one. The joint slots stay equal.
inline void close_budget(TimeAllocation& t) {
  const double residual = 1.0 - t.total();
  const double t3 = t.t3();
  if (t3 >= t.t1 && t3 >= t.t21 && t3 >= t.t22) {
    t.t31 += 0.5 * residual;
    t.t32 = t.t31;
    return;
  }
  double* parts[] = {&t.t1, &t.t21, &t.t22};
  **std::max_element(std::begin(parts), std::end(parts),
                     [](double* a, double* b) { return *a < *b; }) += residual;
}

struct BisectionResult {
  double z = 0.0;
  FeasibilityProbe certificate;
  int iterations = 0;
  bool converged = false;
};

/// Largest Z in [0, z_upper] whose probe has nonnegative slack, to within
/// cfg.z_tolerance. Z = 0 must be feasible.
template <class Probe>
BisectionResult bisect_common_rate(Probe&& probe, double z_upper, const SolverConfig& cfg) {
  BisectionResult out;
  out.certificate = probe(0.0);
  double lo = 0.0;
  double hi = z_upper;
  while (hi - lo > cfg.z_tolerance) {
    if (out.iterations >= cfg.max_iterations) {
      out.z = lo;
      return out;
    }
    ++out.iterations;
    const double mid = 0.5 * (lo + hi);
    FeasibilityProbe p = probe(mid);
    if (p.slack >= 0.0) {
      lo = mid;
      out.certificate = std::move(p);
    } else {
      hi = mid;
    }
  }
  out.z = lo;
  out.converged = true;
  return out;
}

}  // namespace wpcn::detail

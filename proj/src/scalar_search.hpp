#pragma once

#include <cmath>

namespace wpcn::detail {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Endpoints are compared at the end so boundary maxima are exact.
template <class F>
ScalarMax golden_max(F&& f, double lo, double hi, double tolerance, int max_steps = 300) {
  constexpr double kInvPhi = 0.6180339887498949;
  if (!(hi > lo)) return {lo, f(lo)};
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int step = 0; step < max_steps && (b - a) > tolerance; ++step) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  ScalarMax best = fc >= fd ? ScalarMax{c, fc} : ScalarMax{d, fd};
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best.value) best = {edge, fe};
  }
  return best;
}

}  // namespace wpcn::detail

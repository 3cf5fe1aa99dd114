#include "wpcn/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wpcn {

namespace {

void check_positive(std::vector<std::string>& out, const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and > 0 (got " << v << ")";
    out.push_back(os.str());
  }
}

void check_unit(std::vector<std::string>& out, const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0, 1] (got " << v << ")";
    out.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> allocation_violations(const TimeAllocation& t, double tolerance) {
  std::vector<std::string> out;
  const std::pair<const char*, double> parts[] = {{"t0", t.t0},   {"t1", t.t1},
                                                  {"t21", t.t21}, {"t22", t.t22},
                                                  {"t31", t.t31}, {"t32", t.t32}};
  for (const auto& [name, v] : parts) {
    if (!(v >= 0.0)) {
      std::ostringstream os;
      os << name << " must be >= 0 (got " << v << ")";
      out.push_back(os.str());
    }
  }
  const double total = t.total();
  if (!(std::abs(total - 1.0) <= tolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "time budget violated: stage durations sum to " << total << ", expected 1";
    out.push_back(os.str());
  }
  return out;
}

double path_loss_gain(double distance_m, const SystemParams& params) {
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path_loss_gain: distance must be > 0");
  }
  const double free_space =
      kSpeedOfLight / (4.0 * std::numbers::pi * distance_m * params.fd);
  return params.ga * std::pow(free_space, params.lambda_pl);
}

ChannelGains gains_from_topology(const Topology& topo, const SystemParams& params) {
  const double inter = path_loss_gain(topo.d_12, params);
  return {path_loss_gain(topo.d_e1, params), path_loss_gain(topo.d_e2, params),
          path_loss_gain(topo.d_1a, params), path_loss_gain(topo.d_2a, params),
          inter, inter};
}

ChannelGains reference_gains(const SystemParams& params) {
  const double inter = path_loss_gain(4.0, params);
  return {8.5e-5, 8.5e-5, 8.5e-6, 8.5e-6, inter, inter};
}

std::vector<std::string> validate(const SystemParams& p) {
  std::vector<std::string> out;
  check_positive(out, "p0", p.p0);
  if (!(p.eta > 0.0 && p.eta <= 1.0)) {
    std::ostringstream os;
    os << "eta must lie in (0, 1] (got " << p.eta << ")";
    out.push_back(os.str());
  }
  check_unit(out, "beta", p.beta);
  check_unit(out, "mu1", p.mu1);
  check_unit(out, "mu2", p.mu2);
  check_positive(out, "sigma0_sq", p.sigma0_sq);
  check_positive(out, "sigmas_sq", p.sigmas_sq);
  check_positive(out, "rb", p.rb);
  check_positive(out, "s_rate", p.s_rate);
  check_positive(out, "bandwidth", p.bandwidth);
  check_positive(out, "ga", p.ga);
  check_positive(out, "fd", p.fd);
  if (!(p.lambda_pl >= 0.0) || !std::isfinite(p.lambda_pl)) {
    out.push_back("lambda_pl must be finite and >= 0");
  }
  if (!(p.t0 >= 0.0 && p.t0 < 1.0)) {
    std::ostringstream os;
    os << "t0 must lie in [0, 1) (got " << p.t0 << ")";
    out.push_back(os.str());
  }
  if (p.rb > 0.0 && p.s_rate > 0.0 && !(p.samples_per_bit() >= 1.0)) {
    std::ostringstream os;
    os << "samples per bit s_rate/rb must be >= 1 (got " << p.samples_per_bit() << ")";
    out.push_back(os.str());
  }
  return out;
}

std::vector<std::string> validate(const Topology& topo) {
  std::vector<std::string> out;
  check_positive(out, "d_e1", topo.d_e1);
  check_positive(out, "d_e2", topo.d_e2);
  check_positive(out, "d_1a", topo.d_1a);
  check_positive(out, "d_2a", topo.d_2a);
  check_positive(out, "d_12", topo.d_12);
  return out;
}

std::vector<std::string> validate(const SystemParams& params, const ChannelGains& g) {
  auto out = validate(params);
  check_positive(out, "h_e1", g.h_e1);
  check_positive(out, "h_e2", g.h_e2);
  check_positive(out, "h_1a", g.h_1a);
  check_positive(out, "h_2a", g.h_2a);
  check_positive(out, "h_12", g.h_12);
  check_positive(out, "h_21", g.h_21);
  if (g.h_12 != g.h_21) {
    std::ostringstream os;
    os.precision(17);
    os << "reciprocity violated: h_12 (" << g.h_12 << ") != h_21 (" << g.h_21 << ")";
    out.push_back(os.str());
  }
  return out;
}

void require_valid(const SystemParams& params, const ChannelGains& gains) {
  const auto issues = validate(params, gains);
  if (issues.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& s : issues) msg += "\n  " + s;
  throw std::invalid_argument(msg);
}

}  // namespace wpcn

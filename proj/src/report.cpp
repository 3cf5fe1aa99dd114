#include "wpcn/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "json.hpp"

namespace wpcn {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Per-point seed from (base seed, point index).
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(index >> 32)};
  std::uint32_t words[2];
  seq.generate(std::begin(words), std::end(words));
  return (std::uint64_t(words[0]) << 32) | words[1];
}

nlohmann::json to_json(const Solution& s) {
  nlohmann::json j;
  const TimeAllocation& t = s.allocation;
  j["common_throughput"] = s.common_throughput;
  j["allocation"] = {{"t0", t.t0},   {"t1", t.t1},   {"t21", t.t21},
                     {"t22", t.t22}, {"t31", t.t31}, {"t32", t.t32}};
  if (s.exchange_energies) {
    j["exchange_energies"] = {s.exchange_energies->first, s.exchange_energies->second};
  }
  const RateBreakdown& b = s.breakdown;
  j["rates"] = {{"r1_ex", b.r1_ex}, {"r2_ex", b.r2_ex}, {"r3", b.r3},
                {"r1", b.r1},       {"r2", b.r2}};
  if (b.link) {
    j["link"] = {{"pe1", b.link->pe1}, {"pe2", b.link->pe2}, {"c1", b.link->c1},
                 {"c2", b.link->c2}};
  }
  j["powers"] = {b.p1, b.p2};
  j["ledger"] = {{"e1_wet", b.ledger.e1_wet},
                 {"e2_wet", b.ledger.e2_wet},
                 {"e1_bs", b.ledger.e1_bs},
                 {"e2_bs", b.ledger.e2_bs}};
  j["diagnostics"] = {{"iterations", s.diagnostics.iterations},
                      {"converged", s.diagnostics.converged},
                      {"upper_bound", s.diagnostics.upper_bound},
                      {"active_constraints", s.diagnostics.active_constraints},
                      {"note", s.diagnostics.note}};
  return j;
}

}  // namespace

std::vector<BerReportRow> run_ber_report(const Config& cfg) {
  struct Point {
    double d12;
    double h12;
  };
  std::vector<Point> points;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (cfg.ber.d12) {
    for (double d : *cfg.ber.d12) points.push_back({d, path_loss_gain(d, cfg.params)});
  } else if (cfg.ber.h12) {
    for (double h : *cfg.ber.h12) points.push_back({nan, h});
  } else {
    points.push_back({nan, cfg.gains.h_12});
  }

  std::vector<BerReportRow> rows;
  std::uint64_t index = 0;
  for (const auto& pt : points) {
    ChannelGains g = cfg.gains;
    g.h_12 = g.h_21 = pt.h12;
    const std::uint64_t seed = point_seed(cfg.ber.seed, index++);
    for (Link dir : cfg.ber.directions) {
      DetectorScenario sc{dir, cfg.ber.n_bits, seed, cfg.ber.signal_model};
      rows.push_back({dir, pt.d12, pt.h12, seed, compare_with_lemma(sc, g, cfg.params)});
    }
  }
  return rows;
}

void write_ber_csv(std::ostream& out, const Config& cfg, const std::vector<BerReportRow>& rows) {
  out << "# " << kBerCsvVersion << '\n';
  out << "# n_bits=" << cfg.ber.n_bits << " seed=" << cfg.ber.seed
      << " signal_model=" << to_string(cfg.ber.signal_model) << '\n';
  out << "# config:";
  for (const auto& kv : describe(cfg)) out << ' ' << kv;
  out << '\n';
  out << "direction,d12_m,h_12,samples_per_bit,lemma_ber,mc_ber,ci_halfwidth,ratio,"
         "threshold,best_threshold,best_threshold_ber,seed\n";
  for (const auto& r : rows) {
    const auto& c = r.comparison;
    out << to_string(r.direction) << ',' << fmt(r.d12) << ',' << fmt(r.h12) << ','
        << c.samples_per_bit << ',' << fmt(c.lemma_ber) << ',' << fmt(c.monte_carlo.p_hat) << ','
        << fmt(c.monte_carlo.ci_halfwidth) << ',' << fmt(c.ratio) << ','
        << fmt(c.monte_carlo.threshold) << ',' << fmt(c.monte_carlo.best_threshold) << ','
        << fmt(c.monte_carlo.best_threshold_ber) << ',' << r.seed << '\n';
  }
}

void print_solution(std::ostream& out, const std::string& title, const Solution& s) {
  const TimeAllocation& t = s.allocation;
  const RateBreakdown& b = s.breakdown;
  char line[256];
  out << "== " << title << " ==\n";
  std::snprintf(line, sizeof line, "common throughput Z = %.6f bits/block\n", s.common_throughput);
  out << line;
  std::snprintf(line, sizeof line,
                "allocation  t0=%.6f t1=%.6f t21=%.6f t22=%.6f t31=%.6f t32=%.6f\n", t.t0, t.t1,
                t.t21, t.t22, t.t31, t.t32);
  out << line;
  std::snprintf(line, sizeof line, "rates       r1_ex=%.3f r2_ex=%.3f r3=%.3f r1=%.3f r2=%.3f\n",
                b.r1_ex, b.r2_ex, b.r3, b.r1, b.r2);
  out << line;
  if (b.link) {
    std::snprintf(line, sizeof line, "link        pe1=%.6g pe2=%.6g c1=%.6f c2=%.6f\n",
                  b.link->pe1, b.link->pe2, b.link->c1, b.link->c2);
    out << line;
  }
  if (s.exchange_energies) {
    std::snprintf(line, sizeof line, "exchange    e_ex1=%.6g J e_ex2=%.6g J\n",
                  s.exchange_energies->first, s.exchange_energies->second);
    out << line;
  }
  std::snprintf(line, sizeof line,
                "ledger      E1=%.6g+%.6g J  E2=%.6g+%.6g J  P1=%.6g W  P2=%.6g W\n",
                b.ledger.e1_wet, b.ledger.e1_bs, b.ledger.e2_wet, b.ledger.e2_bs, b.p1, b.p2);
  out << line;
  out << "solver      iterations=" << s.diagnostics.iterations
      << " converged=" << (s.diagnostics.converged ? "yes" : "no") << " active=";
  for (std::size_t i = 0; i < s.diagnostics.active_constraints.size(); ++i) {
    out << (i ? "," : "") << s.diagnostics.active_constraints[i];
  }
  out << '\n';
  if (!s.diagnostics.note.empty()) out << "note        " << s.diagnostics.note << '\n';
}

std::string solution_json(const Config& cfg,
                          const std::vector<std::pair<std::string, Solution>>& solved) {
  nlohmann::json j;
  j["config"] = describe(cfg);
  for (const auto& [name, s] : solved) j["schemes"][name] = to_json(s);
  return j.dump(2);
}

}  // namespace wpcn

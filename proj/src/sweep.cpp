#include "wpcn/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

namespace wpcn {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<SchemeSpec> preset_schemes() {
  return {{Scheme::backscatter, 5e4}, {Scheme::backscatter, 1e5}, {Scheme::no_backscatter, 0.0}};
}

Config preset_base(double h_a2) {
  Config base;
  base.gains = reference_gains(base.params);
  base.gains.h_2a = h_a2;
  base.gain_source = GainSource::explicit_gains;
  return base;
}

SweepRow solve_point(const SweepSpec& spec, double abscissa, const SchemeSpec& scheme) {
  SweepRow row;
  row.abscissa = abscissa;
  row.scheme = scheme;
  try {
    const Config c = sweep_instance(spec, abscissa, scheme);
    if (scheme.scheme == Scheme::backscatter) {
      try {
        row.solution = maximize_common_throughput(c.gains, c.params, c.policy, c.solver);
      } catch (const SolverError& e) {
        row.solution = e.best();
        row.status = std::string("nonconverged: ") + e.what();
      }
      if (spec.grid_check) {
        row.grid_throughput =
            grid_oracle(c.gains, c.params, c.policy, c.solver.grid_resolution).common_throughput;
        row.has_grid = true;
      }
    } else {
      try {
        row.solution = maximize_benchmark(c.gains, c.params, c.solver);
      } catch (const SolverError& e) {
        row.solution = e.best();
        row.status = std::string("nonconverged: ") + e.what();
      }
      if (spec.grid_check) {
        row.grid_throughput = benchmark_grid_oracle(c.gains, c.params, 0.02, 5).common_throughput;
        row.has_grid = true;
      }
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    row.solution.common_throughput = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

SweepSpec fig4_preset() {
  SweepSpec spec;
  spec.kind = SweepKind::channel_disparity;
  for (int r = 1; r <= 10; ++r) spec.values.push_back(r);
  spec.schemes = preset_schemes();
  spec.base = preset_base(8.5e-6);
  spec.output_path = "fig4.csv";
  return spec;
}

SweepSpec fig5_preset() {
  SweepSpec spec;
  spec.kind = SweepKind::inter_user_distance;
  for (int i = 0; i <= 8; ++i) spec.values.push_back(1.0 + 0.5 * i);
  spec.schemes = preset_schemes();
  spec.base = preset_base(8.5e-6);
  spec.output_path = "fig5.csv";
  return spec;
}

SweepSpec sweep_from_config(const Config& cfg) {
  if (!cfg.sweep) throw ConfigError("configuration has no [sweep] section");
  const SweepSection& s = *cfg.sweep;
  SweepSpec spec;
  spec.kind = s.kind;
  spec.parameter = s.parameter;
  spec.values = s.values;
  spec.schemes = s.schemes;
  if (spec.schemes.empty()) spec.schemes = {{Scheme::backscatter, cfg.params.rb}};
  spec.base = cfg;
  spec.base.sweep.reset();
  spec.output_path = s.output.empty() ? "sweep.csv" : s.output;
  spec.seed = s.seed;
  spec.grid_check = s.grid_check;
  return spec;
}

std::vector<std::string> validate(const SweepSpec& spec) {
  std::vector<std::string> out;
  if (spec.values.empty()) out.emplace_back("sweep values must not be empty");
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    increasing &= spec.values[i] > spec.values[i - 1];
    decreasing &= spec.values[i] < spec.values[i - 1];
  }
  if (!increasing && !decreasing) out.emplace_back("sweep values must be strictly monotone");
  if (spec.schemes.empty()) out.emplace_back("at least one scheme is required");
  for (const auto& s : spec.schemes) {
    if (s.scheme == Scheme::backscatter && !(s.rb > 0.0)) {
      out.emplace_back("backscatter scheme needs rb > 0");
    }
  }
  if (spec.kind == SweepKind::custom && spec.parameter.find('.') == std::string::npos) {
    out.emplace_back("custom sweep needs parameter = section.key");
  }
  for (double v : spec.values) {
    if (spec.kind != SweepKind::custom && !(v > 0.0)) {
      out.emplace_back("sweep abscissae must be > 0");
      break;
    }
  }
  return out;
}

Config sweep_instance(const SweepSpec& spec, double abscissa, const SchemeSpec& scheme) {
  Config c = spec.base;
  if (scheme.scheme == Scheme::backscatter) c.params.rb = scheme.rb;
  switch (spec.kind) {
    case SweepKind::channel_disparity:
      c.gains.h_2a = c.gains.h_1a / abscissa;
      break;
    case SweepKind::inter_user_distance:
      c.gains.h_12 = path_loss_gain(abscissa, c.params);
      c.gains.h_21 = c.gains.h_12;
      break;
    case SweepKind::custom: {
      const auto dot = spec.parameter.find('.');
      apply_setting(c, spec.parameter.substr(0, dot), spec.parameter.substr(dot + 1),
                    fmt(abscissa));
      // Applied after the scheme's rate, so a swept system.rb wins.
      break;
    }
  }
  return c;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (const auto issues = validate(spec); !issues.empty()) {
    throw ConfigError("invalid sweep: " + join(issues, ';'));
  }
  std::vector<std::future<SweepRow>> pending;
  for (double x : spec.values) {
    for (const auto& scheme : spec.schemes) {
      pending.push_back(
          std::async(std::launch::async, [&spec, x, scheme] { return solve_point(spec, x, scheme); }));
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(pending.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "# " << kSweepCsvVersion << '\n';
  out << "# kind=" << to_string(spec.kind);
  if (spec.kind == SweepKind::custom) out << " parameter=" << spec.parameter;
  out << " seed=" << spec.seed << " grid_check=" << (spec.grid_check ? "true" : "false") << '\n';
  out << "# config: " << join(describe(spec.base), ' ') << '\n';
  out << "abscissa,scheme,rb,common_throughput,t0,t1,t21,t22,t3,e_ex1,e_ex2,r1,r2,r3,"
         "iterations,converged,active,status,grid_throughput,grid_gap\n";
  for (const auto& r : rows) {
    const Solution& s = r.solution;
    const bool backscatter = r.scheme.scheme == Scheme::backscatter;
    const auto energies = s.exchange_energies;
    out << fmt(r.abscissa) << ',' << to_string(r.scheme.scheme) << ','
        << (backscatter ? fmt(r.scheme.rb) : "") << ',' << fmt(s.common_throughput) << ','
        << fmt(s.allocation.t0) << ',' << fmt(s.allocation.t1) << ',' << fmt(s.allocation.t21)
        << ',' << fmt(s.allocation.t22) << ',' << fmt(s.allocation.t3()) << ','
        << (energies ? fmt(energies->first) : "") << ','
        << (energies ? fmt(energies->second) : "") << ',' << fmt(s.breakdown.r1) << ','
        << fmt(s.breakdown.r2) << ',' << fmt(s.breakdown.r3) << ','
        << s.diagnostics.iterations << ',' << (s.diagnostics.converged ? "true" : "false") << ','
        << join(s.diagnostics.active_constraints, '|') << ',' << csv_escape(r.status) << ','
        << (r.has_grid ? fmt(r.grid_throughput) : "") << ','
        << (r.has_grid ? fmt(s.common_throughput - r.grid_throughput) : "") << '\n';
  }
}

void write_sweep_gnuplot(std::ostream& out, const SweepSpec& spec,
                         const std::vector<SweepRow>& rows) {
  out << "# " << kSweepCsvVersion << " gnuplot companion, kind=" << to_string(spec.kind) << '\n';
  bool first = true;
  for (const auto& scheme : spec.schemes) {
    if (!first) out << "\n\n";
    first = false;
    out << "# scheme=" << to_string(scheme.scheme);
    if (scheme.scheme == Scheme::backscatter) out << " rb=" << fmt(scheme.rb);
    out << "\n# abscissa common_throughput\n";
    for (const auto& r : rows) {
      if (r.scheme.scheme != scheme.scheme || r.scheme.rb != scheme.rb) continue;
      out << fmt(r.abscissa) << ' ' << fmt(r.solution.common_throughput) << '\n';
    }
  }
}

}  // namespace wpcn

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpcn/config.hpp"
#include "wpcn/solver.hpp"

namespace wpcn {

/// One experiment: a family of instances indexed by an abscissa, solved for
/// each scheme.
struct SweepSpec {
  SweepKind kind = SweepKind::custom;
  /// Swept key for custom sweeps, written "section.key" (e.g. "system.p0").
  std::string parameter;
  std::vector<double> values;
  std::vector<SchemeSpec> schemes;
  Config base;
  std::string output_path;
  std::uint64_t seed = 1;
  bool grid_check = false;
};

/// User-to-AP channel disparity: h_E1 = h_E2 = 8.5e-5, h_1A = 8.5e-6,
/// h_2A = h_1A / r for r = 1..10, users 4 m apart.
[[nodiscard]] SweepSpec fig4_preset();

/// Inter-user distance: h_1A = h_2A = 8.5e-6, d_12 = 1.0, 1.5, ..., 5.0 m.
[[nodiscard]] SweepSpec fig5_preset();

/// Builds a spec from a config carrying a [sweep] section.
[[nodiscard]] SweepSpec sweep_from_config(const Config& cfg);

[[nodiscard]] std::vector<std::string> validate(const SweepSpec& spec);

/// Instance of `base` at one abscissa value.
[[nodiscard]] Config sweep_instance(const SweepSpec& spec, double abscissa, const SchemeSpec& s);

struct SweepRow {
  double abscissa = 0.0;
  SchemeSpec scheme;
  Solution solution;
  std::string status = "ok";  ///< "ok", "nonconverged: ..." or "error: ..."
  bool has_grid = false;
  double grid_throughput = 0.0;
};

/// Solves every (abscissa, scheme) pair. Points run concurrently; rows come
/// back in abscissa order, then scheme order. Per-point failures are recorded
/// in the row.
[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kSweepCsvVersion = "wpcn-sweep-csv v1";

/// CSV with a versioned comment header carrying the resolved configuration.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// gnuplot-friendly companion: one whitespace-separated block per scheme,
/// blocks separated by two blank lines.
void write_sweep_gnuplot(std::ostream& out, const SweepSpec& spec,
                         const std::vector<SweepRow>& rows);

}  // namespace wpcn

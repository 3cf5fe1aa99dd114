#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wpcn/config.hpp"
#include "wpcn/mcdetector.hpp"
#include "wpcn/solver.hpp"

namespace wpcn {

inline constexpr const char* kBerCsvVersion = "wpcn-ber-csv v1";

/// One evaluated point of the BER cross-check.
struct BerReportRow {
  Link direction = Link::one_to_two;
  double d12 = 0.0;  ///< NaN when the point was given as a gain
  double h12 = 0.0;
  std::uint64_t seed = 0;
  LemmaComparison comparison;
};

/// Closed-form BER against the Monte Carlo detector for every point of the
/// config's [ber] section. Without a point list, the config's own h_12 is
/// the single point. Each point draws from its own seed derived from
/// (ber.seed, point index).
[[nodiscard]] std::vector<BerReportRow> run_ber_report(const Config& cfg);

void write_ber_csv(std::ostream& out, const Config& cfg, const std::vector<BerReportRow>& rows);

/// Human-readable summary of a solved instance.
void print_solution(std::ostream& out, const std::string& title, const Solution& s);

/// JSON document of a solved instance (allocation, rates, ledger, diagnostics).
[[nodiscard]] std::string solution_json(const Config& cfg, const std::vector<std::pair<std::string, Solution>>& solved);

}  // namespace wpcn

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpcn/mcdetector.hpp"
#include "wpcn/model.hpp"
#include "wpcn/rates.hpp"
#include "wpcn/solver.hpp"

namespace wpcn {

/// Parse or validation failure; the message carries "source:line: ..." when
/// a line is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepKind { channel_disparity, inter_user_distance, custom };
enum class Scheme { backscatter, no_backscatter };

struct SchemeSpec {
  Scheme scheme = Scheme::backscatter;
  double rb = 1e5;  ///< backscatter bit rate; unused by the baseline
};

/// Contents of a [sweep] section.
struct SweepSection {
  SweepKind kind = SweepKind::custom;
  std::string parameter;  ///< "section.key" swept by a custom sweep
  std::vector<double> values;
  std::vector<SchemeSpec> schemes;
  std::string output;
  std::uint64_t seed = 1;
  bool grid_check = false;
};

/// Contents of a [ber] section.
struct BerSection {
  /// Inter-user distances in meters; each point rebuilds h_12 = h_21.
  std::optional<std::vector<double>> d12;
  /// Explicit inter-user gains, used when no distances are given.
  std::optional<std::vector<double>> h12;
  std::uint64_t n_bits = 100000;
  std::uint64_t seed = 1;
  SignalModel signal_model = SignalModel::gaussian_energy_signal;
  std::vector<Link> directions{Link::one_to_two};
};

enum class GainSource { defaults, topology, explicit_gains };

struct Config {
  SystemParams params;
  ChannelGains gains = reference_gains();  ///< resolved gains
  std::optional<Topology> topology;
  GainSource gain_source = GainSource::defaults;
  HarvestPolicy policy;
  SolverConfig solver;
  std::optional<SweepSection> sweep;
  BerSection ber;
};

/// Reads the sectioned key = value format:
///
///   [system]    SystemParams fields (p0, eta, beta, ...)
///   [gains]     h_e1 ... h_21; missing keys keep the reference values and
///               h_21 follows h_12 unless given
///   [topology]  d_e1, d_e2, d_1a, d_2a, d_12 (all required)
///   [policy]    own_slot_mode, include_cross_term
///   [solver]    z_tolerance, inner_tolerance, max_iterations, grid_resolution
///   [sweep]     kind, parameter, values, schemes, output, seed, grid_check
///   [ber]       d12 | h12, n_bits, seed, signal_model, direction
///
/// '#' and ';' start comments. Lists are comma separated, optionally in
/// brackets; strings may be quoted. Explicit [gains] win over [topology].
[[nodiscard]] Config parse_config(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] Config load_config(const std::filesystem::path& path);

/// Sets one key as if it appeared in `section`. Throws ConfigError.
void apply_setting(Config& cfg, const std::string& section, const std::string& key,
                   const std::string& value);

/// Every resolved setting as "section.key=value" pairs, full precision.
[[nodiscard]] std::vector<std::string> describe(const Config& cfg);

[[nodiscard]] std::string to_string(SweepKind kind);
[[nodiscard]] std::string to_string(Scheme scheme);
[[nodiscard]] std::string to_string(OwnSlotMode mode);

}  // namespace wpcn

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercontact/fb/pushout.hpp"
#include "hypercontact/kobayashi/disk_search.hpp"
#include "hypercontact/obstacle/shell_union.hpp"

namespace hypercontact {

inline constexpr int kConfigSchemaVersion = 1;

/// Raised for unreadable, malformed or inconsistent configs. `field` names
/// the offending entry (for example "pushout.shells[2].a"); for syntax errors
/// it is empty and `byte` holds the parser position.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field, std::optional<std::size_t> byte = {})
      : std::runtime_error(what), field_(std::move(field)), byte_(byte) {}
  const std::string& field() const { return field_; }
  std::optional<std::size_t> byte() const { return byte_; }

 private:
  std::string field_;
  std::optional<std::size_t> byte_;
};

/// Schedule constants stay as the decimal text they were written in so a
/// construction can be rebuilt from the config alone.
struct ShellSpec {
  std::string a, b, c;
};

enum class PushOutSource {
  /// a_i = 2^{4^{i-1}}, b_i = 2 a_i, c_i = 2^{i-1}.
  Desk,
  /// Thin enclosure of the standard obstacle for n.
  Standard,
  Explicit,
};

struct PushOutConfig {
  PushOutSource source = PushOutSource::Desk;
  int dim = 2;
  std::vector<ShellSpec> shells;
  double enclosure_rel = 0.1;
  RadiusRule rule = RadiusRule::Balanced;
  std::int64_t exponent_cap = kExponentCap;
};

struct SampleCounts {
  int horizontality_disks = 1000;
  int lemma_disks = 500;
  int shell = 1000;
  int identity = 1000;
  int escape = 1000;
  int omega = 100;
  int directions = 100;
  int chow_pairs = 100;
  int pullback_points = 100;
  int triangle_triples = 3;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  int n = 1;
  int i_max = 6;
  int k_max = 6;
  HeightRule heights = HeightRule::hyperbolic();
  EpsSchedule eps;
  PushOutConfig pushout;
  std::uint64_t seed = 1;
  SampleCounts samples;
  SearchBudget search;
  /// Starts of the free-transverse search that probes the derivative bound.
  int lemma_restarts = 200;
  double margin = 1e-6;
  /// Relative tolerance of finite-difference comparisons.
  double fd_tolerance = 1e-5;
  std::filesystem::path output_dir = "out";

  /// Heights expanded to one value per shell.
  std::vector<double> expanded_heights() const;
  /// The standard obstacle with these heights.
  ShellUnion obstacle() const;
  /// K_1 for the push-out and the prescale that goes with it.
  Enclosure pushout_initial() const;
};

/// Parses, defaults and checks a config document.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
/// Reads path and parses it. Throws ConfigError.
ExperimentConfig validate_config(const std::filesystem::path& path);

/// Canonical form with every default filled in; parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& c);

/// FNV-1a over the canonical JSON text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

}  // namespace hypercontact

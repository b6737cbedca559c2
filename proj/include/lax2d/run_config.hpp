#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lax2d/errors.hpp"

namespace lax2d {

/// Resolved run configuration shared by every subcommand. The on-disk format
/// is flat text, one `key = value` per line, `#` comments, no nesting;
/// command-line flags mirror the keys and override file values. Unknown keys
/// are rejected.
struct RunConfig {
  int n = 128;
  double dt = 1e-3;
  double T = 1.0;
  std::string ic = "perturbed-shear";
  double eps = 0.1;        // perturbed-shear amplitude
  int band = 8;            // random-band IC width and suite probe band
  std::uint64_t seed = 12345;
  int K = 12;
  std::string out_dir = "out";
  int snapshot_interval = 0;  // steps between snapshots; 0 = first and last only
  std::string suite;          // verify subcommand: bracket|compatibility|zakharov|conservation
  int trials = 10;
  int samples = 10;
  bool order_study = false;
  std::vector<double> sample_times{0.0, 0.5};
  int mode_index = -1;  // transport: -1 selects the largest-|lambda| eigenpair

  double alpha = 1.0;
  double beta = 1.4142135623730951;  // sqrt(2): resonance-free direction
  double gamma = 0.0;
  double delta = 1.0;
  double lambda_re = 1.0;
  double lambda_im = 1.0;
  std::string resonance_policy = "error";  // error | zero-gauge

  // Optional tolerance overrides, keyed tol_bracket, tol_compatibility,
  // tol_zakharov, tol_conservation, tol_transport.
  std::map<std::string, double> tolerances;

  /// Applies one key/value pair (file parser and flag overrides share this).
  void apply(const std::string& key, const std::string& value);
  /// Range/consistency checks; throws ConfigError.
  void validate() const;

  static RunConfig from_file(const std::filesystem::path& path);

  /// Canonical string map: lossless (doubles as %.17g), reparseable through
  /// apply(), embedded verbatim in every report for replay.
  std::map<std::string, std::string> to_map() const;
  static RunConfig from_map(const std::map<std::string, std::string>& map);

  double tolerance_or(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

}  // namespace lax2d

#ifndef SPARSEMIMO_CONFIG_HPP
#define SPARSEMIMO_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsemimo {

/// Validation failure; message lists every offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

enum class ExperimentKind {
  EdofSweep,
  RateSweep,
  SumRateFar,
  SumRateNear,
  Cdf,
  FitLobes,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct ScenarioConfig {
  ExperimentKind kind = ExperimentKind::EdofSweep;
  int n_ue = 8;
  int n_bs = 128;
  double eta_ue = 1.0;
  double eta_bs = 1.0;
  double wavelength = 0.01;
  double range = 40.0;
  double bearing_deg = 0.0;
  double tilt_deg = 0.0;
  double rx_snr_db = 10.0;
  int n_users = 20;
  double phi_max_deg = 20.0;
  std::string placement_law = "uniform-sin";  // or "uniform-angle"
  double rician_f_db = 20.0;
  int ring_paths = 5;
  double ring_radius = 3.0;
  std::string sweep_axis;  // defaults per kind when empty
  double sweep_start = 1.0;
  double sweep_stop = 10.0;
  int sweep_points = 10;
  int trials = 10000;
  std::uint64_t seed = 1;

  /// Fills the per-kind sweep-axis default and checks every invariant;
  /// throws ConfigError listing all violations.
  void validate();

  /// Ordered key/value echo sufficient to reproduce the run.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parse one `key = value` per line ('#' comments); rejects unknown and
/// duplicate keys, then validates. `default_kind` applies when the file does
/// not set `experiment`.
ScenarioConfig load_config(const std::string& path,
                           ExperimentKind default_kind = ExperimentKind::EdofSweep);

/// Same parser over in-memory text; `kind` keeps its current value unless the
/// text sets `experiment`.
ScenarioConfig parse_config(const std::string& text,
                            ExperimentKind default_kind);

}  // namespace sparsemimo

#endif

#include "sparsemimo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sparsemimo {

namespace {
std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value,
                    std::vector<std::string>& errors) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    errors.push_back(key + ": not a number: '" + value + "'");
    return 0.0;
  }
}

long long parse_int(const std::string& key, const std::string& value,
                    std::vector<std::string>& errors) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    errors.push_back(key + ": not an integer: '" + value + "'");
    return 0;
  }
}

std::string default_axis(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SumRateFar:
    case ExperimentKind::SumRateNear:
      return "eta_bs";
    case ExperimentKind::Cdf:
      return "rate";
    default:
      return "eta";
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace

ConfigError::ConfigError(const std::vector<std::string>& errors)
    : std::runtime_error(join(errors)), errors_(errors) {}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::EdofSweep: return "edof-sweep";
    case ExperimentKind::RateSweep: return "rate-sweep";
    case ExperimentKind::SumRateFar: return "sumrate-far";
    case ExperimentKind::SumRateNear: return "sumrate-near";
    case ExperimentKind::Cdf: return "cdf";
    case ExperimentKind::FitLobes: return "fit-lobes";
  }
  throw std::logic_error("to_string: bad experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto kind : {ExperimentKind::EdofSweep, ExperimentKind::RateSweep,
                    ExperimentKind::SumRateFar, ExperimentKind::SumRateNear,
                    ExperimentKind::Cdf, ExperimentKind::FitLobes})
    if (to_string(kind) == name) return kind;
  throw ConfigError({"experiment: unknown kind '" + name + "'"});
}

void ScenarioConfig::validate() {
  std::vector<std::string> errors;
  if (sweep_axis.empty()) sweep_axis = default_axis(kind);

  if (n_ue < 1) errors.push_back("ue.n: must be >= 1");
  if (n_bs < 1) errors.push_back("bs.n: must be >= 1");
  if (eta_ue < 1.0) errors.push_back("ue.eta: must be >= 1");
  if (eta_bs < 1.0) errors.push_back("bs.eta: must be >= 1");
  if (wavelength <= 0.0) errors.push_back("wavelength: must be > 0");
  if (range <= 0.0) errors.push_back("geometry.range: must be > 0");
  if (std::abs(bearing_deg) > 90.0)
    errors.push_back("geometry.bearing_deg: must be in [-90, 90]");
  if (std::abs(tilt_deg) > 90.0)
    errors.push_back("geometry.tilt_deg: must be in [-90, 90]");
  if (n_users < 1) errors.push_back("users.k: must be >= 1");
  if (phi_max_deg <= 0.0 || phi_max_deg > 90.0)
    errors.push_back("users.phi_max_deg: must be in (0, 90]");
  if (placement_law != "uniform-sin" && placement_law != "uniform-angle")
    errors.push_back("users.law: must be 'uniform-sin' or 'uniform-angle'");
  if (ring_paths < 1) errors.push_back("ring.paths: must be >= 1");
  if (ring_radius <= 0.0) errors.push_back("ring.radius: must be > 0");
  if (sweep_points < 1) errors.push_back("sweep.points: must be >= 1");
  if (sweep_start > sweep_stop)
    errors.push_back("sweep.start: must be <= sweep.stop");
  if (trials < 1) errors.push_back("trials: must be >= 1");

  const std::string axis = default_axis(kind);
  if (sweep_axis != axis)
    errors.push_back("sweep.axis: '" + to_string(kind) + "' sweeps '" + axis +
                     "', got '" + sweep_axis + "'");
  if ((sweep_axis == "eta" || sweep_axis == "eta_bs") && sweep_start < 1.0)
    errors.push_back("sweep.start: sparsity sweeps start at >= 1");
  if (sweep_axis == "rate" && sweep_start <= 0.0)
    errors.push_back("sweep.start: rate grid must be > 0");

  if (!errors.empty()) throw ConfigError(errors);
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::echo() const {
  return {
      {"experiment", to_string(kind)},
      {"ue.n", std::to_string(n_ue)},
      {"ue.eta", fmt(eta_ue)},
      {"bs.n", std::to_string(n_bs)},
      {"bs.eta", fmt(eta_bs)},
      {"wavelength", fmt(wavelength)},
      {"geometry.range", fmt(range)},
      {"geometry.bearing_deg", fmt(bearing_deg)},
      {"geometry.tilt_deg", fmt(tilt_deg)},
      {"snr.rx_db", fmt(rx_snr_db)},
      {"users.k", std::to_string(n_users)},
      {"users.phi_max_deg", fmt(phi_max_deg)},
      {"users.law", placement_law},
      {"rician.f_db", fmt(rician_f_db)},
      {"ring.paths", std::to_string(ring_paths)},
      {"ring.radius", fmt(ring_radius)},
      {"sweep.axis", sweep_axis},
      {"sweep.start", fmt(sweep_start)},
      {"sweep.stop", fmt(sweep_stop)},
      {"sweep.points", std::to_string(sweep_points)},
      {"trials", std::to_string(trials)},
      {"seed", std::to_string(seed)},
  };
}

ScenarioConfig parse_config(const std::string& text,
                            ExperimentKind default_kind) {
  ScenarioConfig cfg;
  cfg.kind = default_kind;
  std::vector<std::string> errors;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      errors.push_back("line " + std::to_string(line_no) +
                       ": empty key or value");
      continue;
    }
    if (!seen.insert(key).second) {
      errors.push_back(key + ": duplicate key");
      continue;
    }

    if (key == "experiment") {
      try {
        cfg.kind = experiment_kind_from_string(value);
      } catch (const ConfigError& e) {
        errors.insert(errors.end(), e.errors().begin(), e.errors().end());
      }
    } else if (key == "ue.n") {
      cfg.n_ue = static_cast<int>(parse_int(key, value, errors));
    } else if (key == "ue.eta") {
      cfg.eta_ue = parse_double(key, value, errors);
    } else if (key == "bs.n") {
      cfg.n_bs = static_cast<int>(parse_int(key, value, errors));
    } else if (key == "bs.eta") {
      cfg.eta_bs = parse_double(key, value, errors);
    } else if (key == "wavelength") {
      cfg.wavelength = parse_double(key, value, errors);
    } else if (key == "geometry.range") {
      cfg.range = parse_double(key, value, errors);
    } else if (key == "geometry.bearing_deg") {
      cfg.bearing_deg = parse_double(key, value, errors);
    } else if (key == "geometry.tilt_deg") {
      cfg.tilt_deg = parse_double(key, value, errors);
    } else if (key == "snr.rx_db") {
      cfg.rx_snr_db = parse_double(key, value, errors);
    } else if (key == "users.k") {
      cfg.n_users = static_cast<int>(parse_int(key, value, errors));
    } else if (key == "users.phi_max_deg") {
      cfg.phi_max_deg = parse_double(key, value, errors);
    } else if (key == "users.law") {
      cfg.placement_law = value;
    } else if (key == "rician.f_db") {
      cfg.rician_f_db = parse_double(key, value, errors);
    } else if (key == "ring.paths") {
      cfg.ring_paths = static_cast<int>(parse_int(key, value, errors));
    } else if (key == "ring.radius") {
      cfg.ring_radius = parse_double(key, value, errors);
    } else if (key == "sweep.axis") {
      cfg.sweep_axis = value;
    } else if (key == "sweep.start") {
      cfg.sweep_start = parse_double(key, value, errors);
    } else if (key == "sweep.stop") {
      cfg.sweep_stop = parse_double(key, value, errors);
    } else if (key == "sweep.points") {
      cfg.sweep_points = static_cast<int>(parse_int(key, value, errors));
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(key, value, errors));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value, errors));
    } else {
      errors.push_back(key + ": unknown key");
    }
  }

  if (!errors.empty()) throw ConfigError(errors);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path,
                           ExperimentKind default_kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), default_kind);
}

}  // namespace sparsemimo

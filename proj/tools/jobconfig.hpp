// jobconfig.hpp — JSON job configuration shared by the command-line modes
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omcsim/metrology.hpp"
#include "omcsim/params.hpp"
#include "omcsim/verify.hpp"

namespace omcsim::cli {

enum class Mode { spectrum, energy, force_min, cancel_check, compare };

const char* to_string(Mode mode);
const char* to_string(verify::Model model);
const char* to_string(metrology::BandConvention band);

struct GridSpec {
  double lo = 0.0;  // [rad/s]
  double hi = 0.0;  // [rad/s]
  int points = 0;
};

struct JobConfig {
  Mode mode = Mode::spectrum;
  verify::Model model = verify::Model::closed;
  double theta = 0.0;  // homodyne angle [rad]
  metrology::BandConvention band = metrology::BandConvention::symmetric;
  double nu_probe = 0.0;  // cancellation-fit offset [rad/s]
  std::optional<double> tau;  // measurement time [s]
  SystemParams system;        // resolved parameters, always filled
  std::optional<LabParams> lab;  // kept when the config supplied bench values
  std::optional<GridSpec> grid;       // sideband offsets
  std::optional<GridSpec> pump_grid;  // eta_r range for cancellation fits
  std::vector<double> ratio_grid;     // gamma / omega_m values for comparisons
  std::string output_path;
};

// parse and validate a config for the given mode; throws ConfigError with the
// offending field named
JobConfig parse_job_config(const nlohmann::json& j, Mode mode);

JobConfig load_job_config(const std::string& path, Mode mode);

// resolved-config echo embedded in output sidecars
nlohmann::ordered_json echo_config(const JobConfig& cfg);

}  // namespace omcsim::cli

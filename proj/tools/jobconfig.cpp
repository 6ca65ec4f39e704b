#include "jobconfig.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "omcsim/errors.hpp"

namespace omcsim::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& reason) {
  throw ConfigError(field + ": " + reason);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(where + "." + key, "unknown field");
  }
}

double number_at(const json& obj, const std::string& field) {
  const json& v = obj.at(field);
  if (!v.is_number()) fail(field, "must be a number");
  return v.get<double>();
}

// a rate named <stem> may be given as <stem>_rad_s or <stem>_hz (times 2 pi)
std::optional<double> rate_field(const json& obj, const std::string& where,
                                 const std::string& stem) {
  const std::string rad = stem + "_rad_s";
  const std::string hz = stem + "_hz";
  const bool has_rad = obj.contains(rad);
  const bool has_hz = obj.contains(hz);
  if (has_rad && has_hz) fail(where + "." + rad, "given twice (also as " + hz + ")");
  if (has_rad) return number_at(obj, rad);
  if (has_hz) return 2.0 * std::numbers::pi * number_at(obj, hz);
  return std::nullopt;
}

double require_rate(const json& obj, const std::string& where, const std::string& stem) {
  const std::optional<double> v = rate_field(obj, where, stem);
  if (!v) fail(where + "." + stem + "_rad_s", "missing (or give " + stem + "_hz)");
  return *v;
}

int sign_at(const json& obj, const std::string& where) {
  const json& v = obj.at("detuning_sign");
  if (!v.is_number_integer()) fail(where + ".detuning_sign", "must be +1 or -1");
  const int s = v.get<int>();
  if (s != 1 && s != -1) fail(where + ".detuning_sign", "must be +1 or -1");
  return s;
}

LabParams parse_lab(const json& obj) {
  check_keys(obj, "parameters.lab",
             {"mass_kg", "length_m", "omega_m_rad_s", "omega_m_hz", "gamma_m_rad_s",
              "gamma_m_hz", "transmission", "power_w", "wavevector_1_m", "n_thermal",
              "detuning_sign"});
  for (const char* key : {"mass_kg", "length_m", "transmission", "power_w",
                          "wavevector_1_m", "n_thermal", "detuning_sign"}) {
    if (!obj.contains(key)) fail(std::string("parameters.lab.") + key, "missing");
  }
  LabParams lab;
  lab.mass = number_at(obj, "mass_kg");
  lab.length = number_at(obj, "length_m");
  lab.omega_m = require_rate(obj, "parameters.lab", "omega_m");
  lab.gamma_m = require_rate(obj, "parameters.lab", "gamma_m");
  lab.transmission = number_at(obj, "transmission");
  lab.power = number_at(obj, "power_w");
  lab.wavevector = number_at(obj, "wavevector_1_m");
  lab.n_t = number_at(obj, "n_thermal");
  lab.detuning_sign = sign_at(obj, "parameters.lab");
  return lab;
}

SystemParams parse_system(const json& obj) {
  check_keys(obj, "parameters.system",
             {"gamma_rad_s", "gamma_hz", "gamma_m_rad_s", "gamma_m_hz",
              "omega_m_rad_s", "omega_m_hz", "g0_abs_rad_s", "g0_abs_hz",
              "g0_arg_rad", "n_thermal", "detuning_sign", "x0_m"});
  for (const char* key : {"n_thermal", "detuning_sign"}) {
    if (!obj.contains(key)) fail(std::string("parameters.system.") + key, "missing");
  }
  SystemParams sys;
  sys.gamma = require_rate(obj, "parameters.system", "gamma");
  sys.gamma_m = require_rate(obj, "parameters.system", "gamma_m");
  sys.omega_m = require_rate(obj, "parameters.system", "omega_m");
  const double mag = require_rate(obj, "parameters.system", "g0_abs");
  const double arg = obj.contains("g0_arg_rad") ? number_at(obj, "g0_arg_rad") : 0.0;
  sys.g0 = std::polar(mag, arg);
  sys.n_t = number_at(obj, "n_thermal");
  sys.detuning_sign = sign_at(obj, "parameters.system");
  sys.x0 = obj.contains("x0_m") ? number_at(obj, "x0_m") : 0.0;
  return sys;
}

GridSpec parse_grid(const json& obj, const std::string& where, const std::string& stem,
                    int min_points) {
  check_keys(obj, where,
             {stem + "_min_rad_s", stem + "_min_hz", stem + "_max_rad_s",
              stem + "_max_hz", "points"});
  GridSpec grid;
  grid.lo = require_rate(obj, where, stem + "_min");
  grid.hi = require_rate(obj, where, stem + "_max");
  if (!obj.contains("points")) fail(where + ".points", "missing");
  const json& p = obj.at("points");
  if (!p.is_number_integer()) fail(where + ".points", "must be an integer");
  grid.points = p.get<int>();
  if (grid.points < min_points) {
    fail(where + ".points", "must be at least " + std::to_string(min_points));
  }
  if (grid.points > 10'000'000) fail(where + ".points", "unreasonably large");
  if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) || !(grid.hi >= grid.lo)) {
    fail(where, "needs finite bounds with max >= min");
  }
  return grid;
}

Mode parse_mode(const json& j) {
  if (!j.contains("mode")) fail("mode", "missing");
  const json& v = j.at("mode");
  if (!v.is_string()) fail("mode", "must be a string");
  const std::string s = v.get<std::string>();
  if (s == "spectrum") return Mode::spectrum;
  if (s == "energy") return Mode::energy;
  if (s == "force-min") return Mode::force_min;
  if (s == "cancel-check") return Mode::cancel_check;
  if (s == "compare") return Mode::compare;
  fail("mode", "unknown mode '" + s + "'");
}

verify::Model parse_model(const json& j) {
  if (!j.contains("model")) fail("model", "missing");
  const json& v = j.at("model");
  if (!v.is_string()) fail("model", "must be a string");
  const std::string s = v.get<std::string>();
  if (s == "closed") return verify::Model::closed;
  if (s == "full") return verify::Model::full;
  fail("model", "must be 'closed' or 'full'");
}

metrology::BandConvention parse_band(const json& j) {
  if (!j.contains("band_convention")) return metrology::BandConvention::symmetric;
  const json& v = j.at("band_convention");
  if (!v.is_string()) fail("band_convention", "must be a string");
  const std::string s = v.get<std::string>();
  if (s == "symmetric") return metrology::BandConvention::symmetric;
  if (s == "full_width") return metrology::BandConvention::full_width;
  fail("band_convention", "must be 'symmetric' or 'full_width'");
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::spectrum: return "spectrum";
    case Mode::energy: return "energy";
    case Mode::force_min: return "force-min";
    case Mode::cancel_check: return "cancel-check";
    case Mode::compare: return "compare";
  }
  return "?";
}

const char* to_string(verify::Model model) {
  return model == verify::Model::closed ? "closed" : "full";
}

const char* to_string(metrology::BandConvention band) {
  return band == metrology::BandConvention::symmetric ? "symmetric" : "full_width";
}

JobConfig parse_job_config(const json& j, Mode mode) {
  if (!j.is_object()) fail("config", "must be a JSON object");
  check_keys(j, "config",
             {"mode", "model", "theta_rad", "band_convention", "nu_rad_s", "nu_hz",
              "tau_s", "parameters", "grid", "pump_grid", "ratio_grid",
              "output_path"});

  JobConfig cfg;
  cfg.mode = parse_mode(j);
  if (cfg.mode != mode) {
    fail("mode", std::string("config says '") + to_string(cfg.mode) +
                     "' but the subcommand is '" + to_string(mode) + "'");
  }

  if (!j.contains("parameters")) fail("parameters", "missing");
  const json& params = j.at("parameters");
  if (!params.is_object()) fail("parameters", "must be an object");
  check_keys(params, "parameters", {"lab", "system"});
  const bool has_lab = params.contains("lab");
  const bool has_sys = params.contains("system");
  if (has_lab == has_sys) fail("parameters", "give exactly one of 'lab' or 'system'");
  if (has_lab) {
    cfg.lab = parse_lab(params.at("lab"));
    cfg.system = derive_system(*cfg.lab);
  } else {
    cfg.system = parse_system(params.at("system"));
    cfg.system.validate();
  }

  if (j.contains("theta_rad")) {
    cfg.theta = number_at(j, "theta_rad");
    if (!std::isfinite(cfg.theta)) fail("theta_rad", "must be finite");
  }
  cfg.band = parse_band(j);
  if (const std::optional<double> nu = rate_field(j, "config", "nu")) {
    cfg.nu_probe = *nu;
  }
  if (j.contains("tau_s")) {
    cfg.tau = number_at(j, "tau_s");
    if (!(*cfg.tau > 0.0) || !std::isfinite(*cfg.tau)) {
      fail("tau_s", "must be positive and finite");
    }
  }
  if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"), "grid", "nu", 1);
  if (j.contains("pump_grid")) {
    cfg.pump_grid = parse_grid(j.at("pump_grid"), "pump_grid", "eta_r", 5);
    if (!(cfg.pump_grid->lo > 0.0)) fail("pump_grid.eta_r_min_rad_s", "must be positive");
    if (!(cfg.pump_grid->hi > cfg.pump_grid->lo)) {
      fail("pump_grid.eta_r_max_rad_s", "must exceed the minimum");
    }
  }
  if (j.contains("ratio_grid")) {
    const json& rg = j.at("ratio_grid");
    if (!rg.is_array() || rg.empty()) fail("ratio_grid", "must be a nonempty array");
    for (const json& v : rg) {
      if (!v.is_number()) fail("ratio_grid", "entries must be numbers");
      const double r = v.get<double>();
      if (!(r > 0.0) || !std::isfinite(r)) {
        fail("ratio_grid", "entries must be positive and finite");
      }
      cfg.ratio_grid.push_back(r);
    }
  }
  if (!j.contains("output_path")) fail("output_path", "missing");
  if (!j.at("output_path").is_string()) fail("output_path", "must be a string");
  cfg.output_path = j.at("output_path").get<std::string>();
  if (cfg.output_path.empty()) fail("output_path", "must not be empty");

  // per-mode requirements
  switch (cfg.mode) {
    case Mode::spectrum:
      if (!j.contains("model")) fail("model", "missing");
      cfg.model = parse_model(j);
      if (!cfg.grid) fail("grid", "missing");
      break;
    case Mode::energy:
      if (!j.contains("model")) fail("model", "missing");
      cfg.model = parse_model(j);
      break;
    case Mode::force_min:
      if (!cfg.grid) fail("grid", "missing");
      if (!cfg.tau) fail("tau_s", "missing");
      break;
    case Mode::cancel_check:
      if (!j.contains("model")) fail("model", "missing");
      cfg.model = parse_model(j);
      if (!cfg.pump_grid) fail("pump_grid", "missing");
      break;
    case Mode::compare:
      if (cfg.ratio_grid.empty()) fail("ratio_grid", "missing");
      if (!cfg.grid) fail("grid", "missing");
      break;
  }
  return cfg;
}

JobConfig load_job_config(const std::string& path, Mode mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_job_config(j, mode);
}

nlohmann::ordered_json echo_config(const JobConfig& cfg) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(cfg.mode);
  if (cfg.mode == Mode::spectrum || cfg.mode == Mode::energy ||
      cfg.mode == Mode::cancel_check) {
    j["model"] = to_string(cfg.model);
  }
  j["theta_rad"] = cfg.theta;
  j["band_convention"] = to_string(cfg.band);
  if (cfg.mode == Mode::cancel_check) j["nu_rad_s"] = cfg.nu_probe;
  if (cfg.tau) j["tau_s"] = *cfg.tau;
  nlohmann::ordered_json params;
  if (cfg.lab) {
    params["lab"] = {{"mass_kg", cfg.lab->mass},
                     {"length_m", cfg.lab->length},
                     {"omega_m_rad_s", cfg.lab->omega_m},
                     {"gamma_m_rad_s", cfg.lab->gamma_m},
                     {"transmission", cfg.lab->transmission},
                     {"power_w", cfg.lab->power},
                     {"wavevector_1_m", cfg.lab->wavevector},
                     {"n_thermal", cfg.lab->n_t},
                     {"detuning_sign", cfg.lab->detuning_sign}};
  }
  params["system"] = {{"gamma_rad_s", cfg.system.gamma},
                      {"gamma_m_rad_s", cfg.system.gamma_m},
                      {"omega_m_rad_s", cfg.system.omega_m},
                      {"g0_abs_rad_s", std::abs(cfg.system.g0)},
                      {"g0_arg_rad", std::arg(cfg.system.g0)},
                      {"n_thermal", cfg.system.n_t},
                      {"detuning_sign", cfg.system.detuning_sign},
                      {"x0_m", cfg.system.x0}};
  j["parameters"] = params;
  if (cfg.grid) {
    j["grid"] = {{"nu_min_rad_s", cfg.grid->lo},
                 {"nu_max_rad_s", cfg.grid->hi},
                 {"points", cfg.grid->points}};
  }
  if (cfg.pump_grid) {
    j["pump_grid"] = {{"eta_r_min_rad_s", cfg.pump_grid->lo},
                      {"eta_r_max_rad_s", cfg.pump_grid->hi},
                      {"points", cfg.pump_grid->points}};
  }
  if (!cfg.ratio_grid.empty()) j["ratio_grid"] = cfg.ratio_grid;
  j["output_path"] = cfg.output_path;
  return j;
}

}  // namespace omcsim::cli

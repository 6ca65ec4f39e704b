#include "jobs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <vector>

#include "omcsim/constants.hpp"
#include "omcsim/errors.hpp"
#include "omcsim/fullmodel.hpp"
#include "omcsim/metrology.hpp"
#include "omcsim/sideband.hpp"
#include "omcsim/verify.hpp"
#include "omcsim/version.hpp"

namespace omcsim::cli {

namespace {

namespace fs = std::filesystem;

// 17 significant digits: every double round-trips
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
      out << content;
      out.flush();
      if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::vector<double> linspace(const GridSpec& grid) {
  std::vector<double> xs(static_cast<std::size_t>(grid.points));
  if (grid.points == 1) {
    xs[0] = grid.lo;
    return xs;
  }
  const double h = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);
  for (int i = 0; i < grid.points; ++i) {
    xs[static_cast<std::size_t>(i)] = grid.lo + h * static_cast<double>(i);
  }
  xs.back() = grid.hi;
  return xs;
}

// mirror mass for SI force referral: from the bench values when given,
// otherwise recovered from the zero-point displacement
double referral_mass(const JobConfig& cfg) {
  if (cfg.lab) return cfg.lab->mass;
  if (cfg.system.x0 > 0.0) {
    return kHbar / (2.0 * cfg.system.omega_m * cfg.system.x0 * cfg.system.x0);
  }
  throw ConfigError(
      "parameters.system.x0_m: needed (or give parameters.lab) to refer forces to SI units");
}

std::string spectrum_csv(const JobConfig& cfg) {
  std::string csv = "nu_rad_s,S_y\n";
  for (double nu : linspace(*cfg.grid)) {
    double s;
    if (cfg.model == verify::Model::closed) {
      s = sideband::quadrature_spectrum_from_rows(sideband::solve(cfg.system, nu),
                                                  cfg.theta, cfg.system.n_t)
              .s_y;
    } else {
      s = fullmodel::quadrature_spectrum(
              cfg.system, cfg.system.omega_m + nu,
              cfg.system.detuning_sign * cfg.system.omega_m, cfg.theta)
              .s_y;
    }
    csv += fmt(nu) + "," + fmt(s) + "\n";
  }
  return csv;
}

std::string energy_csv(const JobConfig& cfg, bool verbose) {
  double energy;
  if (cfg.model == verify::Model::closed) {
    energy = sideband::mean_energy_closed(cfg.system);
  } else {
    if (verbose) std::cerr << "integrating the phonon spectrum...\n";
    energy = fullmodel::mean_energy_numeric(
        cfg.system, cfg.system.detuning_sign * cfg.system.omega_m);
  }
  const double n = energy / (kHbar * cfg.system.omega_m) - 0.5;
  std::string csv = "model,eta_r_rad_s,n_phonon,energy_j\n";
  csv += std::string(to_string(cfg.model)) + "," + fmt(eta_r0(cfg.system)) + "," +
         fmt(n) + "," + fmt(energy) + "\n";
  return csv;
}

std::string force_min_csv(const JobConfig& cfg) {
  std::string csv = "nu_rad_s,S_f\n";
  for (double nu : linspace(*cfg.grid)) {
    csv += fmt(nu) + "," + fmt(metrology::force_referred_spectrum(cfg.system, nu)) + "\n";
  }
  return csv;
}

nlohmann::ordered_json force_min_results(const JobConfig& cfg) {
  const double tau = *cfg.tau;
  const double delta_omega = 2.0 * std::numbers::pi / tau;
  const double mass = referral_mass(cfg);
  const SystemParams& sys = cfg.system;

  nlohmann::ordered_json out;
  out["delta_omega_rad_s"] = delta_omega;
  out["band_convention"] = to_string(cfg.band);
  out["f0_sq_current_pump"] = metrology::detection_threshold(sys, delta_omega, cfg.band);

  const metrology::EtaOptimum opt =
      metrology::optimize_eta(sys.gamma_m, sys.n_t, delta_omega, cfg.band, false);
  out["optimum"] = {{"eta_r_rad_s", opt.eta_r},
                    {"f0_sq", opt.f0_sq},
                    {"f0", std::sqrt(opt.f0_sq)}};

  const metrology::SqlResult sql =
      metrology::sql_force(mass, sys.omega_m, tau, cfg.band);
  const auto branch_json = [&](const metrology::SqlBranch& b) {
    return nlohmann::ordered_json{
        {"eta_r_rad_s", b.eta_r},
        {"f0", b.f0},
        {"xi", b.xi},
        {"force_peak_n", b.force},
        {"force_envelope_n", metrology::force_si_envelope(b.f0, mass, sys.omega_m)}};
  };
  out["sql"] = {{"exact", branch_json(sql.exact)}, {"series", branch_json(sql.series)}};

  const metrology::ThermalForce thermal =
      metrology::thermal_force(mass, sys.omega_m, sys.gamma_m, sys.n_t, tau);
  out["thermal"] = {{"force_n", thermal.force}, {"regime_ok", thermal.regime_ok}};
  return out;
}

nlohmann::ordered_json cancel_check_report(const JobConfig& cfg, bool verbose) {
  const std::vector<double> grid = verify::chebyshev_pump_grid(
      cfg.pump_grid->lo, cfg.pump_grid->hi, cfg.pump_grid->points);
  if (verbose) std::cerr << "fitting the pump sweep...\n";
  const verify::CancellationFit fit =
      verify::cancellation_fit(cfg.system, grid, cfg.theta, cfg.model, cfg.nu_probe);

  verify::VerificationReport report;
  report.fit_coefficients = fit.coeffs;
  if (cfg.model == verify::Model::full && cfg.system.detuning_sign > 0) {
    const double est = verify::s_add_quadratic(cfg.system, grid, cfg.nu_probe);
    report.s_add_ratio = fit.coeffs[2] / est;
  }
  if (verbose) std::cerr << "running conservation audits...\n";
  report.unitarity_residual = verify::unitarity_audit(2000);
  report.phase_invariance_residual = verify::phase_invariance_audit(cfg.system);
  return verify::to_json(report);
}

std::string compare_csv(const JobConfig& cfg, bool verbose) {
  const std::vector<double> nu_grid = linspace(*cfg.grid);
  if (verbose) {
    std::cerr << "comparing models over " << cfg.ratio_grid.size() << " ratios...\n";
  }
  const std::vector<verify::DeviationRow> rows =
      verify::compare_models(cfg.system, cfg.ratio_grid, nu_grid);
  std::string csv = "gamma_over_omega_m,max_rel_deviation,unstable\n";
  for (const verify::DeviationRow& row : rows) {
    csv += fmt(row.ratio) + "," + fmt(row.max_rel_dev) + "," +
           (row.unstable ? "1" : "0") + "\n";
  }
  return csv;
}

}  // namespace

JobResult run_job(const JobConfig& cfg, bool verbose) {
  std::string primary;
  nlohmann::ordered_json results;
  switch (cfg.mode) {
    case Mode::spectrum:
      primary = spectrum_csv(cfg);
      break;
    case Mode::energy:
      primary = energy_csv(cfg, verbose);
      break;
    case Mode::force_min:
      primary = force_min_csv(cfg);
      results = force_min_results(cfg);
      break;
    case Mode::cancel_check:
      primary = cancel_check_report(cfg, verbose).dump(2) + "\n";
      break;
    case Mode::compare:
      primary = compare_csv(cfg, verbose);
      break;
  }

  nlohmann::ordered_json meta;
  meta["schema_version"] = "v1";
  meta["library_version"] = kVersion;
  meta["resolved_config"] = echo_config(cfg);
  if (!results.is_null()) meta["results"] = results;

  JobResult out;
  out.primary_path = cfg.output_path;
  out.sidecar_path = cfg.output_path + ".meta.json";
  write_atomic(out.primary_path, primary);
  write_atomic(out.sidecar_path, meta.dump(2) + "\n");
  if (verbose) {
    std::cerr << "wrote " << out.primary_path << " and " << out.sidecar_path << "\n";
  }
  return out;
}

}  // namespace omcsim::cli

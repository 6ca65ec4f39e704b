#include "omcsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "omcsim/fullmodel.hpp"
#include "omcsim/sideband.hpp"

namespace omcsim::verify {

namespace {

// template system re-pumped to a given band-center damping magnitude
SystemParams with_pump(const SystemParams& tmpl, double eta_r_mag) {
  SystemParams sys = tmpl;
  sys.g0 = std::polar(std::sqrt(eta_r_mag * tmpl.gamma), std::arg(tmpl.g0));
  return sys;
}

double spectrum_value(const SystemParams& sys, Model model, double theta, double nu) {
  if (model == Model::closed) {
    return sideband::quadrature_spectrum_from_rows(sideband::solve(sys, nu), theta,
                                                   sys.n_t)
        .s_y;
  }
  const double delta = sys.detuning_sign * sys.omega_m;
  return fullmodel::quadrature_spectrum(sys, sys.omega_m + nu, delta, theta).s_y;
}

void check_pump_grid(std::span<const double> pump_grid) {
  if (pump_grid.size() < 5) {
    throw ConfigError("pump grid needs at least 5 points for a quadratic fit");
  }
  for (double x : pump_grid) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ConfigError("pump grid values must be positive and finite");
    }
  }
  std::vector<double> sorted(pump_grid.begin(), pump_grid.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("pump grid values must be distinct");
  }
}

// least-squares quadratic y(u) = c0 + c1 u + c2 u^2 on u = x / max(x)
std::array<double, 3> quadratic_fit_scaled(std::span<const double> x,
                                           const std::vector<double>& y,
                                           double x_scale) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = x[static_cast<std::size_t>(i)] / x_scale;
    design(i, 0) = 1.0;
    design(i, 1) = u;
    design(i, 2) = u * u;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(rhs);
  return {c(0), c(1), c(2)};
}

}  // namespace

std::vector<double> chebyshev_pump_grid(double eta_lo, double eta_hi, int n) {
  if (!(eta_lo > 0.0) || !std::isfinite(eta_lo)) {
    throw DomainError("eta_lo", "must be positive and finite");
  }
  if (!(eta_hi > eta_lo) || !std::isfinite(eta_hi)) {
    throw DomainError("eta_hi", "must exceed eta_lo and be finite");
  }
  if (n < 2) throw DomainError("n", "must be at least 2");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double mid = 0.5 * (eta_lo + eta_hi);
  const double half = 0.5 * (eta_hi - eta_lo);
  for (int k = 0; k < n; ++k) {
    const double angle = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n);
    grid[static_cast<std::size_t>(n - 1 - k)] = mid + half * std::cos(angle);
  }
  return grid;
}

CancellationFit cancellation_fit(const SystemParams& tmpl,
                                 std::span<const double> pump_grid, double theta,
                                 Model model, double nu) {
  tmpl.validate();
  check_pump_grid(pump_grid);
  if (!std::isfinite(theta)) throw DomainError("theta", "must be finite");
  if (!std::isfinite(nu)) throw DomainError("nu", "must be finite");

  const double scale = *std::max_element(pump_grid.begin(), pump_grid.end());
  std::vector<double> excess;
  excess.reserve(pump_grid.size());
  for (double eta_r : pump_grid) {
    SystemParams sys = with_pump(tmpl, eta_r);
    sys.n_t = 0.0;  // vacuum input isolates the back-action residual
    excess.push_back(spectrum_value(sys, model, theta, nu) - 0.5);
  }

  CancellationFit fit;
  fit.eta_scale = scale;
  fit.coeffs_scaled = quadratic_fit_scaled(pump_grid, excess, scale);
  fit.coeffs = {fit.coeffs_scaled[0], fit.coeffs_scaled[1] / scale,
                fit.coeffs_scaled[2] / (scale * scale)};
  return fit;
}

double s_add_quadratic(const SystemParams& tmpl, std::span<const double> pump_grid,
                       double nu) {
  tmpl.validate();
  check_pump_grid(pump_grid);
  if (tmpl.detuning_sign <= 0) {
    throw DomainError("detuning_sign", "back-action estimate needs a pump above resonance");
  }
  const double scale = *std::max_element(pump_grid.begin(), pump_grid.end());
  std::vector<double> estimate;
  estimate.reserve(pump_grid.size());
  for (double eta_r : pump_grid) {
    estimate.push_back(s_add_estimate(with_pump(tmpl, eta_r), nu));
  }
  const std::array<double, 3> c = quadratic_fit_scaled(pump_grid, estimate, scale);
  return c[2] / (scale * scale);
}

std::vector<DeviationRow> compare_models(const SystemParams& tmpl,
                                         std::span<const double> ratios,
                                         std::span<const double> nu_grid) {
  tmpl.validate();
  if (ratios.empty()) throw DomainError("ratios", "must not be empty");
  if (nu_grid.empty()) throw DomainError("nu_grid", "must not be empty");
  std::vector<DeviationRow> rows;
  rows.reserve(ratios.size());
  for (double ratio : ratios) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
      throw DomainError("ratios", "must be positive and finite");
    }
    SystemParams sys = tmpl;
    sys.omega_m = tmpl.gamma / ratio;
    DeviationRow row;
    row.ratio = ratio;
    if (sys.detuning_sign < 0 && -eta_r0(sys) >= sys.gamma_m) {
      row.unstable = true;  // parametric threshold: deviation left unset
      rows.push_back(row);
      continue;
    }
    for (double nu : nu_grid) {
      const double closed = sideband::spectral_density_closed(sys, nu).s_y;
      const double full =
          fullmodel::quadrature_spectrum(sys, sys.omega_m + nu,
                                         sys.detuning_sign * sys.omega_m, 0.0)
              .s_y;
      row.max_rel_dev = std::max(row.max_rel_dev, std::abs(full - closed) / closed);
    }
    rows.push_back(row);
  }
  return rows;
}

double s_add_estimate(const SystemParams& sys, double nu) {
  sys.validate();
  if (sys.detuning_sign <= 0) {
    throw DomainError("detuning_sign", "back-action estimate needs a pump above resonance");
  }
  if (!std::isfinite(nu)) throw DomainError("nu", "must be finite");
  const std::complex<double> e = eta(sys, nu).value;
  const std::complex<double> den =
      sys.gamma_m + e - std::complex<double>{0.0, 1.0} * nu;
  const double ratio = sys.gamma / sys.omega_m;
  return 2.0 * e.real() * e.real() * ratio * ratio / std::norm(den);
}

double unitarity_audit(int n_draws, std::uint64_t seed) {
  if (n_draws < 1) throw DomainError("n_draws", "must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double worst = 0.0;
  const auto track = [&worst](double value) { worst = std::max(worst, value); };
  for (int i = 0; i < n_draws; ++i) {
    SystemParams sys;
    sys.gamma = 1.0;
    sys.gamma_m = std::pow(10.0, -5.0 + 4.0 * uniform(rng));
    sys.omega_m = 1e3;
    sys.n_t = 100.0 * uniform(rng);
    const double arg = 2.0 * std::numbers::pi * uniform(rng);

    // pump above resonance: photon-flux identity |c_ain|^2 + |c_bth|^2 = 1
    const double eta_pos = sys.gamma_m * std::pow(10.0, -2.0 + 4.0 * uniform(rng));
    sys.detuning_sign = +1;
    sys.g0 = std::polar(std::sqrt(eta_pos * sys.gamma), arg);
    double nu = (sys.gamma_m + eta_pos) * (20.0 * uniform(rng) - 10.0);
    sideband::RowPair rows = sideband::solve_positive(sys, nu);
    double a2 = std::norm(rows.first.c_ain);
    double b2 = std::norm(rows.first.c_bth);
    track(std::abs(a2 + b2 - 1.0) / std::max(1.0, a2 + b2));
    track(std::abs(std::norm(rows.second.c_ain_minus) - 1.0));

    // pump below resonance: amplifier identity |c_ain|^2 - |c_bth|^2 = 1;
    // residuals are scaled by the identity's terms, which grow without bound
    // toward the parametric threshold
    const double eta_neg = sys.gamma_m * (0.01 + 0.98 * uniform(rng));
    sys.detuning_sign = -1;
    sys.g0 = std::polar(std::sqrt(eta_neg * sys.gamma), arg);
    nu = (sys.gamma_m + eta_neg) * (20.0 * uniform(rng) - 10.0);
    rows = sideband::solve_negative(sys, nu);
    a2 = std::norm(rows.first.c_ain_minus);
    b2 = std::norm(rows.first.c_bth);
    track(std::abs(a2 - b2 - 1.0) / std::max(1.0, a2 + b2));
    track(std::abs(std::norm(rows.second.c_ain) - 1.0));
  }
  return worst;
}

double phase_invariance_audit(const SystemParams& tmpl, int n_phases) {
  tmpl.validate();
  if (n_phases < 2) throw DomainError("n_phases", "must be at least 2");
  const double width = tmpl.gamma_m + std::abs(eta_r0(tmpl));
  const double nu_probe[3] = {0.0, 0.5 * width, 2.0 * width};
  const double theta_probe[2] = {0.0, std::numbers::pi / 3.0};
  const bool stable_energy =
      tmpl.detuning_sign > 0 || -eta_r0(tmpl) < tmpl.gamma_m;

  // rotating the pump phase by phi rotates the output field by phi, so the
  // exact invariance is S(theta + phi; phi) = S(theta; 0); the homodyne
  // angle co-rotates with the pump
  const auto snapshot = [&](double phase) {
    SystemParams sys = tmpl;
    sys.g0 = std::polar(std::abs(tmpl.g0), std::arg(tmpl.g0) + phase);
    std::vector<double> values;
    for (double nu : nu_probe) {
      values.push_back(sideband::spectral_density_closed(sys, nu).s_y);
      for (double theta : theta_probe) {
        values.push_back(
            sideband::quadrature_spectrum_from_rows(sideband::solve(sys, nu),
                                                    theta + phase, sys.n_t)
                .s_y);
        values.push_back(fullmodel::quadrature_spectrum(
                             sys, sys.omega_m + nu,
                             sys.detuning_sign * sys.omega_m, theta + phase)
                             .s_y);
      }
    }
    if (stable_energy) values.push_back(sideband::mean_energy_closed(sys));
    return values;
  };

  const std::vector<double> base = snapshot(0.0);
  double worst = 0.0;
  for (int k = 1; k < n_phases; ++k) {
    const double phase = 2.0 * std::numbers::pi * k / n_phases;
    const std::vector<double> probe = snapshot(phase);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double scale = std::max(std::abs(base[i]), 1e-300);
      worst = std::max(worst, std::abs(probe[i] - base[i]) / scale);
    }
  }
  return worst;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = "v1";
  if (report.fit_coefficients) {
    j["fit_coefficients"] = *report.fit_coefficients;
  } else {
    j["fit_coefficients"] = nullptr;
  }
  const auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  put("max_relative_deviation", report.max_relative_deviation);
  put("s_add_ratio", report.s_add_ratio);
  put("unitarity_residual", report.unitarity_residual);
  put("phase_invariance_residual", report.phase_invariance_residual);
  return j;
}

}  // namespace omcsim::verify

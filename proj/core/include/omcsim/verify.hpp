// verify.hpp — cross-model audits: back-action cancellation fits, closed-form
// versus dense-model comparisons, and conservation-identity checks
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "omcsim/params.hpp"

namespace omcsim::verify {

enum class Model {
  closed,  // resolved-sideband transfer rows
  full,    // dense three-mode solve
};

// quadratic fit of the vacuum phase-quadrature excess against the pump
struct CancellationFit {
  std::array<double, 3> coeffs{};         // c0, c1 [s], c2 [s^2] in eta_r
  std::array<double, 3> coeffs_scaled{};  // in u = eta_r / eta_scale
  double eta_scale = 0.0;                 // grid maximum [rad/s]
};

// Chebyshev nodes on [eta_lo, eta_hi], ascending
std::vector<double> chebyshev_pump_grid(double eta_lo, double eta_hi, int n);

// fit S_y(theta, nu; eta_r) - 1/2 at zero thermal occupation over the pump
// grid; tmpl supplies every parameter except the pump strength
CancellationFit cancellation_fit(const SystemParams& tmpl,
                                 std::span<const double> pump_grid, double theta,
                                 Model model, double nu = 0.0);

// quadratic coefficient (in eta_r) of the residual back-action density
// 2 eta_r^2 (gamma/omega_m)^2 / |gamma_m + eta - i nu|^2 fitted on the same grid
double s_add_quadratic(const SystemParams& tmpl, std::span<const double> pump_grid,
                       double nu = 0.0);

struct DeviationRow {
  double ratio = 0.0;        // gamma / omega_m
  double max_rel_dev = 0.0;  // over the nu grid, phase quadrature
  bool unstable = false;     // parametric threshold reached; no value computed
};

// closed-form spectra against the dense model across gamma/omega_m ratios
std::vector<DeviationRow> compare_models(const SystemParams& tmpl,
                                         std::span<const double> ratios,
                                         std::span<const double> nu_grid);

// leading back-action addition to the phase-quadrature floor for a pump
// above resonance
double s_add_estimate(const SystemParams& sys, double nu);

// worst photon-flux / amplifier-identity residual, relative to the
// identity's terms, over randomized stable draws of both detunings
double unitarity_audit(int n_draws, std::uint64_t seed = 0x9e3779b97f4a7c15ull);

// worst spectral change under a rotation of the coupling phase with the
// homodyne angle co-rotated (the exact symmetry of the output field)
double phase_invariance_audit(const SystemParams& tmpl, int n_phases = 8);

struct VerificationReport {
  std::optional<std::array<double, 3>> fit_coefficients;  // c0, c1, c2 in eta_r
  std::optional<double> max_relative_deviation;
  std::optional<double> s_add_ratio;  // fitted c2 over the estimate's c2
  std::optional<double> unitarity_residual;
  std::optional<double> phase_invariance_residual;
};

// schema "v1"; absent audits serialize as null
nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace omcsim::verify

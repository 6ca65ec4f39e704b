// metrology.hpp — force-referred noise, band-integrated detection thresholds,
// pump optimization and minimal detectable forces
#pragma once

#include "omcsim/params.hpp"

namespace omcsim::metrology {

// band of sideband offsets integrated by a threshold: a width delta_omega
// either split around the resonance or taken on each side of it
enum class BandConvention {
  symmetric,   // nu in [-delta_omega/2, +delta_omega/2]
  full_width,  // nu in [-delta_omega, +delta_omega]
};

// force-referred noise density of the phase quadrature, in units of the
// dimensionless force amplitude squared per unit bandwidth; throws
// DomainError at zero pump (no responsivity) and InstabilityError when a
// pump below resonance reaches the parametric threshold
double force_referred_spectrum(const SystemParams& sys, double nu);

// the same density parameterized directly by the band-center damping rate
// eta_r > 0 of a pump above resonance
double force_referred_closed(double eta_r, double gamma_m, double n_t, double nu);

// band-integrated detection threshold f0^2 = int 2 S_f dnu / 2pi
double detection_threshold(const SystemParams& sys, double delta_omega,
                           BandConvention band = BandConvention::symmetric);
double detection_threshold_closed(double eta_r, double gamma_m, double n_t,
                                  double delta_omega, BandConvention band);

// flat-plus-curvature approximation (eta_r/2 + delta_omega^2/(6 eta_r)) *
// delta_omega / 2pi of the band integral, kept as its own branch
double detection_threshold_series(double eta_r, double delta_omega);

struct EtaOptimum {
  double eta_r = 0.0;   // argmin [rad/s]
  double f0_sq = 0.0;   // threshold at the optimum
};

// minimize the detection threshold over the pump-controlled damping rate;
// series_branch selects detection_threshold_series as the objective
EtaOptimum optimize_eta(double gamma_m, double n_t, double delta_omega,
                        BandConvention band = BandConvention::symmetric,
                        bool series_branch = false);

struct SqlBranch {
  double eta_r = 0.0;  // optimal damping rate [rad/s]
  double f0 = 0.0;     // dimensionless force amplitude threshold
  double force = 0.0;  // peak-convention SI force f0 * sqrt(2 hbar m w_m) [N]
  double xi = 0.0;     // f0 * tau
};

struct SqlResult {
  double tau = 0.0;          // measurement time [s]
  double delta_omega = 0.0;  // 2 pi / tau [rad/s]
  BandConvention band = BandConvention::symmetric;
  SqlBranch exact;   // band integral evaluated exactly
  SqlBranch series;  // flat-plus-curvature branch
};

// damping-free (gamma_m -> 0) minimal force over a measurement of length tau
SqlResult sql_force(double mass, double omega_m, double tau,
                    BandConvention band = BandConvention::symmetric);

struct ThermalForce {
  double force = 0.0;      // [N]
  bool regime_ok = false;  // gamma_m * tau <= 1, the formula's regime
};

// thermal-floor force sqrt(4 hbar m w_m gamma_m (n_t + 1) / tau)
ThermalForce thermal_force(double mass, double omega_m, double gamma_m,
                           double n_t, double tau);

// SI referrals of the dimensionless force amplitude: the complex-envelope
// normalization and the peak (cosine-amplitude) normalization used by the
// threshold results; the two differ by sqrt(2)
double force_si_envelope(double f, double mass, double omega_m);  // f * sqrt(hbar w_m m)
double force_si_peak(double f, double mass, double omega_m);      // f * sqrt(2 hbar m w_m)

}  // namespace omcsim::metrology

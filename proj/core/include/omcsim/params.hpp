// params.hpp — lab-frame and reduced parameters of the detuned-pump cavity
//
// The device is a single-port Fabry-Perot cavity with a movable end mirror,
// pumped one mechanical frequency above (detuning_sign = +1) or below
// (detuning_sign = -1) the cavity resonance.  All rates are angular [rad/s].
#pragma once

#include <complex>

#include "omcsim/errors.hpp"

namespace omcsim {

// raw bench quantities
struct LabParams {
  double mass = 0.0;          // mirror effective mass [kg]
  double length = 0.0;        // cavity length [m]
  double omega_m = 0.0;       // mechanical resonance [rad/s]
  double gamma_m = 0.0;       // mechanical amplitude damping rate [rad/s]
  double transmission = 0.0;  // input-mirror amplitude transmission
  double power = 0.0;         // circulating pump power [W]; zero allowed
  double wavevector = 0.0;    // pump wave vector [1/m]
  double n_t = 0.0;           // thermal occupation of the mechanical bath
  int detuning_sign = +1;     // +1 pump above resonance, -1 below
};

// reduced parameters every solver consumes
struct SystemParams {
  double gamma = 0.0;    // cavity amplitude half-linewidth [rad/s]
  double gamma_m = 0.0;  // mechanical amplitude damping rate [rad/s]
  double omega_m = 0.0;  // mechanical resonance [rad/s]
  std::complex<double> g0{0.0, 0.0};  // optomechanical coupling [rad/s]
  double n_t = 0.0;      // thermal occupation
  int detuning_sign = +1;
  double x0 = 0.0;       // zero-point displacement [m]; 0 when not known

  // throws DomainError on nonphysical values
  void validate() const;
};

// ponderomotive response at sideband offset nu from the mechanical resonance:
// real part is the radiation-pressure damping (cooling > 0, heating < 0),
// imaginary part the accompanying spring shift
struct Eta {
  std::complex<double> value{0.0, 0.0};  // [rad/s]

  double real() const noexcept { return value.real(); }
  double imag() const noexcept { return value.imag(); }
};

// reduce bench quantities: gamma = T^2 c / (4 L), |g0| = sqrt(k P / (m L w_m)),
// x0 = sqrt(hbar / (2 m w_m)); the coupling phase is taken real positive
SystemParams derive_system(const LabParams& lab);

Eta eta(const SystemParams& sys, double nu);

// signed damping rate at band center, |g0|^2 / gamma times the detuning sign
double eta_r0(const SystemParams& sys);

struct SidebandCheck {
  bool pass = false;
  bool damping_resolved = false;   // gamma >= min_ratio * gamma_m
  bool sideband_resolved = false;  // omega_m >= min_ratio * gamma
  double gamma_over_gamma_m = 0.0;
  double omega_m_over_gamma = 0.0;
  double min_ratio = 0.0;
};

// hierarchy check gamma_m << gamma << omega_m with equality passing
SidebandCheck validate_resolved_sideband(const SystemParams& sys,
                                         double min_ratio = 100.0);

}  // namespace omcsim

#include "omcsim/params.hpp"

#include <cmath>

#include "omcsim/constants.hpp"

namespace omcsim {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(field, "must be positive and finite");
  }
}

void require_nonnegative(double v, const char* field) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(field, "must be nonnegative and finite");
  }
}

void require_sign(int s) {
  if (s != +1 && s != -1) {
    throw DomainError("detuning_sign", "must be +1 or -1");
  }
}

}  // namespace

void SystemParams::validate() const {
  require_positive(gamma, "gamma");
  require_positive(gamma_m, "gamma_m");
  require_positive(omega_m, "omega_m");
  if (!std::isfinite(g0.real()) || !std::isfinite(g0.imag())) {
    throw DomainError("g0", "must be finite");
  }
  require_nonnegative(n_t, "n_t");
  require_sign(detuning_sign);
  require_nonnegative(x0, "x0");
}

SystemParams derive_system(const LabParams& lab) {
  require_positive(lab.mass, "mass");
  require_positive(lab.length, "length");
  require_positive(lab.omega_m, "omega_m");
  require_positive(lab.gamma_m, "gamma_m");
  require_positive(lab.transmission, "transmission");
  require_nonnegative(lab.power, "power");
  require_positive(lab.wavevector, "wavevector");
  require_nonnegative(lab.n_t, "n_t");
  require_sign(lab.detuning_sign);

  const double tau = lab.length / kSpeedOfLight;  // one-way light time
  SystemParams sys;
  sys.gamma = lab.transmission * lab.transmission / (4.0 * tau);
  sys.gamma_m = lab.gamma_m;
  sys.omega_m = lab.omega_m;
  sys.g0 = std::sqrt(lab.wavevector * lab.power / (lab.mass * lab.length * lab.omega_m));
  sys.n_t = lab.n_t;
  sys.detuning_sign = lab.detuning_sign;
  sys.x0 = std::sqrt(kHbar / (2.0 * lab.mass * lab.omega_m));
  sys.validate();
  return sys;
}

Eta eta(const SystemParams& sys, double nu) {
  sys.validate();
  if (!std::isfinite(nu)) throw DomainError("nu", "must be finite");
  const double g2 = std::norm(sys.g0);
  const std::complex<double> i(0.0, 1.0);
  if (sys.detuning_sign > 0) return {g2 / (sys.gamma - i * nu)};
  return {-g2 / (sys.gamma + i * nu)};
}

double eta_r0(const SystemParams& sys) {
  sys.validate();
  return sys.detuning_sign * std::norm(sys.g0) / sys.gamma;
}

SidebandCheck validate_resolved_sideband(const SystemParams& sys, double min_ratio) {
  sys.validate();
  if (!(min_ratio > 1.0) || !std::isfinite(min_ratio)) {
    throw DomainError("min_ratio", "must exceed 1");
  }
  SidebandCheck out;
  out.min_ratio = min_ratio;
  out.gamma_over_gamma_m = sys.gamma / sys.gamma_m;
  out.omega_m_over_gamma = sys.omega_m / sys.gamma;
  out.damping_resolved = out.gamma_over_gamma_m >= min_ratio;
  out.sideband_resolved = out.omega_m_over_gamma >= min_ratio;
  out.pass = out.damping_resolved && out.sideband_resolved;
  return out;
}

}  // namespace omcsim

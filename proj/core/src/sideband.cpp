#include "omcsim/sideband.hpp"

#include <cmath>

#include "omcsim/constants.hpp"

namespace omcsim::sideband {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// i g0 / |g0|; a zero pump carries no force response, so any unit phase works
std::complex<double> drive_phase(std::complex<double> g0) {
  const double mag = std::abs(g0);
  return mag > 0.0 ? kI * g0 / mag : kI;
}

void check_nu(double nu) {
  if (!std::isfinite(nu)) throw DomainError("nu", "must be finite");
}

}  // namespace

RowPair solve_positive(const SystemParams& sys, double nu) {
  sys.validate();
  check_nu(nu);
  if (sys.detuning_sign <= 0) {
    throw DomainError("detuning_sign", "solve_positive needs a pump above resonance");
  }
  const double g = sys.gamma;
  const double gm = sys.gamma_m;
  const std::complex<double> e = eta(sys, nu).value;  // e.real() >= 0 here
  const std::complex<double> den = gm + e - kI * nu;
  const std::complex<double> phase = (g + kI * nu) / (g - kI * nu);

  TransferRow near{OutputField::a_out, nu, +1};
  near.c_f = -drive_phase(sys.g0) * std::sqrt(2.0 * e.real()) * std::sqrt(phase) / den;
  near.c_bth = std::sqrt(2.0 * gm) * near.c_f;
  near.c_ain = phase * (1.0 - 2.0 * e.real() / den);

  TransferRow far{OutputField::a_out_dagger_neg, nu, +1};
  const std::complex<double> det_far = g - kI * (2.0 * sys.omega_m + nu);
  far.c_ain_minus = std::conj(det_far) / det_far;

  return {near, far};
}

RowPair solve_negative(const SystemParams& sys, double nu) {
  sys.validate();
  check_nu(nu);
  if (sys.detuning_sign >= 0) {
    throw DomainError("detuning_sign", "solve_negative needs a pump below resonance");
  }
  const double g = sys.gamma;
  const double gm = sys.gamma_m;
  const std::complex<double> e = eta(sys, nu).value;  // e.real() <= 0 here
  const std::complex<double> den = gm + e + kI * nu;
  const std::complex<double> phase = (g - kI * nu) / (g + kI * nu);

  TransferRow near{OutputField::a_out_neg, nu, -1};
  near.c_f = -drive_phase(sys.g0) * std::sqrt(-2.0 * e.real()) * std::sqrt(phase) / den;
  near.c_bth = std::sqrt(2.0 * gm) * near.c_f;
  near.c_ain_minus = phase * (1.0 - 2.0 * e.real() / den);

  TransferRow far{OutputField::a_out, nu, -1};
  const std::complex<double> det_far = g - kI * (2.0 * sys.omega_m + nu);
  far.c_ain = std::conj(det_far) / det_far;

  return {near, far};
}

RowPair solve(const SystemParams& sys, double nu) {
  return sys.detuning_sign > 0 ? solve_positive(sys, nu) : solve_negative(sys, nu);
}

SpectrumPoint spectral_density_closed(const SystemParams& sys, double nu) {
  sys.validate();
  check_nu(nu);
  const std::complex<double> e = eta(sys, nu).value;
  if (sys.detuning_sign > 0) {
    const std::complex<double> den = sys.gamma_m + e - kI * nu;
    return {nu, 0.5 + 2.0 * e.real() * sys.gamma_m * sys.n_t / std::norm(den)};
  }
  const std::complex<double> den = sys.gamma_m + e + kI * nu;
  return {nu, 0.5 - 2.0 * e.real() * sys.gamma_m * (sys.n_t + 1.0) / std::norm(den)};
}

SpectrumPoint quadrature_spectrum_from_rows(const RowPair& rows, double theta,
                                            double n_t) {
  const TransferRow& a = rows.first;
  const TransferRow& b = rows.second;
  if (a.nu != b.nu) {
    throw ConsistencyError("transfer rows taken at different sideband offsets");
  }
  if (a.detuning_sign != b.detuning_sign) {
    throw ConsistencyError("transfer rows taken at different detunings");
  }
  if (a.output == b.output) {
    throw ConsistencyError("quadrature needs two distinct output rows");
  }
  if (!(n_t >= 0.0) || !std::isfinite(n_t)) {
    throw DomainError("n_t", "must be nonnegative and finite");
  }
  if (!std::isfinite(theta)) throw DomainError("theta", "must be finite");

  // y_theta = (a_out(Omega) e^{-i theta} + a_out^dag(-Omega) e^{+i theta}) / sqrt(2);
  // a_out(-Omega) rows are daggered into a_out^dag(-Omega) first.  Each input
  // mode keeps separate annihilation / creation accumulators: in rows with
  // detuning_sign = +1, c_ain_minus rides a_in^dag(-Omega) and c_bth rides
  // b_th; with -1 they ride a_in(-Omega) and b_th^dag.
  const std::complex<double> em = std::exp(-kI * theta) / std::sqrt(2.0);
  const std::complex<double> ep = std::conj(em);
  std::complex<double> q[3][2] = {};  // [a_in(+), a_in(-), b_th][annih, create]
  for (const TransferRow* r : {&a, &b}) {
    const int minus_side = r->detuning_sign > 0 ? 1 : 0;
    const int bth_side = r->detuning_sign > 0 ? 0 : 1;
    switch (r->output) {
      case OutputField::a_out:
        q[0][0] += em * r->c_ain;
        q[1][minus_side] += em * r->c_ain_minus;
        q[2][bth_side] += em * r->c_bth;
        break;
      case OutputField::a_out_dagger_neg:
        q[0][0] += ep * r->c_ain;
        q[1][minus_side] += ep * r->c_ain_minus;
        q[2][bth_side] += ep * r->c_bth;
        break;
      case OutputField::a_out_neg:
        q[0][1] += ep * std::conj(r->c_ain);
        q[1][1 - minus_side] += ep * std::conj(r->c_ain_minus);
        q[2][1 - bth_side] += ep * std::conj(r->c_bth);
        break;
    }
  }
  // symmetrized density: each mode weighs both sides by (occupation + 1/2)
  const double w[3] = {0.5, 0.5, n_t + 0.5};
  double s = 0.0;
  for (int m = 0; m < 3; ++m) s += w[m] * (std::norm(q[m][0]) + std::norm(q[m][1]));
  return {a.nu, s};
}

double mean_energy_closed(const SystemParams& sys) {
  sys.validate();
  const double er = eta_r0(sys);
  const double gm = sys.gamma_m;
  if (sys.detuning_sign > 0) {
    return kHbar * sys.omega_m * (gm * sys.n_t / (gm + er) + 0.5);
  }
  const double mag = -er;
  if (mag >= gm) {
    throw InstabilityError("pump below resonance at or beyond the parametric threshold",
                           mag);
  }
  return kHbar * sys.omega_m *
         (gm * sys.n_t / (gm - mag) + 0.5 * (gm + mag) / (gm - mag));
}

}  // namespace omcsim::sideband

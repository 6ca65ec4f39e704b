// sideband.hpp — closed-form output rows, spectra and energies in the
// resolved-sideband limit (gamma_m << gamma << omega_m, pump at +/- omega_m)
#pragma once

#include <complex>
#include <utility>

#include "omcsim/params.hpp"

namespace omcsim::sideband {

// which output mode a transfer row describes; Omega = omega_m + nu > 0
enum class OutputField {
  a_out,             // a_out(Omega)
  a_out_dagger_neg,  // a_out^dag(-Omega)
  a_out_neg,         // a_out(-Omega)
};

// one output mode written over the input channels; fields that do not apply
// to a given detuning stay zero
struct TransferRow {
  OutputField output = OutputField::a_out;
  double nu = 0.0;  // sideband offset [rad/s]
  int detuning_sign = +1;
  std::complex<double> c_ain{0.0, 0.0};        // a_in(Omega)
  std::complex<double> c_ain_minus{0.0, 0.0};  // a_in^dag(-Omega) for +1, a_in(-Omega) for -1
  std::complex<double> c_bth{0.0, 0.0};        // b_th for +1, b_th^dag for -1
  std::complex<double> c_f{0.0, 0.0};          // external force drive
};

using RowPair = std::pair<TransferRow, TransferRow>;

struct SpectrumPoint {
  double nu = 0.0;   // [rad/s]
  double s_y = 0.0;  // symmetrized quadrature density, dimensionless
};

// output rows {a_out(Omega), a_out^dag(-Omega)} for a pump above resonance
RowPair solve_positive(const SystemParams& sys, double nu);

// output rows {a_out(-Omega), a_out(Omega)} for a pump below resonance
RowPair solve_negative(const SystemParams& sys, double nu);

// dispatch on sys.detuning_sign
RowPair solve(const SystemParams& sys, double nu);

// closed-form homodyne quadrature density; independent of the homodyne angle
// in this limit
SpectrumPoint spectral_density_closed(const SystemParams& sys, double nu);

// the same density assembled from transfer rows at homodyne angle theta
SpectrumPoint quadrature_spectrum_from_rows(const RowPair& rows, double theta,
                                            double n_t);

// steady-state mechanical energy [J]; throws InstabilityError when a pump
// below resonance reaches the parametric threshold |eta_r| >= gamma_m
double mean_energy_closed(const SystemParams& sys);

}  // namespace omcsim::sideband

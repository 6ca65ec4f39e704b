// fullmodel.hpp — dense three-mode model keeping both optical sidebands and
// the mechanical mode, with no resolved-sideband approximation
#pragma once

#include <complex>

#include <Eigen/Dense>

#include "omcsim/params.hpp"
#include "omcsim/sideband.hpp"

namespace omcsim::fullmodel {

// input channel column order shared by every transfer object below
enum Channel : int {
  kAin = 0,           // a_in(Omega)
  kAinDaggerNeg = 1,  // a_in^dag(-Omega)
  kBth = 2,           // b_th
  kForce = 3,         // external force drive
};
inline constexpr int kChannels = 4;

// linear system  matrix * u = input_map * n  for u = (a(Omega), a^dag(-Omega), b)
struct FullSystem {
  Eigen::Matrix3cd matrix;
  Eigen::Matrix<std::complex<double>, 3, kChannels> input_map;
  double omega = 0.0;  // absolute sideband frequency [rad/s], > 0
  double delta = 0.0;  // pump detuning from cavity resonance [rad/s]
};

// internal modes and the two output rows a_out(Omega), a_out^dag(-Omega)
struct TransferMatrix {
  double omega = 0.0;
  double delta = 0.0;
  Eigen::Matrix<std::complex<double>, 2, kChannels> out;
  Eigen::Matrix<std::complex<double>, 3, kChannels> internal;  // row 2 is the mechanical mode
  double condition = 0.0;  // SVD condition number of the system matrix
};

FullSystem assemble(const SystemParams& sys, double omega, double delta);

// direct dense solve; throws InstabilityError when the system matrix is
// degenerate (condition number beyond kConditionLimit)
TransferMatrix solve_transfer(const SystemParams& sys, double omega, double delta);

// homodyne quadrature density at angle theta; the returned nu is omega - omega_m
sideband::SpectrumPoint quadrature_spectrum(const SystemParams& sys, double omega,
                                            double delta, double theta);

struct IntegrationGrid {
  double half_bandwidth = 0.0;  // [rad/s]; 0 selects 50 pumped linewidths
  int initial_points = 2049;    // odd trapezoid node count of the first pass
  double rel_tol = 1e-6;
  int max_refinements = 40;     // resolution plus bandwidth doublings
};

// steady-state phonon occupation from the normal-ordered output of the
// mechanical row, integrated over positive frequencies; throws
// InstabilityError below the parametric threshold margin and AccuracyError
// when refinement stalls
double mean_phonon_number(const SystemParams& sys, double delta,
                          const IntegrationGrid& grid = {});

// hbar * omega_m * (mean phonon number + 1/2)  [J]
double mean_energy_numeric(const SystemParams& sys, double delta,
                           const IntegrationGrid& grid = {});

}  // namespace omcsim::fullmodel

#include "omcsim/metrology.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "omcsim/constants.hpp"

namespace omcsim::metrology {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

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

double band_half_width(double delta_omega, BandConvention band) {
  return band == BandConvention::symmetric ? 0.5 * delta_omega : delta_omega;
}

// golden-section minimum of fn on [lo, hi] to relative tolerance rel_tol
template <class F>
double golden_min(F&& fn, double lo, double hi, double rel_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > rel_tol * (std::abs(x1) + std::abs(x2))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double force_referred_spectrum(const SystemParams& sys, double nu) {
  sys.validate();
  if (!std::isfinite(nu)) throw DomainError("nu", "must be finite");
  const Eta e = eta(sys, nu);
  const double er = e.real();
  if (er == 0.0) {
    throw DomainError("g0", "zero pump has no force responsivity");
  }
  if (sys.detuning_sign > 0) {
    const std::complex<double> den = sys.gamma_m + e.value - kI * nu;
    return std::norm(den) / (4.0 * er) + sys.gamma_m * sys.n_t;
  }
  const double mag = -er;
  if (mag >= sys.gamma_m) {
    throw InstabilityError("pump below resonance at or beyond the parametric threshold",
                           mag);
  }
  const std::complex<double> den = sys.gamma_m + e.value + kI * nu;
  return std::norm(den) / (4.0 * mag) + sys.gamma_m * (sys.n_t + 1.0);
}

double force_referred_closed(double eta_r, double gamma_m, double n_t, double nu) {
  require_positive(eta_r, "eta_r");
  require_nonnegative(gamma_m, "gamma_m");
  require_nonnegative(n_t, "n_t");
  if (!std::isfinite(nu)) throw DomainError("nu", "must be finite");
  const double w = gamma_m + eta_r;
  return (w * w + nu * nu) / (4.0 * eta_r) + gamma_m * n_t;
}

double detection_threshold(const SystemParams& sys, double delta_omega,
                           BandConvention band) {
  require_positive(delta_omega, "delta_omega");
  const double w = band_half_width(delta_omega, band);
  // composite Simpson with doubling; the integrand is a smooth low-order
  // rational, so this converges almost immediately
  const auto integral = [&](int n) {
    const double h = 2.0 * w / static_cast<double>(n);
    double acc = force_referred_spectrum(sys, -w) + force_referred_spectrum(sys, w);
    for (int i = 1; i < n; ++i) {
      const double x = -w + h * static_cast<double>(i);
      acc += force_referred_spectrum(sys, x) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
  };
  int n = 64;
  double value = integral(n);
  for (int step = 0; step < 24; ++step) {
    n *= 2;
    const double fine = integral(n);
    const double scale = std::max({std::abs(fine), std::abs(value), 1e-300});
    if (std::abs(fine - value) <= 1e-12 * scale) {
      return 2.0 * fine / (2.0 * std::numbers::pi);
    }
    value = fine;
  }
  throw AccuracyError("band integral of the force-referred density did not converge");
}

double detection_threshold_closed(double eta_r, double gamma_m, double n_t,
                                  double delta_omega, BandConvention band) {
  require_positive(eta_r, "eta_r");
  require_nonnegative(gamma_m, "gamma_m");
  require_nonnegative(n_t, "n_t");
  require_positive(delta_omega, "delta_omega");
  const double w = band_half_width(delta_omega, band);
  const double s0 = gamma_m + eta_r;
  return (w / std::numbers::pi) *
         (s0 * s0 / (2.0 * eta_r) + 2.0 * gamma_m * n_t + w * w / (6.0 * eta_r));
}

double detection_threshold_series(double eta_r, double delta_omega) {
  require_positive(eta_r, "eta_r");
  require_positive(delta_omega, "delta_omega");
  return (0.5 * eta_r + delta_omega * delta_omega / (6.0 * eta_r)) * delta_omega /
         (2.0 * std::numbers::pi);
}

EtaOptimum optimize_eta(double gamma_m, double n_t, double delta_omega,
                        BandConvention band, bool series_branch) {
  require_nonnegative(gamma_m, "gamma_m");
  require_nonnegative(n_t, "n_t");
  require_positive(delta_omega, "delta_omega");
  const auto objective = [&](double eta_r) {
    return series_branch
               ? detection_threshold_series(eta_r, delta_omega)
               : detection_threshold_closed(eta_r, gamma_m, n_t, delta_omega, band);
  };

  // decade scan to bracket a local minimum, then golden-section refinement
  const double scale = std::max(gamma_m, delta_omega);
  std::vector<std::pair<double, double>> profile;
  const int per_decade = 4;
  const int decades = 16;
  for (int i = 0; i <= decades * per_decade; ++i) {
    const double x =
        scale * std::pow(10.0, -8.0 + static_cast<double>(i) / per_decade);
    profile.emplace_back(x, objective(x));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i].second < profile[best].second) best = i;
  }
  if (best == 0 || best + 1 == profile.size()) {
    throw OptimizationError("no interior minimum of the detection threshold",
                            std::move(profile));
  }
  const double eta_r =
      golden_min(objective, profile[best - 1].first, profile[best + 1].first, 1e-6);
  return {eta_r, objective(eta_r)};
}

SqlResult sql_force(double mass, double omega_m, double tau, BandConvention band) {
  require_positive(mass, "mass");
  require_positive(omega_m, "omega_m");
  require_positive(tau, "tau");
  SqlResult out;
  out.tau = tau;
  out.delta_omega = 2.0 * std::numbers::pi / tau;
  out.band = band;
  const auto fill = [&](bool series) {
    const EtaOptimum opt = optimize_eta(0.0, 0.0, out.delta_omega, band, series);
    SqlBranch b;
    b.eta_r = opt.eta_r;
    b.f0 = std::sqrt(opt.f0_sq);
    b.force = force_si_peak(b.f0, mass, omega_m);
    b.xi = b.f0 * tau;
    return b;
  };
  out.exact = fill(false);
  out.series = fill(true);
  return out;
}

ThermalForce thermal_force(double mass, double omega_m, double gamma_m, double n_t,
                           double tau) {
  require_positive(mass, "mass");
  require_positive(omega_m, "omega_m");
  require_positive(gamma_m, "gamma_m");
  require_nonnegative(n_t, "n_t");
  require_positive(tau, "tau");
  ThermalForce out;
  out.force = std::sqrt(4.0 * kHbar * mass * omega_m * gamma_m * (n_t + 1.0) / tau);
  out.regime_ok = gamma_m * tau <= 1.0;
  return out;
}

double force_si_envelope(double f, double mass, double omega_m) {
  require_positive(mass, "mass");
  require_positive(omega_m, "omega_m");
  require_nonnegative(f, "f");
  return f * std::sqrt(kHbar * omega_m * mass);
}

double force_si_peak(double f, double mass, double omega_m) {
  require_positive(mass, "mass");
  require_positive(omega_m, "omega_m");
  require_nonnegative(f, "f");
  return f * std::sqrt(2.0 * kHbar * mass * omega_m);
}

}  // namespace omcsim::metrology

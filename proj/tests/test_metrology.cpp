// force-referred noise, band thresholds, pump optimization, minimal forces
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "omcsim/constants.hpp"
#include "omcsim/metrology.hpp"
#include "omcsim/sideband.hpp"

using namespace omcsim;
using namespace omcsim::metrology;

namespace {

SystemParams make_system(int sign, double eta_r_mag, double n_t = 0.0,
                         double gamma_m = 1e-2) {
  SystemParams sys;
  sys.gamma = 1.0;
  sys.gamma_m = gamma_m;
  sys.omega_m = 1e3;
  sys.g0 = std::sqrt(eta_r_mag * sys.gamma);
  sys.n_t = n_t;
  sys.detuning_sign = sign;
  return sys;
}

}  // namespace

TEST_CASE("band-center force noise at matched damping is gamma_m (1 + n_t)") {
  const SystemParams sys = make_system(+1, 1e-2, 4.0);  // eta_r = gamma_m
  CHECK(force_referred_spectrum(sys, 0.0) == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("band-center force noise at strong pump approaches gamma / 4") {
  const SystemParams sys = make_system(+1, 1.0, 0.0, 1e-300);
  CHECK(force_referred_spectrum(sys, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("force noise equals quadrature noise over the force responsivity") {
  for (int sign : {+1, -1}) {
    const double mag = sign > 0 ? 0.5 : 4e-3;  // keep the heating pump stable
    const SystemParams sys = make_system(sign, mag, 7.0);
    for (double nu : {0.0, 3e-3, -0.4}) {
      const auto rows = sideband::solve(sys, nu);
      const double s_y =
          sideband::quadrature_spectrum_from_rows(rows, 0.9, sys.n_t).s_y;
      const double referred = s_y / std::norm(rows.first.c_f);
      CHECK(referred ==
            doctest::Approx(force_referred_spectrum(sys, nu)).epsilon(1e-12));
    }
  }
}

TEST_CASE("force noise refuses a dead or unstable pump") {
  const SystemParams dead = make_system(+1, 0.0);
  try {
    force_referred_spectrum(dead, 0.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.field()) == "g0");
  }
  const SystemParams at = make_system(-1, 1e-2);  // |eta_r| = gamma_m
  CHECK_THROWS_AS(force_referred_spectrum(at, 0.0), InstabilityError);
  const SystemParams beyond = make_system(-1, 2e-2);
  CHECK_THROWS_AS(force_referred_spectrum(beyond, 0.0), InstabilityError);
  const SystemParams under = make_system(-1, 0.99e-2);
  CHECK_NOTHROW(force_referred_spectrum(under, 0.0));
  CHECK_THROWS_AS(
      force_referred_spectrum(under, std::numeric_limits<double>::quiet_NaN()),
      DomainError);
}

TEST_CASE("closed force noise matches the generic path near the band center") {
  const SystemParams sys = make_system(+1, 2e-3, 3.0, 1e-3);
  const double closed = force_referred_closed(2e-3, 1e-3, 3.0, 0.0);
  CHECK(force_referred_spectrum(sys, 0.0) == doctest::Approx(closed).epsilon(1e-14));
}

TEST_CASE("numeric band threshold converges to the closed expression") {
  const SystemParams sys = make_system(+1, 2e-3, 3.0, 1e-3);
  for (auto band : {BandConvention::symmetric, BandConvention::full_width}) {
    const double numeric = detection_threshold(sys, 1e-4, band);
    const double closed = detection_threshold_closed(2e-3, 1e-3, 3.0, 1e-4, band);
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-7));
  }
}

TEST_CASE("closed band threshold equals the brute-force band integral") {
  const double eta_r = 3e-3, gamma_m = 1e-3, n_t = 6.0, delta_omega = 2e-3;
  for (auto band : {BandConvention::symmetric, BandConvention::full_width}) {
    const double w =
        band == BandConvention::symmetric ? 0.5 * delta_omega : delta_omega;
    // Simpson is exact for this quadratic integrand
    const int n = 8;
    const double h = 2.0 * w / n;
    double acc = force_referred_closed(eta_r, gamma_m, n_t, -w) +
                 force_referred_closed(eta_r, gamma_m, n_t, w);
    for (int i = 1; i < n; ++i) {
      acc += force_referred_closed(eta_r, gamma_m, n_t, -w + h * i) *
             (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double brute = 2.0 * (acc * h / 3.0) / (2.0 * std::numbers::pi);
    CHECK(detection_threshold_closed(eta_r, gamma_m, n_t, delta_omega, band) ==
          doctest::Approx(brute).epsilon(1e-13));
  }
}

TEST_CASE("narrow bands reduce the threshold to the flat-noise limit") {
  const double eta_r = 0.1, delta_omega = 1e-5;
  const double flat = eta_r * delta_omega / (4.0 * std::numbers::pi);
  CHECK(detection_threshold_closed(eta_r, 0.0, 0.0, delta_omega,
                                   BandConvention::symmetric) ==
        doctest::Approx(flat).epsilon(1e-8));
  CHECK(detection_threshold_series(eta_r, delta_omega) ==
        doctest::Approx(flat).epsilon(1e-8));
}

TEST_CASE("threshold minimization lands on the closed-form optimum") {
  const double gamma_m = 2e-3, delta_omega = 5e-3;
  const EtaOptimum sym = optimize_eta(gamma_m, 0.0, delta_omega);
  CHECK(sym.eta_r ==
        doctest::Approx(std::sqrt(gamma_m * gamma_m +
                                  delta_omega * delta_omega / 12.0))
            .epsilon(1e-5));
  CHECK(sym.f0_sq == doctest::Approx(detection_threshold_closed(
                                         sym.eta_r, gamma_m, 0.0, delta_omega,
                                         BandConvention::symmetric))
                         .epsilon(1e-15));
  const EtaOptimum full =
      optimize_eta(gamma_m, 0.0, delta_omega, BandConvention::full_width);
  CHECK(full.eta_r ==
        doctest::Approx(
            std::sqrt(gamma_m * gamma_m + delta_omega * delta_omega / 3.0))
            .epsilon(1e-5));
  const EtaOptimum series = optimize_eta(gamma_m, 0.0, delta_omega,
                                         BandConvention::symmetric, true);
  CHECK(series.eta_r ==
        doctest::Approx(delta_omega / std::sqrt(3.0)).epsilon(1e-5));
  // bath occupation shifts the floor, not the argmin
  const EtaOptimum hot = optimize_eta(gamma_m, 40.0, delta_omega);
  CHECK(hot.eta_r == doctest::Approx(sym.eta_r).epsilon(1e-5));
  CHECK(hot.f0_sq > sym.f0_sq);
}

TEST_CASE("damping-free minimal force reaches the frozen figures of merit") {
  const double mass = 1e-6, omega_m = 2.0 * std::numbers::pi * 1e4, tau = 1e-2;
  const SqlResult r = sql_force(mass, omega_m, tau);
  CHECK(r.delta_omega == doctest::Approx(2.0 * std::numbers::pi / tau).epsilon(1e-15));
  // xi = f0 tau is a pure number for every branch
  CHECK(r.exact.xi ==
        doctest::Approx(std::sqrt(std::numbers::pi / std::sqrt(3.0)))
            .epsilon(1e-6));
  CHECK(r.series.xi ==
        doctest::Approx(std::sqrt(2.0 * std::numbers::pi / std::sqrt(3.0)))
            .epsilon(1e-6));
  CHECK(r.exact.eta_r ==
        doctest::Approx(std::numbers::pi / (tau * std::sqrt(3.0))).epsilon(1e-5));
  CHECK(r.series.eta_r ==
        doctest::Approx(r.delta_omega / std::sqrt(3.0)).epsilon(1e-5));
  CHECK(r.exact.force ==
        doctest::Approx(r.exact.f0 * std::sqrt(2.0 * kHbar * mass * omega_m))
            .epsilon(1e-12));
  CHECK(r.series.f0 > r.exact.f0);  // the series branch overestimates

  const SqlResult fw = sql_force(mass, omega_m, tau, BandConvention::full_width);
  CHECK(fw.exact.xi ==
        doctest::Approx(std::sqrt(4.0 * std::numbers::pi / std::sqrt(3.0)))
            .epsilon(1e-6));
  CHECK(fw.exact.xi > 1.0);
  CHECK(fw.exact.xi < 3.0);
}

TEST_CASE("thermal floor follows the fluctuation-dissipation estimate") {
  const double mass = 1e-9, omega_m = 1e6, gamma_m = 10.0, n_t = 99.0, tau = 1e-3;
  const ThermalForce t = thermal_force(mass, omega_m, gamma_m, n_t, tau);
  CHECK(t.force ==
        doctest::Approx(std::sqrt(4.0 * kHbar * mass * omega_m * gamma_m * 100.0 /
                                  tau))
            .epsilon(1e-15));
  CHECK(t.regime_ok);  // gamma_m tau = 1e-2
  CHECK(thermal_force(mass, omega_m, 1.0, n_t, 1.0).regime_ok);
  CHECK_FALSE(thermal_force(mass, omega_m, 1.0, n_t, 1.0 + 1e-12).regime_ok);
}

TEST_CASE("SI force referrals differ by the envelope-to-peak factor") {
  const double f = 3.7, mass = 1e-6, omega_m = 1e5;
  const double envelope = force_si_envelope(f, mass, omega_m);
  const double peak = force_si_peak(f, mass, omega_m);
  CHECK(envelope == doctest::Approx(f * std::sqrt(kHbar * omega_m * mass))
                        .epsilon(1e-15));
  CHECK(peak == doctest::Approx(envelope * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("metrology inputs are validated") {
  const SystemParams sys = make_system(+1, 1e-2);
  CHECK_THROWS_AS(detection_threshold(sys, 0.0), DomainError);
  CHECK_THROWS_AS(detection_threshold(sys, -1.0), DomainError);
  CHECK_THROWS_AS(force_referred_closed(0.0, 1e-3, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(force_referred_closed(1e-3, -1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(force_referred_closed(1e-3, 1e-3, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(detection_threshold_closed(1e-3, 1e-3, 0.0, 0.0,
                                             BandConvention::symmetric),
                  DomainError);
  CHECK_THROWS_AS(detection_threshold_series(1e-3, -1.0), DomainError);
  CHECK_THROWS_AS(optimize_eta(-1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(optimize_eta(1e-3, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(sql_force(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(sql_force(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(sql_force(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(thermal_force(1.0, 1.0, 0.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(thermal_force(1.0, 1.0, 1.0, -2.0, 1.0), DomainError);
  CHECK_THROWS_AS(force_si_peak(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(force_si_envelope(1.0, 0.0, 1.0), DomainError);
}

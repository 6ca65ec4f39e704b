// parameter reduction, ponderomotive response and regime checks
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "omcsim/constants.hpp"
#include "omcsim/params.hpp"

using namespace omcsim;

namespace {

LabParams reference_lab() {
  LabParams lab;
  lab.mass = 1e-3;
  lab.length = 1.0;
  lab.omega_m = 1e5;
  lab.gamma_m = 0.1;
  lab.transmission = 2e-3;
  lab.power = 1e-3;
  lab.wavevector = 1e7;
  lab.n_t = 12.0;
  lab.detuning_sign = +1;
  return lab;
}

SystemParams reference_system(int sign, double eta_r_mag) {
  SystemParams sys;
  sys.gamma = 1.0;
  sys.gamma_m = 1e-2;
  sys.omega_m = 1e3;
  sys.g0 = std::sqrt(eta_r_mag * sys.gamma);
  sys.n_t = 10.0;
  sys.detuning_sign = sign;
  return sys;
}

}  // namespace

TEST_CASE("cavity half-linewidth from transmission and length") {
  const SystemParams sys = derive_system(reference_lab());
  // T^2 c / (4 L) = 4e-6 * 299792458 / 4, exactly representable
  CHECK(sys.gamma == 299.792458);
}

TEST_CASE("coupling magnitude from bench values") {
  const SystemParams sys = derive_system(reference_lab());
  // k P / (m L w_m) = 1e7 * 1e-3 / (1e-3 * 1 * 1e5) = 100
  CHECK(std::abs(sys.g0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(std::arg(sys.g0) == 0.0);
}

TEST_CASE("zero-point displacement satisfies x0^2 * 2 m w_m = hbar") {
  const LabParams lab = reference_lab();
  const SystemParams sys = derive_system(lab);
  CHECK(sys.x0 * sys.x0 * 2.0 * lab.mass * lab.omega_m ==
        doctest::Approx(kHbar).epsilon(1e-15));
}

TEST_CASE("reduction passes through damping, occupation and detuning sign") {
  LabParams lab = reference_lab();
  lab.detuning_sign = -1;
  const SystemParams sys = derive_system(lab);
  CHECK(sys.gamma_m == lab.gamma_m);
  CHECK(sys.omega_m == lab.omega_m);
  CHECK(sys.n_t == lab.n_t);
  CHECK(sys.detuning_sign == -1);
  CHECK_NOTHROW(sys.validate());
}

TEST_CASE("coupling invariant under joint mass and power scaling") {
  const SystemParams base = derive_system(reference_lab());
  LabParams scaled = reference_lab();
  scaled.mass *= 7.3;
  scaled.power *= 7.3;
  const SystemParams sys = derive_system(scaled);
  CHECK(std::abs(sys.g0) == doctest::Approx(std::abs(base.g0)).epsilon(1e-15));
}

TEST_CASE("zero pump power is a valid reduction") {
  LabParams lab = reference_lab();
  lab.power = 0.0;
  const SystemParams sys = derive_system(lab);
  CHECK(sys.g0 == std::complex<double>{0.0, 0.0});
}

TEST_CASE("reduction rejects nonphysical bench values by field") {
  const auto field_of = [](LabParams lab) -> std::string {
    try {
      derive_system(lab);
    } catch (const DomainError& e) {
      return e.field();
    }
    return "";
  };
  LabParams lab = reference_lab();
  lab.mass = 0.0;
  CHECK(field_of(lab) == "mass");
  lab = reference_lab();
  lab.length = -1.0;
  CHECK(field_of(lab) == "length");
  lab = reference_lab();
  lab.omega_m = 0.0;
  CHECK(field_of(lab) == "omega_m");
  lab = reference_lab();
  lab.gamma_m = -0.5;
  CHECK(field_of(lab) == "gamma_m");
  lab = reference_lab();
  lab.transmission = 0.0;
  CHECK(field_of(lab) == "transmission");
  lab = reference_lab();
  lab.power = -1e-3;
  CHECK(field_of(lab) == "power");
  lab = reference_lab();
  lab.wavevector = 0.0;
  CHECK(field_of(lab) == "wavevector");
  lab = reference_lab();
  lab.n_t = -1.0;
  CHECK(field_of(lab) == "n_t");
  lab = reference_lab();
  lab.detuning_sign = 0;
  CHECK(field_of(lab) == "detuning_sign");
  lab = reference_lab();
  lab.length = std::numeric_limits<double>::quiet_NaN();
  CHECK(field_of(lab) == "length");
}

TEST_CASE("system validation rejects nonphysical values by field") {
  const auto field_of = [](SystemParams sys) -> std::string {
    try {
      sys.validate();
    } catch (const DomainError& e) {
      return e.field();
    }
    return "";
  };
  SystemParams sys = reference_system(+1, 1e-2);
  sys.gamma = 0.0;
  CHECK(field_of(sys) == "gamma");
  sys = reference_system(+1, 1e-2);
  sys.gamma_m = -1.0;
  CHECK(field_of(sys) == "gamma_m");
  sys = reference_system(+1, 1e-2);
  sys.omega_m = std::numeric_limits<double>::infinity();
  CHECK(field_of(sys) == "omega_m");
  sys = reference_system(+1, 1e-2);
  sys.g0 = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK(field_of(sys) == "g0");
  sys = reference_system(+1, 1e-2);
  sys.n_t = -0.1;
  CHECK(field_of(sys) == "n_t");
  sys = reference_system(+1, 1e-2);
  sys.detuning_sign = 2;
  CHECK(field_of(sys) == "detuning_sign");
  sys = reference_system(+1, 1e-2);
  sys.x0 = -1e-18;
  CHECK(field_of(sys) == "x0");
}

TEST_CASE("ponderomotive response, pump above resonance") {
  const SystemParams sys = reference_system(+1, 0.25);
  const Eta at_center = eta(sys, 0.0);
  CHECK(at_center.real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(at_center.imag() == 0.0);
  CHECK(eta_r0(sys) == doctest::Approx(0.25).epsilon(1e-15));

  // damping is positive and halves one linewidth out
  const Eta at_gamma = eta(sys, sys.gamma);
  CHECK(at_gamma.real() == doctest::Approx(0.125).epsilon(1e-14));
  for (double nu : {-3.0, -0.4, 0.7, 2.0}) {
    const Eta e = eta(sys, nu);
    CHECK(e.real() > 0.0);
    // spring shift obeys |eta_i| = eta_r |nu| / gamma
    CHECK(std::abs(e.imag()) ==
          doctest::Approx(e.real() * std::abs(nu) / sys.gamma).epsilon(1e-13));
  }
}

TEST_CASE("ponderomotive response flips to heating below resonance") {
  const SystemParams above = reference_system(+1, 0.25);
  SystemParams below = above;
  below.detuning_sign = -1;
  CHECK(eta_r0(below) == doctest::Approx(-0.25).epsilon(1e-15));
  for (double nu : {-2.0, -0.3, 0.0, 0.5, 4.0}) {
    const std::complex<double> plus = eta(above, nu).value;
    const std::complex<double> minus = eta(below, nu).value;
    // eta_-(nu) = -conj(eta_+(nu))
    CHECK(std::abs(minus + std::conj(plus)) < 1e-15 * std::abs(plus));
    CHECK(eta(below, nu).real() < 0.0);
  }
}

TEST_CASE("response rejects a non-finite offset") {
  const SystemParams sys = reference_system(+1, 0.25);
  CHECK_THROWS_AS(eta(sys, std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("resolved-sideband check passes at the stated margins") {
  SystemParams sys = reference_system(+1, 1e-2);
  sys.gamma = 1.0;
  sys.gamma_m = 1e-2;  // gamma = 100 gamma_m
  sys.omega_m = 100.0;  // omega_m = 100 gamma
  const SidebandCheck check = validate_resolved_sideband(sys, 100.0);
  CHECK(check.pass);
  CHECK(check.damping_resolved);
  CHECK(check.sideband_resolved);
  CHECK(check.gamma_over_gamma_m == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(check.omega_m_over_gamma == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(check.min_ratio == 100.0);
}

TEST_CASE("resolved-sideband check fails the violated branch only") {
  SystemParams sys = reference_system(+1, 1e-2);
  sys.gamma = 1.0;
  sys.gamma_m = 1.0 / 99.0;  // just under 100x
  sys.omega_m = 1e3;
  const SidebandCheck check = validate_resolved_sideband(sys);
  CHECK_FALSE(check.pass);
  CHECK_FALSE(check.damping_resolved);
  CHECK(check.sideband_resolved);
}

TEST_CASE("resolved-sideband check rejects a degenerate ratio") {
  const SystemParams sys = reference_system(+1, 1e-2);
  CHECK_THROWS_AS(validate_resolved_sideband(sys, 1.0), DomainError);
  CHECK_THROWS_AS(validate_resolved_sideband(sys, -5.0), DomainError);
}

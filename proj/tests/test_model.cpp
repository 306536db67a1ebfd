#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "floq/constants.hpp"
#include "floq/model.hpp"

namespace {

floq::LadderSystem four_level_system() {
  floq::LadderSystem s;
  s.level_energies_eV = {0.0, 1.0, 2.3, 3.1};
  s.parities = {floq::Parity::Even, floq::Parity::Odd, floq::Parity::Even,
                floq::Parity::Odd};
  s.couplings_rad_s = {8.4e13, 4.0e13, 6.0e13};
  return s;
}

} // namespace

TEST_SUITE("model") {

using namespace floq;

TEST_CASE("canonical system carries the documented parameters") {
  const LadderSystem s = canonical_system();
  REQUIRE(s.level_count() == 3);
  CHECK(s.level_energies_eV[0] == 0.0);
  CHECK(s.level_energies_eV[1] == 2.61);
  CHECK(s.level_energies_eV[2] == 2.68);
  CHECK(s.parities[0] == Parity::Even);
  CHECK(s.parities[1] == Parity::Odd);
  CHECK(s.parities[2] == Parity::Even);
  REQUIRE(s.couplings_rad_s.size() == 2);
  CHECK(s.couplings_rad_s[0] == 8.4e13);
  CHECK(s.couplings_rad_s[1] == doctest::Approx(0.44 * 8.4e13).epsilon(1e-15));
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("derived energies of the canonical system") {
  const LadderSystem s = canonical_system();
  CHECK(s.transition_energy_eV() == doctest::Approx(2.61).epsilon(1e-15));
  // b as an energy, and the perturbative ratio b/omega_0 ~ 0.021.
  const double b_eV = s.coupling_energy_eV(0);
  CHECK(b_eV == doctest::Approx(8.4e13 * constants::hbar_eV_s).epsilon(1e-14));
  CHECK(b_eV / s.transition_energy_eV() == doctest::Approx(0.0212).epsilon(2e-3));
  CHECK(s.coupling_energy_eV(1) == doctest::Approx(0.44 * b_eV).epsilon(1e-14));
  // Spectral center is the midpoint of min/max level energies.
  CHECK(s.spectral_center_eV() == doctest::Approx(1.34).epsilon(1e-15));
}

TEST_CASE("norm bounds dominate the actual Hamiltonian norm") {
  const LadderSystem s = canonical_system();
  DriveSpec d;
  d.photon_energy_eV = 0.87;
  d.amplitude_scale = 1.0;
  const double bound = s.hamiltonian_norm_bound_eV(1.0);
  const double centered = s.centered_norm_bound_eV(1.0);
  for (int i = 0; i <= 40; ++i) {
    const double t = d.period_internal() * static_cast<double>(i) / 40.0;
    const Eigen::MatrixXcd h = hamiltonian_at(s, d, t);
    CHECK(h.cwiseAbs().rowwise().sum().maxCoeff() <= bound + 1e-12);
    const Eigen::MatrixXcd hc =
        h - s.spectral_center_eV() *
                Eigen::MatrixXcd::Identity(h.rows(), h.cols());
    CHECK(hc.cwiseAbs().rowwise().sum().maxCoeff() <= centered + 1e-12);
  }
}

TEST_CASE("Hamiltonian matrix elements at characteristic times") {
  const LadderSystem s = canonical_system();
  DriveSpec d;
  d.photon_energy_eV = 0.87;
  d.amplitude_scale = 1.0;

  // sin carrier: the drive vanishes at t = 0, leaving the bare diagonal.
  const Eigen::MatrixXcd h0 = hamiltonian_at(s, d, 0.0);
  CHECK(std::abs(h0(0, 0)) == 0.0);
  CHECK(h0(1, 1).real() == doctest::Approx(2.61).epsilon(1e-15));
  CHECK(h0(2, 2).real() == doctest::Approx(2.68).epsilon(1e-15));
  CHECK(std::abs(h0(0, 1)) < 1e-15);
  CHECK(std::abs(h0(1, 2)) < 1e-15);

  // At a quarter period the carrier is at its crest: off-diagonal = 2 b_k.
  const double t_quarter = 0.25 * d.period_internal();
  const Eigen::MatrixXcd hq = hamiltonian_at(s, d, t_quarter);
  CHECK(hq(0, 1).real() ==
        doctest::Approx(2.0 * s.coupling_energy_eV(0)).epsilon(1e-12));
  CHECK(hq(1, 2).real() ==
        doctest::Approx(2.0 * 0.44 * s.coupling_energy_eV(0)).epsilon(1e-12));

  // Nearest-neighbor only: no direct 0 <-> 2 matrix element, ever.
  for (int i = 0; i <= 16; ++i) {
    const double t = d.period_internal() * static_cast<double>(i) / 16.0;
    const Eigen::MatrixXcd h = hamiltonian_at(s, d, t);
    CHECK(std::abs(h(0, 2)) == 0.0);
    CHECK(std::abs(h(2, 0)) == 0.0);
    // Hermitian at all times.
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("drive contribution is traceless and periodic") {
  const LadderSystem s = canonical_system();
  DriveSpec d;
  d.photon_energy_eV = 0.87;
  d.amplitude_scale = 0.7;
  d.carrier_phase_rad = 0.3;

  const double bare_trace = 0.0 + 2.61 + 2.68;
  const double period = d.period_internal();
  for (int i = 0; i < 7; ++i) {
    const double t = 0.77 * static_cast<double>(i);
    const Eigen::MatrixXcd h = hamiltonian_at(s, d, t);
    // Only the off-diagonals oscillate, so the trace stays at the bare value.
    CHECK(h.trace().real() == doctest::Approx(bare_trace).epsilon(1e-14));
    CHECK(std::abs(h.trace().imag()) < 1e-15);
    // Exact time periodicity H(t + T) = H(t).
    const Eigen::MatrixXcd hp = hamiltonian_at(s, d, t + period);
    CHECK((h - hp).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("amplitude scale multiplies only the off-diagonals") {
  const LadderSystem s = canonical_system();
  DriveSpec d1;
  d1.photon_energy_eV = 0.87;
  d1.amplitude_scale = 1.0;
  DriveSpec d2 = d1;
  d2.amplitude_scale = 0.25;
  const double t = 1.234;
  const Eigen::MatrixXcd h1 = hamiltonian_at(s, d1, t);
  const Eigen::MatrixXcd h2 = hamiltonian_at(s, d2, t);
  CHECK(std::abs(h2(0, 1) - 0.25 * h1(0, 1)) < 1e-15);
  CHECK(std::abs(h2(1, 2) - 0.25 * h1(1, 2)) < 1e-15);
  CHECK(std::abs(h2(1, 1) - h1(1, 1)) < 1e-15);
}

TEST_CASE("four- and five-level ladders construct and validate") {
  const LadderSystem s4 = four_level_system();
  CHECK_NOTHROW(s4.validate());
  DriveSpec d;
  d.photon_energy_eV = 0.4;
  const Eigen::MatrixXcd h = hamiltonian_at(s4, d, 0.9);
  CHECK(h.rows() == 4);
  CHECK(std::abs(h(0, 2)) == 0.0);
  CHECK(std::abs(h(0, 3)) == 0.0);
  CHECK(std::abs(h(1, 3)) == 0.0);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  LadderSystem s5 = s4;
  s5.level_energies_eV.push_back(3.9);
  s5.parities.push_back(Parity::Even);
  s5.couplings_rad_s.push_back(3.0e13);
  CHECK_NOTHROW(s5.validate());
}

TEST_CASE("system validation rejects structural problems") {
  LadderSystem s = canonical_system();
  SUBCASE("too few levels") {
    s.level_energies_eV = {0.0};
    s.parities = {Parity::Even};
    s.couplings_rad_s = {};
    CHECK_THROWS(s.validate());
  }
  SUBCASE("non-increasing energies") {
    s.level_energies_eV = {0.0, 2.68, 2.61};
    CHECK_THROWS(s.validate());
  }
  SUBCASE("parity count mismatch") {
    s.parities = {Parity::Even, Parity::Odd};
    CHECK_THROWS(s.validate());
  }
  SUBCASE("non-alternating parities") {
    s.parities = {Parity::Even, Parity::Even, Parity::Odd};
    CHECK_THROWS(s.validate());
  }
  SUBCASE("coupling count mismatch") {
    s.couplings_rad_s = {8.4e13};
    CHECK_THROWS(s.validate());
  }
  SUBCASE("negative coupling") {
    s.couplings_rad_s = {8.4e13, -1.0};
    CHECK_THROWS(s.validate());
  }
}

TEST_CASE("drive validation rejects non-physical drives") {
  DriveSpec d;
  SUBCASE("zero photon energy") {
    d.photon_energy_eV = 0.0;
    CHECK_THROWS(d.validate());
  }
  SUBCASE("negative amplitude scale") {
    d.photon_energy_eV = 0.87;
    d.amplitude_scale = -1.0;
    CHECK_THROWS(d.validate());
  }
  SUBCASE("pulse without duration") {
    d.kind = DriveKind::GaussianPulse;
    d.photon_energy_eV = 0.87;
    d.duration_fwhm_s = 0.0;
    CHECK_THROWS(d.validate());
  }
}

TEST_CASE("pulse drives are rejected by the monochromatic Hamiltonian") {
  const LadderSystem s = canonical_system();
  DriveSpec d;
  d.kind = DriveKind::GaussianPulse;
  d.photon_energy_eV = 0.87;
  d.duration_fwhm_s = 1e-13;
  CHECK_THROWS_AS(hamiltonian_at(s, d, 0.0), std::invalid_argument);
}

TEST_CASE("carrier period follows the photon energy") {
  DriveSpec d;
  d.photon_energy_eV = 0.87;
  CHECK(d.period_internal() ==
        doctest::Approx(2.0 * constants::pi / 0.87).epsilon(1e-15));
  d.photon_energy_eV = 1.74;
  CHECK(d.period_internal() ==
        doctest::Approx(constants::pi / 0.87).epsilon(1e-15));
}

} // TEST_SUITE

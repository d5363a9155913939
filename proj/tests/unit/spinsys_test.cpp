#include <gtest/gtest.h>

#include "oracles.hpp"
#include "otto/errors.hpp"
#include "otto/spinsys.hpp"

namespace otto {
namespace {

SpinSystem single(double omega_mhz) {
  const double b = 1.0;
  return SpinSystem({{"q", Role::target, mhz_to_rad_per_s(omega_mhz) / b, 1.0}}, {}, b, 300.0);
}

TEST(SpinSystem, TcePresetValues) {
  const SpinSystem sys = tce_preset();
  EXPECT_EQ(sys.labels(), (QubitLabels{"C1", "C2", "H"}));
  EXPECT_NEAR(rad_per_s_to_mhz(sys.omega("C1")), 125.77, 1e-9);
  EXPECT_NEAR(rad_per_s_to_mhz(sys.omega("C2")), 125.77, 1e-9);
  EXPECT_NEAR(rad_per_s_to_mhz(sys.omega("H")), 500.13, 1e-9);
  EXPECT_NEAR(rad_per_s_to_mhz(sys.omega("H", 0.5)), 250.065, 1e-9);
  EXPECT_NEAR(sys.b_field(), 11.7741, 1e-4);
  EXPECT_NEAR(sys.coupling("H", "C2"), hz_to_rad_per_s(200.8), 1e-9);
  EXPECT_EQ(sys.coupling("C1", "C2"), sys.coupling("C2", "C1"));
  EXPECT_EQ(sys.with_role(Role::reset).label, "H");
  EXPECT_DOUBLE_EQ(sys.qubit("C1").t1, 43.0);
  EXPECT_FALSE(sys.has_role(Role::swap_partner));
}

TEST(SpinSystem, Validation) {
  const QubitSpec a{"a", Role::target, 1e7, 1.0};
  const QubitSpec b{"b", Role::reset, 1e7, 1.0};
  EXPECT_THROW(SpinSystem({a, a}, {}, 1.0, 300.0), LabelError);
  EXPECT_THROW(SpinSystem({a}, {}, -1.0, 300.0), InputError);
  EXPECT_THROW(SpinSystem({a}, {}, 1.0, 0.0), InputError);
  EXPECT_THROW(SpinSystem({{"a", Role::target, -1e7, 1.0}}, {}, 1.0, 300.0), InputError);
  EXPECT_THROW(SpinSystem({{"a", Role::target, 1e7, 0.0}}, {}, 1.0, 300.0), InputError);
  EXPECT_THROW(SpinSystem({a, b}, {{coupling_key("a", "a"), 1.0}}, 1.0, 300.0), InputError);
  EXPECT_THROW(SpinSystem({a, b}, {{coupling_key("a", "z"), 1.0}}, 1.0, 300.0), LabelError);
  EXPECT_THROW(tce_preset().qubit("N"), LabelError);
  EXPECT_THROW(single(100).with_role(Role::reset), LabelError);
}

TEST(Roles, ParseAndPrint) {
  EXPECT_EQ(parse_role("swap-partner"), Role::swap_partner);
  EXPECT_EQ(parse_role("swap_partner"), Role::swap_partner);
  EXPECT_EQ(to_string(Role::compression), "compression");
  EXPECT_THROW(parse_role("spectator"), InputError);
}

TEST(StaticHamiltonian, SingleZeemanTerm) {
  const SpinSystem sys = single(100.0);
  const double w = mhz_to_rad_per_s(100.0);
  const ComplexMatrix h = static_hamiltonian(sys, 1.0);
  EXPECT_NEAR(h(0, 0).real(), -oracle::kHbar * w / 2, 1e-40);
  EXPECT_NEAR(h(1, 1).real(), oracle::kHbar * w / 2, 1e-40);
  EXPECT_EQ(h(0, 1), Complex(0.0));
}

TEST(StaticHamiltonian, TceGroundEntry) {
  const SpinSystem sys = tce_preset();
  const ComplexMatrix h = static_hamiltonian(sys, 1.0);
  const double zeeman = oracle::rad(125.77) * 2 + oracle::rad(500.13);
  const double jsum = 2 * std::numbers::pi * (103 + 9 + 200.8);
  const double want = -oracle::kHbar * zeeman / 2 + oracle::kHbar * jsum / 4;
  EXPECT_NEAR(h(0, 0).real() / want, 1.0, 1e-12);
  EXPECT_TRUE(is_diagonal(h));
  EXPECT_EQ(h.imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(StaticHamiltonian, HalfFieldHalvesZeemanOnly) {
  const SpinSystem sys = tce_preset();
  const SpinSystem bare(sys.qubits(), {}, sys.b_field(), 300.0);
  const ComplexMatrix j_part = static_hamiltonian(sys, 1.0) - static_hamiltonian(bare, 1.0);
  const ComplexMatrix j_half = static_hamiltonian(sys, 0.5) - static_hamiltonian(bare, 0.5);
  EXPECT_TRUE(approx_equal(j_part, j_half, 1e-40));
  EXPECT_TRUE(approx_equal(static_hamiltonian(bare, 0.5), 0.5 * static_hamiltonian(bare, 1.0), 1e-40));
}

TEST(GibbsState, HighTemperatureIsMaximallyMixed) {
  const SpinSystem sys = tce_preset();
  const auto rho = gibbs_state(static_hamiltonian(sys, 1.0), 1e12, sys.labels());
  EXPECT_TRUE(approx_equal(rho.matrix(), ComplexMatrix::Identity(8, 8) / 8.0, 1e-10));
}

TEST(GibbsState, ProtonPolarization) {
  const SpinSystem sys = single(500.13);
  const auto rho = gibbs_state(static_hamiltonian(sys, 1.0), 300.0, sys.labels());
  EXPECT_NEAR(polarization(rho), 4.000e-5, 0.0005e-5);
  EXPECT_NEAR(polarization(rho), oracle::thermal_eps(oracle::rad(500.13), 300.0), 1e-15);
}

TEST(GibbsState, DecreasingPopulationsAndTceTarget) {
  const SpinSystem sys = tce_preset();
  const ComplexMatrix h = static_hamiltonian(sys, 1.0);
  const auto rho = gibbs_state(h, 300.0, sys.labels());
  ASSERT_TRUE(rho.is_diagonal());
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) {
      if (h(i, i).real() < h(j, j).real()) {
        EXPECT_GT(rho.matrix()(i, i).real(), rho.matrix()(j, j).real());
      }
    }
  }
  EXPECT_NEAR(polarization(qubit_marginal(rho, "C1")), 1.006e-5, 0.0005e-5);
}

TEST(GibbsState, NonDiagonalPathAgreesWithRotatedDiagonal) {
  ComplexMatrix h(2, 2);
  h << 1.0, Complex(0.0, 2.0), Complex(0.0, -2.0), -1.0;
  const double scale = oracle::kBoltzmann * 300.0;
  const auto rho = gibbs_state(scale * h, 300.0, {"q"});
  // Eigenvalues +-sqrt(5): populations e^{-+sqrt5} / Z along the eigenvectors.
  const double r = std::sqrt(5.0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.matrix());
  EXPECT_NEAR(eig.eigenvalues()(1), std::exp(r) / (std::exp(r) + std::exp(-r)), 1e-12);
  EXPECT_THROW(gibbs_state(h, -1.0, {"q"}), InputError);
}

TEST(GibbsState, MarginalsTrackThermalPolarization) {
  const SpinSystem sys = tce_preset();
  for (double s : {0.25, 0.5, 1.0, 2.0}) {
    const auto rho = gibbs_state(static_hamiltonian(sys, s), 300.0, sys.labels());
    for (const auto& l : sys.labels()) {
      EXPECT_NEAR(polarization(qubit_marginal(rho, l)), thermal_polarization(sys.omega(l, s), 300.0), 2e-9);
    }
  }
}

TEST(Polarization, Basics) {
  EXPECT_EQ(polarization(DensityMatrix::maximally_mixed({"a"})), 0.0);
  EXPECT_EQ(polarization(DensityMatrix::from_populations(Eigen::Vector2d(1, 0), {"a"})), 1.0);
  EXPECT_THROW(polarization(DensityMatrix::maximally_mixed({"a", "b"})), DimensionError);
}

TEST(ThermalPolarization, ScalarValues) {
  EXPECT_EQ(thermal_polarization(0.0, 300.0), 0.0);
  EXPECT_NEAR(thermal_polarization(mhz_to_rad_per_s(125.77), 300.0), 1.006e-5, 0.0005e-5);
  EXPECT_NEAR(thermal_polarization(mhz_to_rad_per_s(500.13), 300.0), 4.000e-5, 0.0005e-5);
  EXPECT_THROW(thermal_polarization(1.0, 0.0), InputError);
}

TEST(EffectiveTemperature, InverseAndAnchors) {
  const double w = mhz_to_rad_per_s(125.77);
  EXPECT_NEAR(effective_temperature(thermal_polarization(w, 300.0), w) / 300.0, 1.0, 1e-9);
  const double w_half = mhz_to_rad_per_s(62.885);
  EXPECT_NEAR(effective_temperature(3.0e-5, w_half), 50.3, 0.05);
  EXPECT_NEAR(effective_temperature(4.0e-5, w_half), 37.7, 0.05);
  EXPECT_THROW(effective_temperature(0.0, w), InputError);
  EXPECT_THROW(effective_temperature(1.0, w), InputError);
}

TEST(Subsystem, KeepsRequestedOrderAndCouplings) {
  const SpinSystem sys = tce_preset();
  const SpinSystem sub = sys.subsystem({"H", "C1"});
  EXPECT_EQ(sub.labels(), (QubitLabels{"H", "C1"}));
  EXPECT_EQ(sub.coupling("C1", "H"), sys.coupling("C1", "H"));
  EXPECT_EQ(sub.couplings().size(), 1U);
}

}  // namespace
}  // namespace otto

#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otto/qmath.hpp"

namespace otto {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;      // J s
  double k_boltzmann = 1.380649e-23;  // J / K
  double avogadro = 6.02214076e23;    // 1 / mol

  static constexpr PhysicalConstants codata2018() { return {}; }
};

// omega/2pi in MHz -> angular frequency in rad/s.
constexpr double mhz_to_rad_per_s(double mhz) { return 2.0 * std::numbers::pi * 1e6 * mhz; }
constexpr double rad_per_s_to_mhz(double omega) { return omega / (2.0 * std::numbers::pi * 1e6); }
constexpr double hz_to_rad_per_s(double hz) { return 2.0 * std::numbers::pi * hz; }

enum class Role { target, compression, reset, swap_partner };

std::string_view to_string(Role role);
// Accepts "target", "compression", "reset", "swap_partner" (or "swap-partner").
Role parse_role(std::string_view text);

struct QubitSpec {
  std::string label;
  Role role = Role::target;
  double gyromagnetic_ratio = 0.0;  // rad s^-1 T^-1
  double t1 = 0.0;                  // s
};

using CouplingKey = std::pair<std::string, std::string>;

/// An NMR register: ordered spins, scalar couplings, static field, bath.
///
/// Couplings are stored as angular frequencies J (rad/s) keyed by the
/// unordered label pair; missing pairs are uncoupled.
class SpinSystem {
 public:
  SpinSystem(std::vector<QubitSpec> qubits, std::map<CouplingKey, double> couplings, double b_field,
             double bath_temperature, PhysicalConstants constants = PhysicalConstants::codata2018());

  const std::vector<QubitSpec>& qubits() const { return qubits_; }
  QubitLabels labels() const;
  std::size_t size() const { return qubits_.size(); }

  const QubitSpec& qubit(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  bool has_role(Role role) const;
  // First qubit carrying `role`; LabelError when none does.
  const QubitSpec& with_role(Role role) const;

  // Larmor frequency gamma * B * field_scale, rad/s.
  double omega(const std::string& label, double field_scale = 1.0) const;
  double coupling(const std::string& a, const std::string& b) const;
  const std::map<CouplingKey, double>& couplings() const { return couplings_; }

  double b_field() const { return b_field_; }
  double bath_temperature() const { return bath_temperature_; }
  const PhysicalConstants& constants() const { return constants_; }

  // The listed qubits (in the given order) with the couplings among them.
  SpinSystem subsystem(const QubitLabels& keep) const;

 private:
  std::vector<QubitSpec> qubits_;
  std::map<CouplingKey, double> couplings_;
  double b_field_;
  double bath_temperature_;
  PhysicalConstants constants_;
};

CouplingKey coupling_key(const std::string& a, const std::string& b);

/// 13C2-trichloroethylene: C1 target, C2 compression, H reset, bath 300 K.
/// The field is fixed by the proton line (500.13 MHz at 42.477 MHz/T) and the
/// carbon ratios are chosen so that both carbons sit at 125.77 MHz.
SpinSystem tce_preset();

/// Lab-frame Hamiltonian
///   H = -hbar sum_i s*omega_i I_iz + hbar sum_{i<j} J_ij I_iz I_jz
/// with s = field_scale, in register order. Always real diagonal.
ComplexMatrix static_hamiltonian(const SpinSystem& sys, double field_scale);

// -hbar * omega * I_z
ComplexMatrix zeeman_hamiltonian(double omega, double hbar);

/// exp(-H / k_B T) / Z. Diagonal H takes an exact elementwise path.
DensityMatrix gibbs_state(const ComplexMatrix& hamiltonian, double temperature, QubitLabels labels,
                          const PhysicalConstants& constants = PhysicalConstants::codata2018());

DensityMatrix qubit_marginal(const DensityMatrix& rho, const std::string& label);

// rho_00 - rho_11 of a single-qubit state.
double polarization(const DensityMatrix& rho_1q);

// tanh(hbar omega / 2 k_B T)
double thermal_polarization(double omega, double temperature,
                            const PhysicalConstants& constants = PhysicalConstants::codata2018());

// Inverse of thermal_polarization in the temperature argument; epsilon in (0, 1).
double effective_temperature(double epsilon, double omega,
                             const PhysicalConstants& constants = PhysicalConstants::codata2018());

}  // namespace otto

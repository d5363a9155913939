#include "otto/spinsys.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "otto/errors.hpp"

namespace otto {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::target: return "target";
    case Role::compression: return "compression";
    case Role::reset: return "reset";
    case Role::swap_partner: return "swap_partner";
  }
  return "unknown";
}

Role parse_role(std::string_view text) {
  if (text == "target") return Role::target;
  if (text == "compression") return Role::compression;
  if (text == "reset") return Role::reset;
  if (text == "swap_partner" || text == "swap-partner") return Role::swap_partner;
  throw InputError(fmt::format("unknown qubit role '{}'", text));
}

CouplingKey coupling_key(const std::string& a, const std::string& b) {
  return a < b ? CouplingKey{a, b} : CouplingKey{b, a};
}

SpinSystem::SpinSystem(std::vector<QubitSpec> qubits, std::map<CouplingKey, double> couplings,
                       double b_field, double bath_temperature, PhysicalConstants constants)
    : qubits_(std::move(qubits)),
      b_field_(b_field),
      bath_temperature_(bath_temperature),
      constants_(constants) {
  if (qubits_.empty()) throw InputError("spin system has no qubits");
  if (!(b_field_ > 0.0)) throw InputError(fmt::format("field must be positive, got {} T", b_field_));
  if (!(bath_temperature_ > 0.0)) {
    throw InputError(fmt::format("bath temperature must be positive, got {} K", bath_temperature_));
  }
  if (!(constants_.hbar > 0.0 && constants_.k_boltzmann > 0.0 && constants_.avogadro > 0.0)) {
    throw InputError("physical constants must be positive");
  }

  std::set<std::string> seen;
  for (const auto& q : qubits_) {
    if (q.label.empty()) throw InputError("qubit label is empty");
    if (!seen.insert(q.label).second) throw LabelError(fmt::format("duplicate qubit '{}'", q.label));
    if (!(q.gyromagnetic_ratio > 0.0)) {
      throw InputError(fmt::format("qubit '{}': gyromagnetic ratio must be positive", q.label));
    }
    if (!(q.t1 > 0.0)) throw InputError(fmt::format("qubit '{}': T1 must be positive", q.label));
  }

  for (const auto& [key, j] : couplings) {
    const auto& [a, b] = key;
    if (a == b) throw InputError(fmt::format("self-coupling on '{}'", a));
    if (!seen.contains(a) || !seen.contains(b)) {
      throw LabelError(fmt::format("coupling {}-{} names an unknown qubit", a, b));
    }
    if (!std::isfinite(j)) throw InputError(fmt::format("coupling {}-{} is not finite", a, b));
    auto [it, inserted] = couplings_.emplace(coupling_key(a, b), j);
    if (!inserted && it->second != j) {
      throw InputError(fmt::format("coupling {}-{} given twice with different values", a, b));
    }
  }
}

QubitLabels SpinSystem::labels() const {
  QubitLabels out;
  out.reserve(qubits_.size());
  for (const auto& q : qubits_) out.push_back(q.label);
  return out;
}

std::size_t SpinSystem::index_of(const std::string& label) const {
  auto it = std::find_if(qubits_.begin(), qubits_.end(), [&](const QubitSpec& q) { return q.label == label; });
  if (it == qubits_.end()) throw LabelError(fmt::format("spin system has no qubit '{}'", label));
  return static_cast<std::size_t>(it - qubits_.begin());
}

const QubitSpec& SpinSystem::qubit(const std::string& label) const { return qubits_[index_of(label)]; }

bool SpinSystem::has_role(Role role) const {
  return std::any_of(qubits_.begin(), qubits_.end(), [&](const QubitSpec& q) { return q.role == role; });
}

const QubitSpec& SpinSystem::with_role(Role role) const {
  auto it = std::find_if(qubits_.begin(), qubits_.end(), [&](const QubitSpec& q) { return q.role == role; });
  if (it == qubits_.end()) throw LabelError(fmt::format("spin system has no {} qubit", to_string(role)));
  return *it;
}

double SpinSystem::omega(const std::string& label, double field_scale) const {
  return qubit(label).gyromagnetic_ratio * b_field_ * field_scale;
}

double SpinSystem::coupling(const std::string& a, const std::string& b) const {
  auto it = couplings_.find(coupling_key(a, b));
  return it == couplings_.end() ? 0.0 : it->second;
}

SpinSystem SpinSystem::subsystem(const QubitLabels& keep) const {
  std::vector<QubitSpec> qs;
  for (const auto& label : keep) qs.push_back(qubit(label));
  std::map<CouplingKey, double> js;
  for (const auto& [key, j] : couplings_) {
    const bool has_a = std::find(keep.begin(), keep.end(), key.first) != keep.end();
    const bool has_b = std::find(keep.begin(), keep.end(), key.second) != keep.end();
    if (has_a && has_b) js.emplace(key, j);
  }
  return SpinSystem(std::move(qs), std::move(js), b_field_, bath_temperature_, constants_);
}

SpinSystem tce_preset() {
  constexpr double proton_gamma_mhz_per_t = 42.477;
  constexpr double proton_mhz = 500.13;
  constexpr double carbon_mhz = 125.77;
  const double b_field = proton_mhz / proton_gamma_mhz_per_t;
  const double carbon_gamma = mhz_to_rad_per_s(carbon_mhz) / b_field;

  std::vector<QubitSpec> qubits{
      {"C1", Role::target, carbon_gamma, 43.0},
      {"C2", Role::compression, carbon_gamma, 20.0},
      {"H", Role::reset, mhz_to_rad_per_s(proton_gamma_mhz_per_t), 3.5},
  };
  std::map<CouplingKey, double> couplings{
      {coupling_key("C1", "C2"), hz_to_rad_per_s(103.0)},
      {coupling_key("C1", "H"), hz_to_rad_per_s(9.0)},
      {coupling_key("C2", "H"), hz_to_rad_per_s(200.8)},
  };
  return SpinSystem(std::move(qubits), std::move(couplings), b_field, 300.0);
}

ComplexMatrix static_hamiltonian(const SpinSystem& sys, double field_scale) {
  if (!(field_scale > 0.0)) throw InputError("field_scale must be positive");
  const std::size_t n = sys.size();
  const double hbar = sys.constants().hbar;
  const auto& qs = sys.qubits();

  std::vector<double> omegas(n);
  for (std::size_t i = 0; i < n; ++i) omegas[i] = sys.omega(qs[i].label, field_scale);

  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix H = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t b = 0; b < d; ++b) {
    auto m = [&](std::size_t slot) { return ((b >> (n - 1 - slot)) & 1U) ? -0.5 : 0.5; };
    double zeeman = 0.0;
    for (std::size_t i = 0; i < n; ++i) zeeman += omegas[i] * m(i);
    double scalar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        scalar += sys.coupling(qs[i].label, qs[j].label) * m(i) * m(j);
      }
    }
    H(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = hbar * (scalar - zeeman);
  }
  return H;
}

ComplexMatrix zeeman_hamiltonian(double omega, double hbar) { return -hbar * omega * spin_z(); }

DensityMatrix gibbs_state(const ComplexMatrix& hamiltonian, double temperature, QubitLabels labels,
                          const PhysicalConstants& constants) {
  if (!(temperature > 0.0)) throw InputError(fmt::format("temperature must be positive, got {}", temperature));
  const double beta = 1.0 / (constants.k_boltzmann * temperature);

  if (is_diagonal(hamiltonian)) {
    const Eigen::VectorXd energies = hamiltonian.diagonal().real();
    const double e_min = energies.minCoeff();
    Eigen::VectorXd weights = (-beta * (energies.array() - e_min)).exp();
    weights /= weights.sum();
    return DensityMatrix::from_populations(weights, std::move(labels));
  }

  if (!is_hermitian(hamiltonian, kMatrixTolerance * hamiltonian.cwiseAbs().maxCoeff())) {
    throw InputError("gibbs_state requires a Hermitian Hamiltonian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hamiltonian);
  const Eigen::VectorXd energies = eig.eigenvalues();
  Eigen::VectorXd weights = (-beta * (energies.array() - energies.minCoeff())).exp();
  weights /= weights.sum();
  ComplexMatrix rho = eig.eigenvectors() * weights.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho), std::move(labels));
}

DensityMatrix qubit_marginal(const DensityMatrix& rho, const std::string& label) {
  return partial_trace(rho, {label});
}

double polarization(const DensityMatrix& rho_1q) {
  if (rho_1q.num_qubits() != 1) {
    throw DimensionError(fmt::format("polarization needs a single-qubit state, got {} qubits", rho_1q.num_qubits()));
  }
  const Complex diff = rho_1q.matrix()(0, 0) - rho_1q.matrix()(1, 1);
  if (std::abs(diff.imag()) > kMatrixTolerance) {
    throw InvariantError("single-qubit populations carry an imaginary part");
  }
  return diff.real();
}

double thermal_polarization(double omega, double temperature, const PhysicalConstants& constants) {
  if (omega < 0.0) throw InputError("thermal_polarization: omega must be non-negative");
  if (!(temperature > 0.0)) throw InputError("thermal_polarization: temperature must be positive");
  return std::tanh(constants.hbar * omega / (2.0 * constants.k_boltzmann * temperature));
}

double effective_temperature(double epsilon, double omega, const PhysicalConstants& constants) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError(fmt::format("effective_temperature: polarization {} outside (0, 1)", epsilon));
  }
  if (!(omega > 0.0)) throw InputError("effective_temperature: omega must be positive");
  return constants.hbar * omega / (2.0 * constants.k_boltzmann * std::atanh(epsilon));
}

}  // namespace otto

#include "otto/gates.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "otto/errors.hpp"

namespace otto {

namespace {

std::size_t slot_in(const QubitLabels& reg, const std::string& label) {
  auto it = std::find(reg.begin(), reg.end(), label);
  if (it == reg.end()) throw LabelError(fmt::format("qubit '{}' is not in the gate register", label));
  return static_cast<std::size_t>(it - reg.begin());
}

std::size_t bit_of(const QubitLabels& reg, const std::string& label) {
  return reg.size() - 1 - slot_in(reg, label);
}

void require_distinct(std::initializer_list<const std::string*> labels) {
  std::set<std::string> seen;
  for (const auto* l : labels) {
    if (!seen.insert(*l).second) throw LabelError(fmt::format("gate uses qubit '{}' twice", *l));
  }
}

}  // namespace

GateUnitary::GateUnitary(std::string name, QubitLabels acts_on, ComplexMatrix matrix)
    : name_(std::move(name)), acts_on_(std::move(acts_on)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || (Eigen::Index{1} << acts_on_.size()) != matrix_.rows()) {
    throw DimensionError(fmt::format("gate '{}' matrix does not match its {}-qubit register", name_, acts_on_.size()));
  }
  const auto d = matrix_.rows();
  if (!approx_equal(matrix_ * matrix_.adjoint(), ComplexMatrix::Identity(d, d))) {
    throw InvariantError(fmt::format("gate '{}' is not unitary", name_));
  }
  for (Eigen::Index c = 0; c < d; ++c) {
    int ones = 0;
    for (Eigen::Index r = 0; r < d; ++r) {
      const Complex v = matrix_(r, c);
      if (v == Complex{1.0, 0.0}) {
        ++ones;
      } else if (v != Complex{0.0, 0.0}) {
        throw InvariantError(fmt::format("gate '{}' is not a permutation matrix", name_));
      }
    }
    if (ones != 1) throw InvariantError(fmt::format("gate '{}' is not a permutation matrix", name_));
  }
}

std::size_t GateUnitary::map_basis(std::size_t index) const {
  const auto c = static_cast<Eigen::Index>(index);
  if (c >= matrix_.cols()) throw DimensionError("basis index outside the gate register");
  Eigen::Index row = 0;
  matrix_.col(c).cwiseAbs().maxCoeff(&row);
  return static_cast<std::size_t>(row);
}

GateUnitary permutation_gate(std::string name, const QubitLabels& reg,
                             const std::function<std::size_t(std::size_t)>& f) {
  const std::size_t d = std::size_t{1} << reg.size();
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t b = 0; b < d; ++b) {
    const std::size_t image = f(b);
    if (image >= d) throw InputError(fmt::format("gate '{}' maps basis state {} outside the register", name, b));
    m(static_cast<Eigen::Index>(image), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return GateUnitary(std::move(name), reg, std::move(m));
}

GateUnitary compose(const GateUnitary& left, const GateUnitary& right, std::string name) {
  if (left.acts_on() != right.acts_on()) {
    throw LabelError(fmt::format("cannot compose '{}' and '{}' on different registers", left.name(), right.name()));
  }
  return GateUnitary(std::move(name), left.acts_on(), left.matrix() * right.matrix());
}

GateUnitary identity_gate(const QubitLabels& reg) {
  return permutation_gate("I", reg, [](std::size_t b) { return b; });
}

GateUnitary swap_unitary(const QubitLabels& reg, const std::string& a, const std::string& b) {
  require_distinct({&a, &b});
  const std::size_t ba = bit_of(reg, a);
  const std::size_t bb = bit_of(reg, b);
  return permutation_gate(fmt::format("SWAP({},{})", a, b), reg, [=](std::size_t x) {
    const std::size_t va = (x >> ba) & 1U;
    const std::size_t vb = (x >> bb) & 1U;
    if (va == vb) return x;
    return x ^ ((std::size_t{1} << ba) | (std::size_t{1} << bb));
  });
}

GateUnitary cnotnot_unitary(const QubitLabels& reg, const std::string& control, const std::string& target_a,
                            const std::string& target_b) {
  require_distinct({&control, &target_a, &target_b});
  const std::size_t bc = bit_of(reg, control);
  const std::size_t flip = (std::size_t{1} << bit_of(reg, target_a)) | (std::size_t{1} << bit_of(reg, target_b));
  return permutation_gate(fmt::format("CNotNot({};{},{})", control, target_a, target_b), reg,
                          [=](std::size_t x) { return ((x >> bc) & 1U) ? x ^ flip : x; });
}

GateUnitary toffoli_unitary(const QubitLabels& reg, const std::string& control_a, const std::string& control_b,
                            const std::string& target) {
  require_distinct({&control_a, &control_b, &target});
  const std::size_t ca = bit_of(reg, control_a);
  const std::size_t cb = bit_of(reg, control_b);
  const std::size_t flip = std::size_t{1} << bit_of(reg, target);
  return permutation_gate(fmt::format("Toffoli({},{};{})", control_a, control_b, target), reg,
                          [=](std::size_t x) { return (((x >> ca) & (x >> cb)) & 1U) ? x ^ flip : x; });
}

GateUnitary comp_unitary(const QubitLabels& reg, const std::string& target, const std::string& compression,
                         const std::string& reset) {
  require_distinct({&target, &compression, &reset});
  if (reg.size() != 3) {
    throw LabelError(fmt::format("COMP acts on exactly the target, compression and reset qubits; register has {}",
                                 reg.size()));
  }
  const GateUnitary cnn = cnotnot_unitary(reg, target, compression, reset);
  const GateUnitary toffoli = toffoli_unitary(reg, compression, reset, target);
  return compose(compose(cnn, toffoli, "Toffoli*CNotNot"), cnn, "COMP");
}

DensityMatrix apply(const GateUnitary& gate, const DensityMatrix& rho) {
  if (gate.acts_on() != rho.labels()) {
    throw LabelError(fmt::format("gate '{}' register does not match the state register", gate.name()));
  }
  ComplexMatrix out = gate.matrix() * rho.matrix() * gate.matrix().adjoint();
  return DensityMatrix(std::move(out), rho.labels());
}

DensityMatrix reset_channel(const DensityMatrix& rho, const std::string& reset_label,
                            const DensityMatrix& thermal_reset_state) {
  if (thermal_reset_state.num_qubits() != 1) {
    throw DimensionError("thermal reset state must be a single-qubit state");
  }
  rho.slot_of(reset_label);
  ComplexMatrix product = ComplexMatrix::Identity(1, 1);
  for (const auto& label : rho.labels()) {
    if (label == reset_label) {
      product = kron(product, thermal_reset_state.matrix());
      continue;
    }
    // Renormalize so round-off in the trace does not compound across repeated resets.
    const ComplexMatrix marginal = partial_trace(rho, {label}).matrix();
    product = kron(product, marginal / marginal.trace().real());
  }
  return DensityMatrix(std::move(product), rho.labels());
}

}  // namespace otto

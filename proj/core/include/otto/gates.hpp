#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "otto/qmath.hpp"

namespace otto {

/// Ideal instantaneous gate on a labelled register. Every gate in this
/// library is a 0/1 permutation matrix; both unitarity and the permutation
/// structure are checked on construction.
class GateUnitary {
 public:
  GateUnitary(std::string name, QubitLabels acts_on, ComplexMatrix matrix);

  const std::string& name() const { return name_; }
  const QubitLabels& acts_on() const { return acts_on_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  // Image of a computational basis index.
  std::size_t map_basis(std::size_t index) const;

 private:
  std::string name_;
  QubitLabels acts_on_;
  ComplexMatrix matrix_;
};

// Gate sending |b> to |f(b)>; f must be a bijection on [0, 2^n).
GateUnitary permutation_gate(std::string name, const QubitLabels& reg,
                             const std::function<std::size_t(std::size_t)>& f);

// left * right: `right` acts first. Both must share the same register.
GateUnitary compose(const GateUnitary& left, const GateUnitary& right, std::string name);

GateUnitary identity_gate(const QubitLabels& reg);
GateUnitary swap_unitary(const QubitLabels& reg, const std::string& a, const std::string& b);
// Flips both targets when the control is |1>.
GateUnitary cnotnot_unitary(const QubitLabels& reg, const std::string& control, const std::string& target_a,
                            const std::string& target_b);
// Flips the target when both controls are |1>.
GateUnitary toffoli_unitary(const QubitLabels& reg, const std::string& control_a, const std::string& control_b,
                            const std::string& target);

/// 3-bit entropy compression CNotNot * Toffoli * CNotNot, with the CNotNot
/// controlled by the target and flipping compression + reset, and the Toffoli
/// controlled by compression + reset and flipping the target. The register must
/// hold exactly these three qubits. Net effect: |011> <-> |100> in
/// (target, compression, reset) bit order, every other basis state fixed.
GateUnitary comp_unitary(const QubitLabels& reg, const std::string& target, const std::string& compression,
                         const std::string& reset);

// U rho U^dagger. The gate register must equal rho's register, order included.
DensityMatrix apply(const GateUnitary& gate, const DensityMatrix& rho);

/// Thermalizes the reset qubit: returns the product of the single-qubit
/// marginals of all other qubits with `thermal_reset_state` in the reset slot.
/// All correlations are discarded.
DensityMatrix reset_channel(const DensityMatrix& rho, const std::string& reset_label,
                            const DensityMatrix& thermal_reset_state);

}  // namespace otto

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otto/gates.hpp"
#include "otto/qmath.hpp"
#include "otto/spinsys.hpp"

namespace otto {

// Labels of the three qubits the partner pairing algorithm works on.
struct HbacQubits {
  std::string target;
  std::string compression;
  std::string reset;

  static HbacQubits from(const SpinSystem& sys);
  QubitLabels labels() const { return {target, compression, reset}; }
};

struct RoundRecord {
  int round_index = 0;
  double target_polarization = 0.0;
  double reset_polarization = 0.0;
  double target_effective_temperature = 0.0;  // K, at field_scale * omega_target
  DensityMatrix state_after_round;
};

struct PpaTrace {
  std::vector<RoundRecord> rounds;  // rounds[0] is the state after the initial reset + SWAP
  DensityMatrix initial_state;
  DensityMatrix final_target;
  double bath_polarization = 0.0;   // thermal reset polarization (Shannon bound)
  double field_scale = 1.0;

  // First round whose target polarization exceeds the bath polarization.
  std::optional<int> first_round_above_bound() const;
};

// Thermal state of the reset qubit alone, at the bath temperature and
// field_scale * B.
DensityMatrix thermal_reset_state(const SpinSystem& sys, double field_scale);

/// Reset the reset qubit, then SWAP(target, reset). Produces the round-0 state.
DensityMatrix initial_stage(const DensityMatrix& rho1, const SpinSystem& sys, double field_scale);

/// One round: reset, SWAP(compression, reset), reset, COMP.
DensityMatrix ppa_round(const DensityMatrix& state, const SpinSystem& sys, double field_scale);

/// initial_stage followed by n_rounds of ppa_round, recording target and
/// reset polarization and the target's effective temperature after each.
/// `rho1` must be a state on exactly the target, compression and reset
/// qubits of `sys` (any order). When rho1 is diagonal every intermediate
/// state is checked to stay diagonal.
PpaTrace run_ppa(const DensityMatrix& rho1, const SpinSystem& sys, double field_scale, int n_rounds);

}  // namespace otto

#pragma once

#include "otto/qmath.hpp"
#include "otto/spinsys.hpp"

namespace otto {

// Field ratio at the end of the compression stroke (B -> B/2).
inline constexpr double kCompressedFieldScale = 0.5;

enum class StrokeDirection { compression, expansion };

/// A field ramp lasting tau / 2. Compression drives B -> B/2, expansion
/// drives B/2 -> B, both along field_scale(t) = s0 + (s1 - s0) sin(pi t / tau).
struct StrokeSpec {
  StrokeDirection direction = StrokeDirection::compression;
  double tau = 0.1;  // s, full drive period
  double dt = 1e-5;  // s, integration step

  static StrokeSpec with_default_step(StrokeDirection direction, double tau = 0.1);

  double duration() const { return 0.5 * tau; }
  double start_scale() const;
  double end_scale() const;
  // Throws InputError unless tau > 0 and 0 < dt <= tau / 2.
  void validate() const;
};

double drive_field_scale(const StrokeSpec& spec, double t);

/// H(t) = H0 + hbar sum_i (omega_i - omega'_i) I_iz sin(pi t / tau) for the
/// compression ramp (and the mirror ramp for expansion). Couplings are not
/// driven. Endpoints coincide exactly with static_hamiltonian at 1 and 1/2.
ComplexMatrix drive_hamiltonian(const SpinSystem& sys, const StrokeSpec& spec, double t);

/// Integrates the Liouville-von Neumann equation over the stroke. The state
/// register must match the system order. For diagonal input states the
/// populations must come out unchanged to 1e-12 (InvariantError otherwise).
DensityMatrix evolve_stroke(const DensityMatrix& rho, const SpinSystem& sys, const StrokeSpec& spec);

// Tr[H_start rho_start] - Tr[H_end rho_end], J per molecule.
double stroke_work(const ComplexMatrix& h_local_start, const DensityMatrix& rho_local_start,
                   const ComplexMatrix& h_local_end, const DensityMatrix& rho_local_end);

}  // namespace otto

#include "otto/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "otto/errors.hpp"

namespace otto {

StrokeSpec StrokeSpec::with_default_step(StrokeDirection direction, double tau) {
  return StrokeSpec{direction, tau, tau / 1e4};
}

double StrokeSpec::start_scale() const {
  return direction == StrokeDirection::compression ? 1.0 : kCompressedFieldScale;
}

double StrokeSpec::end_scale() const {
  return direction == StrokeDirection::compression ? kCompressedFieldScale : 1.0;
}

void StrokeSpec::validate() const {
  if (!(tau > 0.0)) throw InputError(fmt::format("stroke tau must be positive, got {}", tau));
  if (!(dt > 0.0 && dt <= duration())) {
    throw InputError(fmt::format("stroke dt must lie in (0, tau/2], got {}", dt));
  }
}

double drive_field_scale(const StrokeSpec& spec, double t) {
  if (t < 0.0 || t > spec.duration()) {
    throw InputError(fmt::format("drive time {} outside [0, {}]", t, spec.duration()));
  }
  // sin(pi/2) == 1 exactly, so the end point reproduces end_scale bit for bit.
  const double ramp = t == spec.duration() ? 1.0 : std::sin(std::numbers::pi * t / spec.tau);
  return spec.start_scale() + (spec.end_scale() - spec.start_scale()) * ramp;
}

ComplexMatrix drive_hamiltonian(const SpinSystem& sys, const StrokeSpec& spec, double t) {
  return static_hamiltonian(sys, drive_field_scale(spec, t));
}

DensityMatrix evolve_stroke(const DensityMatrix& rho, const SpinSystem& sys, const StrokeSpec& spec) {
  spec.validate();
  if (rho.labels() != sys.labels()) {
    throw LabelError("stroke state register must match the spin system order");
  }
  const double duration = spec.duration();
  auto h = [&](double t) { return drive_hamiltonian(sys, spec, std::min(t, duration)); };
  DensityMatrix out = evolve_lvn(rho, h, TimeSpan{0.0, duration}, spec.dt, sys.constants().hbar);

  if (rho.is_diagonal()) {
    const double change = (out.populations() - rho.populations()).cwiseAbs().maxCoeff();
    if (change > 1e-12) {
      throw InvariantError(fmt::format("adiabatic stroke moved populations by {:.3e}", change));
    }
  }
  return out;
}

double stroke_work(const ComplexMatrix& h_local_start, const DensityMatrix& rho_local_start,
                   const ComplexMatrix& h_local_end, const DensityMatrix& rho_local_end) {
  if (h_local_start.rows() != rho_local_start.dim() || h_local_end.rows() != rho_local_end.dim() ||
      rho_local_start.dim() != rho_local_end.dim()) {
    throw DimensionError("stroke_work operands have mismatched dimensions");
  }
  return expectation(h_local_start, rho_local_start.matrix()) - expectation(h_local_end, rho_local_end.matrix());
}

}  // namespace otto

#include "otto/hbac.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "otto/errors.hpp"

namespace otto {

namespace {

void require_hbac_register(const DensityMatrix& rho, const HbacQubits& q) {
  if (rho.num_qubits() != 3 || !rho.contains(q.target) || !rho.contains(q.compression) || !rho.contains(q.reset)) {
    throw LabelError(fmt::format("PPA needs a state on exactly {{{}, {}, {}}}", q.target, q.compression, q.reset));
  }
}

void require_diagonal(const DensityMatrix& rho, std::string_view step) {
  if (!rho.is_diagonal()) {
    throw InvariantError(fmt::format("PPA step '{}' produced coherences from a diagonal state", step));
  }
}

RoundRecord make_record(int index, const DensityMatrix& state, const SpinSystem& sys, const HbacQubits& q,
                        double field_scale) {
  const double eps_t = polarization(qubit_marginal(state, q.target));
  const double eps_r = polarization(qubit_marginal(state, q.reset));
  const double t_eff = effective_temperature(eps_t, sys.omega(q.target, field_scale), sys.constants());
  return RoundRecord{index, eps_t, eps_r, t_eff, state};
}

}  // namespace

HbacQubits HbacQubits::from(const SpinSystem& sys) {
  return {sys.with_role(Role::target).label, sys.with_role(Role::compression).label,
          sys.with_role(Role::reset).label};
}

std::optional<int> PpaTrace::first_round_above_bound() const {
  for (const auto& r : rounds) {
    if (r.target_polarization > bath_polarization) return r.round_index;
  }
  return std::nullopt;
}

DensityMatrix thermal_reset_state(const SpinSystem& sys, double field_scale) {
  const auto& reset = sys.with_role(Role::reset);
  const double omega = sys.omega(reset.label, field_scale);
  return gibbs_state(zeeman_hamiltonian(omega, sys.constants().hbar), sys.bath_temperature(), {reset.label},
                     sys.constants());
}

DensityMatrix initial_stage(const DensityMatrix& rho1, const SpinSystem& sys, double field_scale) {
  const auto q = HbacQubits::from(sys);
  require_hbac_register(rho1, q);
  const DensityMatrix reset = reset_channel(rho1, q.reset, thermal_reset_state(sys, field_scale));
  return apply(swap_unitary(rho1.labels(), q.target, q.reset), reset);
}

DensityMatrix ppa_round(const DensityMatrix& state, const SpinSystem& sys, double field_scale) {
  const auto q = HbacQubits::from(sys);
  require_hbac_register(state, q);
  const QubitLabels& reg = state.labels();
  const DensityMatrix bath = thermal_reset_state(sys, field_scale);

  DensityMatrix rho = reset_channel(state, q.reset, bath);
  rho = apply(swap_unitary(reg, q.compression, q.reset), rho);
  rho = reset_channel(rho, q.reset, bath);
  return apply(comp_unitary(reg, q.target, q.compression, q.reset), rho);
}

PpaTrace run_ppa(const DensityMatrix& rho1, const SpinSystem& sys, double field_scale, int n_rounds) {
  if (n_rounds < 0) throw InputError(fmt::format("PPA round count must be non-negative, got {}", n_rounds));
  if (!(field_scale > 0.0)) throw InputError("PPA field_scale must be positive");
  const auto q = HbacQubits::from(sys);
  require_hbac_register(rho1, q);
  const bool track_diagonal = rho1.is_diagonal();

  std::vector<RoundRecord> rounds;
  rounds.reserve(static_cast<std::size_t>(n_rounds) + 1);

  DensityMatrix state = initial_stage(rho1, sys, field_scale);
  if (track_diagonal) require_diagonal(state, "initial reset + SWAP");
  rounds.push_back(make_record(0, state, sys, q, field_scale));

  for (int k = 1; k <= n_rounds; ++k) {
    state = ppa_round(state, sys, field_scale);
    if (track_diagonal) require_diagonal(state, fmt::format("round {}", k));
    rounds.push_back(make_record(k, state, sys, q, field_scale));
  }

  const double bound = polarization(thermal_reset_state(sys, field_scale));
  DensityMatrix final_target = qubit_marginal(state, q.target);
  return PpaTrace{std::move(rounds), rho1, std::move(final_target), bound, field_scale};
}

}  // namespace otto

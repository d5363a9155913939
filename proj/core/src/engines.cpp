#include "otto/engines.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "otto/errors.hpp"
#include "otto/gates.hpp"

namespace otto {

namespace {

constexpr double kFirstLawTolerance = 1e-9;

struct TargetEnergies {
  ComplexMatrix hot;   // H^(0) local to the target, full field
  ComplexMatrix cold;  // H^(1) local to the target, compressed field
  double omega_hot;
  double omega_cold;
};

TargetEnergies target_energies(const SpinSystem& fluid, const std::string& target) {
  const double hbar = fluid.constants().hbar;
  const double w0 = fluid.omega(target, 1.0);
  const double w1 = fluid.omega(target, kCompressedFieldScale);
  return {zeeman_hamiltonian(w0, hbar), zeeman_hamiltonian(w1, hbar), w0, w1};
}

// Stages 0..3 of the four-stroke cycle: after heating, after compression,
// after cooling, after expansion. Fills heats, works and efficiency.
void close_four_stroke(CycleReport& report, const SpinSystem& fluid, const std::string& target,
                       const DensityMatrix& heated, const DensityMatrix& compressed, const DensityMatrix& cooled,
                       const DensityMatrix& expanded) {
  const auto e = target_energies(fluid, target);
  const DensityMatrix m0 = qubit_marginal(heated, target);
  const DensityMatrix m1 = qubit_marginal(compressed, target);
  const DensityMatrix m2 = qubit_marginal(cooled, target);
  const DensityMatrix m3 = qubit_marginal(expanded, target);

  const double w1 = stroke_work(e.hot, m0, e.cold, m1);
  const double w2 = stroke_work(e.cold, m2, e.hot, m3);
  const double q_in = expectation(e.hot, m0.matrix()) - expectation(e.hot, m3.matrix());
  const double q_out = expectation(e.cold, m1.matrix()) - expectation(e.cold, m2.matrix());
  const double net = q_in - q_out;

  const double scale = std::max({std::abs(net), std::abs(w1) + std::abs(w2), 1e-300});
  if (std::abs(net - (w1 + w2)) > kFirstLawTolerance * scale) {
    throw InvariantError(fmt::format("first law violated: Q_in - Q_out = {:.6e}, W1 + W2 = {:.6e}", net, w1 + w2));
  }

  const double na = fluid.constants().avogadro;
  report.w1 = w1 * na;
  report.w2 = w2 * na;
  report.q_in = q_in * na;
  report.q_out = q_out * na;
  report.net_work = net * na;
  report.efficiency = 1.0 - e.omega_cold / e.omega_hot;
}

struct CompressedFluid {
  SpinSystem fluid;
  HbacQubits qubits;
  DensityMatrix heated;
  DensityMatrix compressed;
};

CompressedFluid heat_and_compress(const SpinSystem& sys, double tau, double dt) {
  const auto q = HbacQubits::from(sys);
  SpinSystem fluid = sys.subsystem(q.labels());
  DensityMatrix heated =
      gibbs_state(static_hamiltonian(fluid, 1.0), fluid.bath_temperature(), fluid.labels(), fluid.constants());
  DensityMatrix compressed = evolve_stroke(heated, fluid, StrokeSpec{StrokeDirection::compression, tau, dt});
  return {std::move(fluid), q, std::move(heated), std::move(compressed)};
}

double cycle_power(double net_work, double cycle_time) { return net_work / cycle_time; }

}  // namespace

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::four_stroke_hbac: return "four_stroke_hbac";
    case EngineKind::four_stroke_isochoric_ref: return "four_stroke_isochoric_ref";
    case EngineKind::two_stroke_hbac: return "two_stroke_hbac";
  }
  return "unknown";
}

CycleReport run_four_stroke(const SpinSystem& sys, int n_rounds, double tau, double dt) {
  if (n_rounds < 0) throw InputError(fmt::format("round count must be non-negative, got {}", n_rounds));
  auto [fluid, q, heated, compressed] = heat_and_compress(sys, tau, dt);

  const PpaTrace trace = run_ppa(compressed, fluid, kCompressedFieldScale, n_rounds);
  const DensityMatrix& cooled = trace.rounds.back().state_after_round;
  const DensityMatrix expanded = evolve_stroke(cooled, fluid, StrokeSpec{StrokeDirection::expansion, tau, dt});

  CycleReport report;
  report.engine_kind = EngineKind::four_stroke_hbac;
  report.n_rounds = n_rounds;
  close_four_stroke(report, fluid, q.target, heated, compressed, cooled, expanded);
  report.cycle_time = fluid.qubit(q.target).t1 + fluid.qubit(q.reset).t1 * (2.0 * n_rounds + 1.0);
  report.power = cycle_power(report.net_work, report.cycle_time);
  report.cooled_target_temperature = trace.rounds.back().target_effective_temperature;

  report.stages.push_back({"heated", heated});
  report.stages.push_back({"compressed", compressed});
  for (const auto& r : trace.rounds) {
    report.stages.push_back({fmt::format("ppa round {}", r.round_index), r.state_after_round});
  }
  report.stages.push_back({"expanded", expanded});
  return report;
}

CycleReport run_isochoric_reference(const SpinSystem& sys, double cold_temperature, double tau, double dt) {
  if (!(cold_temperature > 0.0 && cold_temperature <= sys.bath_temperature())) {
    throw InputError(fmt::format("cold bath temperature {} K must lie in (0, {}] K", cold_temperature,
                                 sys.bath_temperature()));
  }
  auto [fluid, q, heated, compressed] = heat_and_compress(sys, tau, dt);

  const auto e = target_energies(fluid, q.target);
  const DensityMatrix cold_target = gibbs_state(e.cold, cold_temperature, {q.target}, fluid.constants());
  const DensityMatrix cooled = reset_channel(compressed, q.target, cold_target);
  const DensityMatrix expanded = evolve_stroke(cooled, fluid, StrokeSpec{StrokeDirection::expansion, tau, dt});

  CycleReport report;
  report.engine_kind = EngineKind::four_stroke_isochoric_ref;
  close_four_stroke(report, fluid, q.target, heated, compressed, cooled, expanded);
  report.cycle_time = 2.0 * fluid.qubit(q.target).t1;
  report.power = cycle_power(report.net_work, report.cycle_time);
  report.cooled_target_temperature = cold_temperature;
  report.stages = {{"heated", heated}, {"compressed", compressed}, {"cooled", cooled}, {"expanded", expanded}};
  return report;
}

TwoStrokeTarget prepare_two_stroke_target(const SpinSystem& sys, int n_rounds) {
  if (n_rounds < 0) throw InputError(fmt::format("round count must be non-negative, got {}", n_rounds));
  const auto q = HbacQubits::from(sys);
  const SpinSystem fluid = sys.subsystem(q.labels());
  const DensityMatrix thermal =
      gibbs_state(static_hamiltonian(fluid, 1.0), fluid.bath_temperature(), fluid.labels(), fluid.constants());
  const PpaTrace trace = run_ppa(thermal, fluid, 1.0, n_rounds);
  return TwoStrokeTarget{n_rounds, trace.final_target, fluid.omega(q.target, 1.0),
                         trace.rounds.back().target_effective_temperature};
}

CycleReport run_two_stroke(const SpinSystem& sys, double omega_s, int n_rounds) {
  return run_two_stroke(sys, omega_s, prepare_two_stroke_target(sys, n_rounds));
}

CycleReport run_two_stroke(const SpinSystem& sys, double omega_s, const TwoStrokeTarget& cooled) {
  if (!(omega_s > 0.0)) throw InputError(fmt::format("omega_s must be positive, got {}", omega_s));
  const auto q = HbacQubits::from(sys);
  const std::string s_label = sys.has_role(Role::swap_partner) ? sys.with_role(Role::swap_partner).label : "S";
  if (s_label == q.target) throw LabelError("swap partner and target share a label");
  if (cooled.target.labels() != QubitLabels{q.target}) {
    throw LabelError("cooled target state does not belong to this system's target qubit");
  }

  const double hbar = sys.constants().hbar;
  const ComplexMatrix h_s = zeeman_hamiltonian(omega_s, hbar);
  const ComplexMatrix h_t = zeeman_hamiltonian(cooled.omega_target, hbar);

  const DensityMatrix s0 = gibbs_state(h_s, sys.bath_temperature(), {s_label}, sys.constants());
  const DensityMatrix& t0 = cooled.target;
  const DensityMatrix joint = kron(s0, t0);
  const DensityMatrix swapped = apply(swap_unitary(joint.labels(), s_label, q.target), joint);
  const DensityMatrix s1 = qubit_marginal(swapped, s_label);
  const DensityMatrix t1 = qubit_marginal(swapped, q.target);

  const double q_in = expectation(h_s, s0.matrix()) - expectation(h_s, s1.matrix());
  const double q_out = expectation(h_t, t1.matrix()) - expectation(h_t, t0.matrix());
  const double na = sys.constants().avogadro;

  CycleReport report;
  report.engine_kind = EngineKind::two_stroke_hbac;
  report.n_rounds = cooled.n_rounds;
  report.q_in = q_in * na;
  report.q_out = q_out * na;
  report.net_work = (q_in - q_out) * na;
  report.efficiency = 1.0 - cooled.omega_target / omega_s;
  report.cycle_time = sys.with_role(Role::reset).t1 * (2.0 * cooled.n_rounds + 1.0);
  report.power = cycle_power(report.net_work, report.cycle_time);
  report.cooled_target_temperature = cooled.temperature;
  report.omega_s = omega_s;
  report.stages = {{"swap partner thermal", s0}, {"target cooled", t0}, {"joint", joint}, {"swapped", swapped}};
  return report;
}

std::pair<double, double> positive_work_window(double omega_t, double bath_t, double cooled_t) {
  if (!(omega_t > 0.0)) throw InputError("positive_work_window: omega_t must be positive");
  if (!(cooled_t > 0.0 && cooled_t < bath_t)) {
    throw InputError(fmt::format("positive_work_window: need 0 < cooled ({}) < bath ({})", cooled_t, bath_t));
  }
  return {omega_t, omega_t * bath_t / cooled_t};
}

FourStrokeSweep sweep_four_stroke(const SpinSystem& sys, int n_first, int n_last, double tau, double dt) {
  if (n_first < 0 || n_last < n_first) {
    throw InputError(fmt::format("invalid round range {}..{}", n_first, n_last));
  }
  FourStrokeSweep sweep;
  for (int n = n_first; n <= n_last; ++n) {
    CycleReport hbac = run_four_stroke(sys, n, tau, dt);
    CycleReport iso = run_isochoric_reference(sys, hbac.cooled_target_temperature, tau, dt);
    iso.n_rounds = n;
    sweep.n_values.push_back(n);
    sweep.rows.push_back({std::move(hbac), std::move(iso)});
  }

  std::size_t best_power = 0;
  std::size_t best_work = 0;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& row = sweep.rows[i];
    if (row.hbac.power > sweep.rows[best_power].hbac.power) best_power = i;
    if (row.hbac.net_work > sweep.rows[best_work].hbac.net_work) best_work = i;
    if (!sweep.isochoric_overtakes_at && row.isochoric.power > row.hbac.power) {
      sweep.isochoric_overtakes_at = sweep.n_values[i];
    }
  }
  sweep.argmax_power_n = sweep.n_values[best_power];
  sweep.argmax_work_n = sweep.n_values[best_work];
  return sweep;
}

TwoStrokeSweep sweep_two_stroke(const SpinSystem& sys, const std::vector<double>& omega_s_grid,
                                const std::vector<int>& n_values) {
  if (omega_s_grid.empty() || n_values.empty()) throw InputError("two-stroke sweep needs a non-empty grid");
  if (!std::is_sorted(omega_s_grid.begin(), omega_s_grid.end(), std::less_equal<>())) {
    throw InputError("omega_s grid must be strictly increasing");
  }
  if (!std::is_sorted(n_values.begin(), n_values.end(), std::less_equal<>())) {
    throw InputError("round counts must be strictly increasing");
  }

  TwoStrokeSweep sweep;
  sweep.omega_s_grid = omega_s_grid;
  sweep.n_values = n_values;
  for (int n : n_values) {
    const TwoStrokeTarget cooled = prepare_two_stroke_target(sys, n);
    const auto [lower, upper] = positive_work_window(cooled.omega_target, sys.bath_temperature(), cooled.temperature);
    sweep.windows.push_back({n, lower, upper, cooled.temperature});

    std::size_t best_work = sweep.rows.size();
    for (double omega_s : omega_s_grid) {
      CycleReport report = run_two_stroke(sys, omega_s, cooled);
      const bool in_window = omega_s > lower && omega_s < upper;
      const std::size_t index = sweep.rows.size();
      sweep.rows.push_back({std::move(report), in_window});
      if (index == best_work || sweep.rows[index].report.net_work > sweep.rows[best_work].report.net_work) {
        best_work = index;
      }
      if (sweep.rows[index].report.power > sweep.rows[sweep.argmax_power_row].report.power) {
        sweep.argmax_power_row = index;
      }
    }
    sweep.argmax_work_row_per_n.push_back(best_work);
  }
  return sweep;
}

std::vector<double> omega_grid_from_mhz(double start_mhz, double stop_mhz, double step_mhz) {
  if (!(start_mhz > 0.0 && step_mhz > 0.0 && stop_mhz >= start_mhz)) {
    throw InputError(fmt::format("invalid frequency grid {}:{}:{}", start_mhz, stop_mhz, step_mhz));
  }
  const auto count = static_cast<std::size_t>(std::floor((stop_mhz - start_mhz) / step_mhz + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = mhz_to_rad_per_s(start_mhz + static_cast<double>(i) * step_mhz);
  }
  return grid;
}

}  // namespace otto

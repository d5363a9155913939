#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otto/adiabatic.hpp"
#include "otto/hbac.hpp"
#include "otto/qmath.hpp"
#include "otto/spinsys.hpp"

namespace otto {

enum class EngineKind { four_stroke_hbac, four_stroke_isochoric_ref, two_stroke_hbac };

std::string_view to_string(EngineKind kind);

struct StageState {
  std::string stage;
  DensityMatrix state;
};

/// One engine cycle. Energies are per mole of working-fluid molecules.
///
/// Heats are reported as positive magnitudes for a working engine:
/// q_in is absorbed from the hot bath, q_out is handed to the cooling
/// stage, and net_work = q_in - q_out.
struct CycleReport {
  EngineKind engine_kind = EngineKind::four_stroke_hbac;
  int n_rounds = 0;
  double w1 = 0.0;  // J/mol, compression stroke (four-stroke only)
  double w2 = 0.0;  // J/mol, expansion stroke (four-stroke only)
  double q_in = 0.0;
  double q_out = 0.0;
  double net_work = 0.0;
  double efficiency = 0.0;
  double power = 0.0;       // W/mol
  double cycle_time = 0.0;  // s
  double cooled_target_temperature = 0.0;  // K
  std::optional<double> omega_s;           // rad/s, two-stroke only
  std::vector<StageState> stages;          // every intermediate state, in cycle order

  bool work_positive() const { return net_work > 0.0; }
};

/// Heat engine on the target qubit: isochoric heating at the bath, compression
/// stroke B -> B/2, PPA cooling at half field for n rounds, expansion
/// stroke B/2 -> B. Cycle time is T1(target) + T1(reset) (2n + 1).
CycleReport run_four_stroke(const SpinSystem& sys, int n_rounds, double tau = 0.1, double dt = 1e-5);

/// Same cycle with the PPA replaced by thermalizing the target at
/// cold_temperature under the compressed Hamiltonian. Cycle time 2 T1(target).
/// Requires 0 < cold_temperature <= bath temperature.
CycleReport run_isochoric_reference(const SpinSystem& sys, double cold_temperature, double tau = 0.1,
                                    double dt = 1e-5);

/// Target state of the two-stroke engine: n PPA rounds at full field.
struct TwoStrokeTarget {
  int n_rounds = 0;
  DensityMatrix target;
  double omega_target = 0.0;      // rad/s
  double temperature = 0.0;       // K, effective temperature at omega_target
};

TwoStrokeTarget prepare_two_stroke_target(const SpinSystem& sys, int n_rounds);

/// Two-stroke engine: qubit S thermal at omega_s, target cooled by PPA, then
/// SWAP(S, target). Cycle time T1(reset) (2n + 1). S is labelled after the
/// system's swap-partner qubit when present, "S" otherwise.
CycleReport run_two_stroke(const SpinSystem& sys, double omega_s, int n_rounds);
CycleReport run_two_stroke(const SpinSystem& sys, double omega_s, const TwoStrokeTarget& cooled);

/// (omega_t, omega_t * bath_t / cooled_t): the omega_s interval with
/// positive two-stroke work. Requires 0 < cooled_t < bath_t.
std::pair<double, double> positive_work_window(double omega_t, double bath_t, double cooled_t);

struct FourStrokeRow {
  CycleReport hbac;
  CycleReport isochoric;  // cold bath at the HBAC cooled temperature
};

struct FourStrokeSweep {
  std::vector<int> n_values;
  std::vector<FourStrokeRow> rows;
  int argmax_power_n = 0;
  int argmax_work_n = 0;
  std::optional<int> isochoric_overtakes_at;  // first n with P_iso > P_hbac
};

// n = n_first..n_last inclusive.
FourStrokeSweep sweep_four_stroke(const SpinSystem& sys, int n_first, int n_last, double tau = 0.1,
                                  double dt = 1e-5);

struct TwoStrokeRow {
  CycleReport report;
  bool in_window = false;
};

struct WorkWindow {
  int n_rounds = 0;
  double lower = 0.0;  // rad/s
  double upper = 0.0;  // rad/s
  double cooled_temperature = 0.0;
};

struct TwoStrokeSweep {
  std::vector<double> omega_s_grid;  // rad/s, strictly increasing
  std::vector<int> n_values;
  std::vector<TwoStrokeRow> rows;    // n-major: all omega_s for n_values[0], then n_values[1], ...
  std::vector<WorkWindow> windows;   // one per n
  std::size_t argmax_power_row = 0;
  std::vector<std::size_t> argmax_work_row_per_n;
};

TwoStrokeSweep sweep_two_stroke(const SpinSystem& sys, const std::vector<double>& omega_s_grid,
                                const std::vector<int>& n_values);

// Evenly spaced grid start, start + step, ... <= stop (MHz in, rad/s out).
std::vector<double> omega_grid_from_mhz(double start_mhz, double stop_mhz, double step_mhz);

}  // namespace otto

#include "otto/report.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace otto {

namespace {

void write_metadata(std::ostream& out, const CsvMetadata& meta) {
  for (const auto& [key, value] : meta) {
    // Multi-line values (embedded config text) keep the comment prefix on every line.
    std::size_t begin = 0;
    bool first = true;
    while (begin <= value.size()) {
      const std::size_t end = value.find('\n', begin);
      const std::string line = value.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
      if (first) {
        fmt::print(out, "# {}: {}\n", key, line);
        first = false;
      } else if (!line.empty()) {
        fmt::print(out, "#   {}\n", line);
      }
      if (end == std::string::npos) break;
      begin = end + 1;
    }
  }
}

}  // namespace

void write_ppa_csv(std::ostream& out, const PpaTrace& trace, const CsvMetadata& meta) {
  write_metadata(out, meta);
  out << "round,eps_target,eps_reset,T_eff_K,shannon_bound_eps\n";
  for (const auto& r : trace.rounds) {
    fmt::print(out, "{},{:.10e},{:.10e},{:.10e},{:.10e}\n", r.round_index, r.target_polarization,
               r.reset_polarization, r.target_effective_temperature, trace.bath_polarization);
  }
}

void write_four_stroke_csv(std::ostream& out, const FourStrokeSweep& sweep, const CsvMetadata& meta) {
  write_metadata(out, meta);
  out << "n,Qin_J_per_mol,Qout_J_per_mol,W_J_per_mol,P_W_per_mol,P_iso_W_per_mol,T_cold_K\n";
  for (const auto& row : sweep.rows) {
    fmt::print(out, "{},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e}\n", row.hbac.n_rounds, row.hbac.q_in,
               row.hbac.q_out, row.hbac.net_work, row.hbac.power, row.isochoric.power,
               row.hbac.cooled_target_temperature);
  }
}

void write_two_stroke_csv(std::ostream& out, const TwoStrokeSweep& sweep, const CsvMetadata& meta) {
  write_metadata(out, meta);
  out << "omega_s_MHz,n,W_J_per_mol,P_W_per_mol,eta,in_window\n";
  for (const auto& row : sweep.rows) {
    fmt::print(out, "{:.6f},{},{:.10e},{:.10e},{:.10e},{}\n", rad_per_s_to_mhz(row.report.omega_s.value_or(0.0)),
               row.report.n_rounds, row.report.net_work, row.report.power, row.report.efficiency,
               row.in_window ? 1 : 0);
  }
}

std::string summarize_ppa(const PpaTrace& trace) {
  const auto& last = trace.rounds.back();
  const auto crossing = trace.first_round_above_bound();
  return fmt::format(
      "PPA: {} round(s) at field scale {}; final eps_target = {:.4e}, T_eff = {:.2f} K; bath eps = {:.4e}; "
      "bound exceeded from round {}\n",
      last.round_index, trace.field_scale, last.target_polarization, last.target_effective_temperature,
      trace.bath_polarization, crossing ? std::to_string(*crossing) : std::string("never"));
}

std::string summarize_four_stroke(const FourStrokeSweep& sweep) {
  std::string out;
  for (const auto& row : sweep.rows) {
    out += fmt::format("n={:>2}  Qin={:.4e}  Qout={:.4e}  W={:.4e} J/mol  P={:.4e}  P_iso={:.4e} W/mol  T_cold={:.2f} K\n",
                       row.hbac.n_rounds, row.hbac.q_in, row.hbac.q_out, row.hbac.net_work, row.hbac.power,
                       row.isochoric.power, row.hbac.cooled_target_temperature);
  }
  const auto& best = sweep.rows[static_cast<std::size_t>(sweep.argmax_power_n - sweep.n_values.front())].hbac;
  out += fmt::format("efficiency = {:.4f}\n", best.efficiency);
  out += fmt::format("max power at n = {}: P = {:.4e} W/mol (W = {:.4e} J/mol)\n", sweep.argmax_power_n, best.power,
                     best.net_work);
  out += sweep.isochoric_overtakes_at
             ? fmt::format("isochoric reference overtakes HBAC power from n = {}\n", *sweep.isochoric_overtakes_at)
             : std::string("isochoric reference never overtakes HBAC power in this range\n");
  return out;
}

std::string summarize_two_stroke(const TwoStrokeSweep& sweep) {
  std::string out;
  for (std::size_t i = 0; i < sweep.windows.size(); ++i) {
    const auto& w = sweep.windows[i];
    const auto& best = sweep.rows[sweep.argmax_work_row_per_n[i]].report;
    out += fmt::format("n={:>2}  T_target={:.2f} K  window=({:.2f}, {:.2f}) MHz  max W={:.4e} J/mol at {:.2f} MHz\n",
                       w.n_rounds, w.cooled_temperature, rad_per_s_to_mhz(w.lower), rad_per_s_to_mhz(w.upper),
                       best.net_work, rad_per_s_to_mhz(best.omega_s.value_or(0.0)));
  }
  const auto& opt = sweep.rows[sweep.argmax_power_row].report;
  out += fmt::format("max power: omega_s = {:.2f} MHz, n = {}, P = {:.4e} W/mol, W = {:.4e} J/mol, eta = {:.4f}\n",
                     rad_per_s_to_mhz(opt.omega_s.value_or(0.0)), opt.n_rounds, opt.power, opt.net_work,
                     opt.efficiency);
  return out;
}

}  // namespace otto

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "otto/engines.hpp"
#include "otto/hbac.hpp"

namespace otto {

// Key/value pairs written as '# key: value' lines above the CSV header.
using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

// round,eps_target,eps_reset,T_eff_K,shannon_bound_eps
void write_ppa_csv(std::ostream& out, const PpaTrace& trace, const CsvMetadata& meta = {});

// n,Qin_J_per_mol,Qout_J_per_mol,W_J_per_mol,P_W_per_mol,P_iso_W_per_mol,T_cold_K
void write_four_stroke_csv(std::ostream& out, const FourStrokeSweep& sweep, const CsvMetadata& meta = {});

// omega_s_MHz,n,W_J_per_mol,P_W_per_mol,eta,in_window
void write_two_stroke_csv(std::ostream& out, const TwoStrokeSweep& sweep, const CsvMetadata& meta = {});

std::string summarize_ppa(const PpaTrace& trace);
std::string summarize_four_stroke(const FourStrokeSweep& sweep);
std::string summarize_two_stroke(const TwoStrokeSweep& sweep);

}  // namespace otto

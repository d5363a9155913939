#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "otto/spinsys.hpp"

namespace otto {

// Spin-system configuration files are INI-style key/value text:
//
//   [system]
//   bath_temperature_k = 300
//   ; either a field in tesla ...
//   b_field_t = 11.7741
//   ; ... or a reference line: field = omega_ref / gamma_ref
//   ; reference_qubit = H
//   ; reference_omega_mhz = 500.13
//
//   ; one section per qubit, in register order
//   [qubit:C1]
//   ; target | compression | reset | swap_partner
//   role = target
//   ; gamma/2pi in MHz/T, or omega_mhz = omega/2pi at the field
//   gamma_mhz_per_t = 10.7084
//   t1_s = 43
//
//   ; J/2pi in Hz, unordered pairs
//   [couplings]
//   C1-C2 = 103
//
// Comments take a whole line and start with ';' or '#'. Labels may not
// contain '-', ':' or whitespace.

SpinSystem parse_system_config(std::istream& in, std::string_view source_name = "<stream>");
SpinSystem load_system_config(const std::filesystem::path& path);

// "tce" selects the built-in preset; anything else is read as a file path.
// A path that does not exist raises ConfigError("config not found: ...").
SpinSystem resolve_system(std::string_view preset_or_path);

// Canonical config text for `sys` (full double precision, register order).
// Parsing it back reproduces the system to within double round-off.
std::string format_system_config(const SpinSystem& sys);

}  // namespace otto

#include "otto/system_config.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "otto/errors.hpp"

namespace otto {

namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kQubitPrefix = "qubit:";

double number(const pt::ptree& section, const std::string& key, std::string_view where) {
  auto node = section.get_child_optional(key);
  if (!node) throw ConfigError(fmt::format("{}: missing '{}'", where, key));
  try {
    std::size_t used = 0;
    const std::string text = node->data();
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not a number: '{}'", where, key, node->data()));
  }
}

std::optional<double> optional_number(const pt::ptree& section, const std::string& key, std::string_view where) {
  if (!section.get_child_optional(key)) return std::nullopt;
  return number(section, key, where);
}

void reject_unknown_keys(const pt::ptree& section, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, _] : section) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
  }
}

struct PendingQubit {
  std::string label;
  Role role;
  std::optional<double> gamma_mhz_per_t;
  std::optional<double> omega_mhz;
  double t1;
};

}  // namespace

SpinSystem parse_system_config(std::istream& in, std::string_view source_name) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}: {}", source_name, e.message()));
  }

  auto system = tree.get_child_optional("system");
  if (!system) throw ConfigError(fmt::format("{}: missing [system] section", source_name));
  const std::string sys_where = fmt::format("{} [system]", source_name);
  reject_unknown_keys(*system, {"bath_temperature_k", "b_field_t", "reference_qubit", "reference_omega_mhz"},
                      sys_where);
  const double bath = number(*system, "bath_temperature_k", sys_where);
  const auto b_field_t = optional_number(*system, "b_field_t", sys_where);
  const auto reference_label = system->get_optional<std::string>("reference_qubit");
  const auto reference_omega = optional_number(*system, "reference_omega_mhz", sys_where);
  if (b_field_t.has_value() == (reference_label.has_value() || reference_omega.has_value())) {
    throw ConfigError(
        fmt::format("{}: give exactly one of b_field_t or reference_qubit + reference_omega_mhz", sys_where));
  }
  if (!b_field_t && !(reference_label && reference_omega)) {
    throw ConfigError(fmt::format("{}: reference_qubit and reference_omega_mhz go together", sys_where));
  }

  std::vector<PendingQubit> pending;
  std::map<CouplingKey, double> couplings;
  for (const auto& [name, section] : tree) {
    if (name == "system") continue;
    if (name == "couplings") {
      for (const auto& [pair, value] : section) {
        const auto dash = pair.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 == pair.size()) {
          throw ConfigError(fmt::format("{} [couplings]: expected 'A-B', got '{}'", source_name, pair));
        }
        const double j_hz = number(section, pair, fmt::format("{} [couplings]", source_name));
        const auto key = coupling_key(pair.substr(0, dash), pair.substr(dash + 1));
        if (!couplings.emplace(key, hz_to_rad_per_s(j_hz)).second) {
          throw ConfigError(fmt::format("{} [couplings]: pair '{}' listed twice", source_name, pair));
        }
      }
      continue;
    }
    if (!name.starts_with(kQubitPrefix)) {
      throw ConfigError(fmt::format("{}: unknown section [{}]", source_name, name));
    }
    const std::string label = name.substr(kQubitPrefix.size());
    const std::string where = fmt::format("{} [{}]", source_name, name);
    reject_unknown_keys(section, {"role", "gamma_mhz_per_t", "omega_mhz", "t1_s"}, where);
    auto role_text = section.get_optional<std::string>("role");
    if (!role_text) throw ConfigError(fmt::format("{}: missing 'role'", where));
    PendingQubit q{label, Role::target, optional_number(section, "gamma_mhz_per_t", where),
                   optional_number(section, "omega_mhz", where), number(section, "t1_s", where)};
    try {
      q.role = parse_role(*role_text);
    } catch (const InputError& e) {
      throw ConfigError(fmt::format("{}: {}", where, e.what()));
    }
    if (q.gamma_mhz_per_t.has_value() == q.omega_mhz.has_value()) {
      throw ConfigError(fmt::format("{}: give exactly one of gamma_mhz_per_t or omega_mhz", where));
    }
    pending.push_back(std::move(q));
  }
  if (pending.empty()) throw ConfigError(fmt::format("{}: no [qubit:...] sections", source_name));

  double b_field = 0.0;
  if (b_field_t) {
    b_field = *b_field_t;
  } else {
    auto it = std::find_if(pending.begin(), pending.end(),
                           [&](const PendingQubit& q) { return q.label == *reference_label; });
    if (it == pending.end()) {
      throw ConfigError(fmt::format("{}: reference qubit '{}' is not defined", sys_where, *reference_label));
    }
    if (!it->gamma_mhz_per_t) {
      throw ConfigError(fmt::format("{}: reference qubit '{}' needs gamma_mhz_per_t", sys_where, *reference_label));
    }
    b_field = *reference_omega / *it->gamma_mhz_per_t;
  }
  if (!(b_field > 0.0)) throw ConfigError(fmt::format("{}: field must be positive", sys_where));

  std::vector<QubitSpec> qubits;
  for (const auto& q : pending) {
    const double gamma = q.gamma_mhz_per_t ? mhz_to_rad_per_s(*q.gamma_mhz_per_t)
                                           : mhz_to_rad_per_s(*q.omega_mhz) / b_field;
    qubits.push_back({q.label, q.role, gamma, q.t1});
  }
  try {
    return SpinSystem(std::move(qubits), std::move(couplings), b_field, bath);
  } catch (const InputError& e) {
    throw ConfigError(fmt::format("{}: {}", source_name, e.what()));
  }
}

SpinSystem load_system_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config not found: {}", path.string()));
  return parse_system_config(in, path.string());
}

SpinSystem resolve_system(std::string_view preset_or_path) {
  if (preset_or_path == "tce") return tce_preset();
  const std::filesystem::path path{std::string(preset_or_path)};
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw ConfigError(fmt::format("config not found: {}", path.string()));
  }
  return load_system_config(path);
}

std::string format_system_config(const SpinSystem& sys) {
  std::string out;
  out += "[system]\n";
  out += fmt::format("bath_temperature_k = {:.17g}\n", sys.bath_temperature());
  out += fmt::format("b_field_t = {:.17g}\n", sys.b_field());
  for (const auto& q : sys.qubits()) {
    out += fmt::format("\n[qubit:{}]\n", q.label);
    out += fmt::format("role = {}\n", to_string(q.role));
    out += fmt::format("gamma_mhz_per_t = {:.17g}\n", rad_per_s_to_mhz(q.gyromagnetic_ratio));
    out += fmt::format("t1_s = {:.17g}\n", q.t1);
  }
  if (!sys.couplings().empty()) {
    out += "\n[couplings]\n";
    for (const auto& [key, j] : sys.couplings()) {
      out += fmt::format("{}-{} = {:.17g}\n", key.first, key.second, j / hz_to_rad_per_s(1.0));
    }
  }
  return out;
}

}  // namespace otto

#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <openssl/evp.h>

#include "otto/engines.hpp"
#include "otto/errors.hpp"
#include "otto/hbac.hpp"
#include "otto/report.hpp"
#include "otto/system_config.hpp"

namespace otto::cli {

namespace {

constexpr std::string_view kToolVersion = "0.1.0";

struct Options {
  std::string system = "tce";
  std::string rounds;
  double field_scale = kCompressedFieldScale;
  std::string omega_s = "150:1000:1";
  double tau = 0.1;
  double dt = 0.0;  // 0 -> tau / 1e4
  std::string out_path;
  std::string format = "csv";
};

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError(fmt::format("invalid {} '{}'", what, text));
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("invalid {} '{}'", what, text));
  }
}

CsvMetadata base_metadata(std::string_view command, const Options& opt, const SpinSystem& sys,
                          const std::vector<std::pair<std::string, std::string>>& params) {
  const std::string system_text = format_system_config(sys);
  std::string canonical = fmt::format("command={}\n", command);
  for (const auto& [k, v] : params) canonical += fmt::format("{}={}\n", k, v);
  canonical += system_text;

  const auto& c = sys.constants();
  CsvMetadata meta{
      {"tool", fmt::format("hbac_otto {}", kToolVersion)},
      {"command", std::string(command)},
      {"system_source", opt.system},
      {"config_sha256", sha256_hex(canonical)},
      {"constants", fmt::format("hbar={:.10e} J*s, k_B={:.9e} J/K, N_A={:.9e} 1/mol", c.hbar, c.k_boltzmann,
                                c.avogadro)},
  };
  for (const auto& [k, v] : params) meta.emplace_back(k, v);
  meta.emplace_back("system", system_text);
  return meta;
}

void emit(const Options& opt, const std::string& csv, const std::string& summary, std::ostream& out) {
  if (!opt.out_path.empty()) {
    write_file_atomically(opt.out_path, opt.format == "csv" ? csv : summary);
    out << summary;
    return;
  }
  out << (opt.format == "csv" ? csv : summary);
}

double resolved_dt(const Options& opt) { return opt.dt > 0.0 ? opt.dt : opt.tau / 1e4; }

int cmd_ppa(const Options& opt, std::ostream& out) {
  const SpinSystem sys = resolve_system(opt.system);
  const RoundRange range = parse_round_range(opt.rounds.empty() ? "7" : opt.rounds);
  if (range.first != range.last) throw ConfigError("ppa takes a single round count, not a range");
  if (!(opt.field_scale > 0.0)) throw ConfigError("--field-scale must be positive");

  const auto q = HbacQubits::from(sys);
  const SpinSystem fluid = sys.subsystem(q.labels());
  // The register starts in the full-field thermal state; the PPA resets at field_scale.
  const DensityMatrix thermal =
      gibbs_state(static_hamiltonian(fluid, 1.0), fluid.bath_temperature(), fluid.labels(), fluid.constants());
  const PpaTrace trace = run_ppa(thermal, fluid, opt.field_scale, range.first);

  std::ostringstream csv;
  write_ppa_csv(csv, trace,
                base_metadata("ppa", opt, sys,
                              {{"rounds", std::to_string(range.first)},
                               {"field_scale", fmt::format("{:.17g}", opt.field_scale)}}));
  emit(opt, csv.str(), summarize_ppa(trace), out);
  return kExitOk;
}

int cmd_four_stroke(const Options& opt, std::ostream& out) {
  const SpinSystem sys = resolve_system(opt.system);
  const RoundRange range = parse_round_range(opt.rounds.empty() ? "0..10" : opt.rounds);
  const double dt = resolved_dt(opt);
  const FourStrokeSweep sweep = sweep_four_stroke(sys, range.first, range.last, opt.tau, dt);

  std::ostringstream csv;
  write_four_stroke_csv(csv, sweep,
                        base_metadata("four-stroke", opt, sys,
                                      {{"rounds", fmt::format("{}..{}", range.first, range.last)},
                                       {"tau_s", fmt::format("{:.17g}", opt.tau)},
                                       {"dt_s", fmt::format("{:.17g}", dt)}}));
  emit(opt, csv.str(), summarize_four_stroke(sweep), out);
  return kExitOk;
}

int cmd_two_stroke(const Options& opt, std::ostream& out) {
  const SpinSystem sys = resolve_system(opt.system);
  const RoundRange range = parse_round_range(opt.rounds.empty() ? "1..8" : opt.rounds);
  const FrequencyGrid grid = parse_frequency_grid(opt.omega_s);
  std::vector<int> n_values;
  for (int n = range.first; n <= range.last; ++n) n_values.push_back(n);

  const TwoStrokeSweep sweep =
      sweep_two_stroke(sys, omega_grid_from_mhz(grid.start_mhz, grid.stop_mhz, grid.step_mhz), n_values);

  std::ostringstream csv;
  write_two_stroke_csv(csv, sweep,
                       base_metadata("two-stroke", opt, sys,
                                     {{"rounds", fmt::format("{}..{}", range.first, range.last)},
                                      {"omega_s_mhz", fmt::format("{:.17g}:{:.17g}:{:.17g}", grid.start_mhz,
                                                                  grid.stop_mhz, grid.step_mhz)}}));
  emit(opt, csv.str(), summarize_two_stroke(sweep), out);
  return kExitOk;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--system", opt.system, "Preset name (tce) or path to a system config file");
  sub->add_option("-n,--rounds", opt.rounds, "PPA round count, or an inclusive range a..b");
  sub->add_option("--out", opt.out_path, "Write output here (atomically) instead of stdout");
  sub->add_option("--format", opt.format, "csv or summary")->check(CLI::IsMember({"csv", "summary"}));
}

}  // namespace

RoundRange parse_round_range(const std::string& text) {
  const auto sep = text.find("..");
  RoundRange r;
  if (sep == std::string::npos) {
    r.first = r.last = parse_int(text, "round count");
  } else {
    r.first = parse_int(std::string_view(text).substr(0, sep), "round range start");
    r.last = parse_int(std::string_view(text).substr(sep + 2), "round range end");
  }
  if (r.first < 0 || r.last < r.first) throw ConfigError(fmt::format("invalid round range '{}'", text));
  return r;
}

FrequencyGrid parse_frequency_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw ConfigError(fmt::format("expected start:stop:step, got '{}'", text));
  FrequencyGrid g{parse_double(std::string_view(text).substr(0, a), "grid start"),
                  parse_double(std::string_view(text).substr(a + 1, b - a - 1), "grid stop"),
                  parse_double(std::string_view(text).substr(b + 1), "grid step")};
  if (!(g.start_mhz > 0.0 && g.step_mhz > 0.0 && g.stop_mhz >= g.start_mhz)) {
    throw ConfigError(fmt::format("invalid frequency grid '{}'", text));
  }
  return g;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError(fmt::format("cannot open '{}' for writing", tmp.string()));
    f << contents;
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ConfigError(fmt::format("failed writing '{}'", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, target);
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-qubit Otto engine simulator with algorithmic cooling", "hbac_otto"};
  app.require_subcommand(1);

  Options opt;
  auto* ppa = app.add_subcommand("ppa", "Partner pairing algorithm cooling trace");
  add_common(ppa, opt);
  ppa->add_option("--field-scale", opt.field_scale, "Field ratio B'/B during the PPA (default 0.5)");

  auto* four = app.add_subcommand("four-stroke", "Four-stroke engine sweep over PPA rounds");
  add_common(four, opt);
  four->add_option("--tau", opt.tau, "Drive period tau in seconds (stroke lasts tau/2)");
  four->add_option("--dt", opt.dt, "Integration step in seconds (default tau/1e4)");

  auto* two = app.add_subcommand("two-stroke", "Two-stroke engine sweep over omega_S and PPA rounds");
  add_common(two, opt);
  two->add_option("--omega-s", opt.omega_s, "omega_S/2pi grid in MHz, start:stop:step");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (*ppa) return cmd_ppa(opt, out);
    if (*four) return cmd_four_stroke(opt, out);
    return cmd_two_stroke(opt, out);
  } catch (const InvariantError& e) {
    err << "numerical invariant violated: " << e.what() << "\n";
    return kExitInvariantError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace otto::cli

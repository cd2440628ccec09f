#include "qkd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qkd/emit.hpp"
#include "qkd/error.hpp"
#include "qkd/replay.hpp"
#include "qkd/summary.hpp"
#include "qkd/sweep.hpp"

namespace qkd::cli {

namespace {

constexpr double kAxisSnapTolerance = 1e-9;

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw usage_error("invalid value '" + text + "' for " + field +
                      " (expected a number)");
  }
}

std::uint64_t parse_count(const std::string& text, const std::string& field) {
  try {
    // stoull would wrap a leading minus instead of failing
    if (text.empty() || text[0] == '-') throw std::invalid_argument(text);
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw usage_error("invalid value '" + text + "' for " + field +
                      " (expected a non-negative integer)");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw io_error("cannot open '" + out_path + "' for writing");
  }
  out << text;
  if (!out) {
    throw io_error("failed writing '" + out_path + "'");
  }
}

// Key/value pairs from file (first) and command line (after, overriding).
using KvList = std::vector<std::pair<std::string, std::string>>;

std::string lookup(const KvList& kv, const std::string& key) {
  std::string value;
  for (const auto& [k, v] : kv) {
    if (k == key) value = v;  // last occurrence wins
  }
  return value;
}

bool has_key(const KvList& kv, const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return true;
  }
  return false;
}

void reject_unknown_keys(const KvList& kv, const std::vector<std::string>& known,
                         const std::string& context) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const std::string& key : known) {
      if (k == key) { ok = true; break; }
    }
    if (!ok) {
      throw usage_error("unknown " + context + " key '" + k + "'");
    }
  }
}

SweepSpec sweep_spec_from_kv(const KvList& kv) {
  reject_unknown_keys(kv,
                      {"protocol", "noise", "eve", "rounds", "mode", "eve-mode",
                       "bell-ratio", "allocation", "threshold", "seed"},
                      "sweep config");
  if (!has_key(kv, "protocol")) {
    throw usage_error("--protocol is required");
  }
  Protocol protocol = parse_protocol(lookup(kv, "protocol"));
  SweepSpec spec = SweepSpec::defaults(protocol);
  bool e91 = protocol == Protocol::E91;

  for (const auto& [key, value] : kv) {
    if (key == "protocol") continue;
    if (key == "noise") {
      spec.noise_axis = parse_axis(value);
    } else if (key == "eve") {
      spec.eve_axis = parse_axis(value);
    } else if (key == "rounds") {
      spec.rounds_per_cell = parse_count(value, "rounds");
    } else if (key == "mode") {
      if (value == "mc") spec.mode = SweepMode::MonteCarlo;
      else if (value == "oracle") spec.mode = SweepMode::Oracle;
      else throw usage_error("unknown mode '" + value + "' (expected mc or oracle)");
    } else if (key == "eve-mode") {
      if (!e91) throw usage_error("eve-mode not applicable to protocol " +
                                  std::string(to_string(protocol)));
      spec.eve_mode = parse_eve_mode(value);
    } else if (key == "bell-ratio") {
      if (!e91) throw usage_error("bell-ratio not applicable to protocol " +
                                  std::string(to_string(protocol)));
      spec.bell_ratio = parse_double(value, "bell-ratio");
    } else if (key == "allocation") {
      if (!e91) throw usage_error("allocation not applicable to protocol " +
                                  std::string(to_string(protocol)));
      spec.allocation = parse_allocation(value);
    } else if (key == "threshold") {
      spec.qber_threshold = parse_double(value, "threshold");
    } else if (key == "seed") {
      spec.base_seed = parse_count(value, "seed");
    }
  }
  return spec;
}

std::string joined_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

// Provenance header: the resolved configuration as '#' comment lines ahead
// of the pinned CSV payload.
std::string sweep_provenance(const SweepSpec& spec) {
  std::string out;
  out += "# protocol = " + std::string(to_string(spec.protocol)) + "\n";
  out += "# mode = " + std::string(spec.mode == SweepMode::Oracle ? "oracle" : "mc") + "\n";
  if (spec.mode == SweepMode::MonteCarlo) {
    out += "# rounds = " + std::to_string(spec.rounds_per_cell) + "\n";
    out += "# seed = " + std::to_string(spec.base_seed) + "\n";
  }
  out += "# noise_axis = " + joined_numbers(spec.noise_axis) + "\n";
  out += "# eve_axis = " + joined_numbers(spec.eve_axis) + "\n";
  if (spec.protocol == Protocol::E91) {
    out += "# eve_mode = " + std::string(to_string(spec.eve_mode)) + "\n";
    out += "# bell_ratio = " + format_number(spec.bell_ratio) + "\n";
    out += "# allocation = " + std::string(to_string(spec.allocation)) + "\n";
    out += "# threshold = " + format_number(spec.qber_threshold) + "\n";
  }
  return out;
}

struct SubcommandOptions {
  std::string protocol, rounds, noise, eve, eve_mode, bell_ratio, allocation;
  std::string threshold, sample_fraction, seed, mode, format, out, config;
  std::string input;  // replay only
};

// Collects file values first, then command-line values, so the command line
// overrides the file.
KvList merge_kv(const CLI::App* cmd, const SubcommandOptions& opts,
                const std::vector<std::pair<const char*, const std::string*>>& flags) {
  KvList kv;
  if (!opts.config.empty()) {
    for (auto& [key, value] : parse_config_file(read_input(opts.config))) {
      kv.emplace_back(key, value);
    }
  }
  for (const auto& [name, value] : flags) {
    if (cmd->count(std::string("--") + name) > 0) {
      kv.emplace_back(name, *value);
    }
  }
  return kv;
}

int dispatch_run(const CLI::App* cmd, const SubcommandOptions& opts) {
  KvList kv = merge_kv(cmd, opts,
                       {{"protocol", &opts.protocol},
                        {"rounds", &opts.rounds},
                        {"noise", &opts.noise},
                        {"eve", &opts.eve},
                        {"eve-mode", &opts.eve_mode},
                        {"bell-ratio", &opts.bell_ratio},
                        {"allocation", &opts.allocation},
                        {"threshold", &opts.threshold},
                        {"sample-fraction", &opts.sample_fraction},
                        {"seed", &opts.seed}});
  if (cmd->count("--mode") > 0 && opts.mode != "mc") {
    throw usage_error("mode '" + opts.mode + "' not applicable to run (only mc)");
  }
  OutputFormat format = parse_format(opts.format);

  SessionConfig config = session_config_from_kv(kv);
  config.validate();

  SessionSummary summary;
  switch (config.protocol) {
    case Protocol::Bb84: summary = make_summary(run_bb84(config)); break;
    case Protocol::B92: summary = make_summary(run_b92(config)); break;
    case Protocol::E91: summary = make_summary(run_e91(config)); break;
  }
  write_output(opts.out, emit_summary(summary, format));
  return 0;
}

int dispatch_sweep(const CLI::App* cmd, const SubcommandOptions& opts) {
  KvList kv = merge_kv(cmd, opts,
                       {{"protocol", &opts.protocol},
                        {"noise", &opts.noise},
                        {"eve", &opts.eve},
                        {"rounds", &opts.rounds},
                        {"mode", &opts.mode},
                        {"eve-mode", &opts.eve_mode},
                        {"bell-ratio", &opts.bell_ratio},
                        {"allocation", &opts.allocation},
                        {"threshold", &opts.threshold},
                        {"seed", &opts.seed}});
  if (cmd->count("--format") > 0 && opts.format != "csv") {
    throw usage_error("sweep output is csv only");
  }
  if (cmd->count("--sample-fraction") > 0) {
    throw usage_error("sample-fraction not applicable to sweep");
  }

  SweepSpec spec = sweep_spec_from_kv(kv);
  spec.validate();
  SweepGrid grid = run_sweep(spec);
  write_output(opts.out, sweep_provenance(spec) + emit_grid_csv(grid));
  return 0;
}

int dispatch_replay(const SubcommandOptions& opts) {
  OutputFormat format = parse_format(opts.format);
  ReplayRecords records = parse_replay_csv(read_input(opts.input));
  SessionSummary summary = replay(records);
  write_output(opts.out, emit_summary(summary, format));
  return 0;
}

}  // namespace

std::vector<double> parse_axis(const std::string& text) {
  std::size_t first = text.find(':');
  if (first == std::string::npos) {
    return {parse_double(text, "axis value")};
  }
  std::size_t second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw usage_error("axis '" + text + "' must be a value or start:stop:step");
  }
  double start = parse_double(text.substr(0, first), "axis start");
  double stop = parse_double(text.substr(first + 1, second - first - 1), "axis stop");
  double step = parse_double(text.substr(second + 1), "axis step");
  if (step <= 0.0) {
    throw usage_error("axis step must be > 0 (got " + text + ")");
  }
  if (stop < start - kAxisSnapTolerance) {
    throw usage_error("axis stop must be >= start (got " + text + ")");
  }
  if ((stop - start) / step > 1e6) {
    throw usage_error("axis '" + text + "' expands to more than 10^6 points");
  }

  std::vector<double> values;
  for (std::uint64_t i = 0;; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (v > stop + kAxisSnapTolerance) break;
    if (std::fabs(v - stop) <= kAxisSnapTolerance) v = stop;
    values.push_back(v);
  }
  return values;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  auto trim = [](const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return std::string();
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string content = trim(line);
    if (content.empty() || content[0] == '#') continue;
    std::size_t eq = content.find('=');
    if (eq == std::string::npos) {
      throw parse_error("config file line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(content.substr(0, eq));
    std::string value = trim(content.substr(eq + 1));
    if (key.empty()) {
      throw parse_error("config file line " + std::to_string(line_no) +
                        ": empty key");
    }
    kv.emplace_back(key, value);
  }
  return kv;
}

SessionConfig session_config_from_kv(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  reject_unknown_keys(kv,
                      {"protocol", "rounds", "noise", "eve", "eve-mode",
                       "bell-ratio", "allocation", "threshold", "sample-fraction",
                       "seed"},
                      "config");
  if (!has_key(kv, "protocol")) {
    throw usage_error("--protocol is required");
  }
  Protocol protocol = parse_protocol(lookup(kv, "protocol"));
  SessionConfig config = SessionConfig::defaults(protocol);
  bool e91 = protocol == Protocol::E91;

  for (const auto& [key, value] : kv) {
    if (key == "protocol") continue;
    if (key == "rounds") {
      config.rounds = parse_count(value, "rounds");
    } else if (key == "noise") {
      config.noise_p = parse_double(value, "noise");
    } else if (key == "eve") {
      config.eve_p = parse_double(value, "eve");
    } else if (key == "eve-mode") {
      if (!e91) throw usage_error("eve-mode not applicable to protocol " +
                                  std::string(to_string(protocol)));
      config.eve_mode = parse_eve_mode(value);
    } else if (key == "bell-ratio") {
      if (!e91) throw usage_error("bell-ratio not applicable to protocol " +
                                  std::string(to_string(protocol)));
      config.bell_ratio = parse_double(value, "bell-ratio");
    } else if (key == "allocation") {
      if (!e91) throw usage_error("allocation not applicable to protocol " +
                                  std::string(to_string(protocol)));
      config.allocation = parse_allocation(value);
    } else if (key == "threshold") {
      config.qber_threshold = parse_double(value, "threshold");
    } else if (key == "sample-fraction") {
      config.sample_fraction = parse_double(value, "sample-fraction");
    } else if (key == "seed") {
      config.seed = parse_count(value, "seed");
    }
  }
  return config;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Deterministic BB84 / B92 / E91 quantum key distribution "
               "simulator over noisy, eavesdropped polarization channels"};
  app.require_subcommand(1);

  SubcommandOptions run_opts, sweep_opts, replay_opts;
  run_opts.format = "json";
  run_opts.mode = "mc";
  sweep_opts.format = "csv";
  replay_opts.format = "json";

  CLI::App* run_cmd = app.add_subcommand("run", "Run one protocol session");
  run_cmd->add_option("--protocol", run_opts.protocol, "bb84 | b92 | e91");
  run_cmd->add_option("--rounds", run_opts.rounds, "transmission rounds");
  run_cmd->add_option("--noise", run_opts.noise, "channel flip probability");
  run_cmd->add_option("--eve", run_opts.eve, "interception probability");
  run_cmd->add_option("--eve-mode", run_opts.eve_mode, "key | bell | both (e91)");
  run_cmd->add_option("--bell-ratio", run_opts.bell_ratio,
                      "fraction of rounds reserved for Bell testing (e91)");
  run_cmd->add_option("--allocation", run_opts.allocation,
                      "designated | independent (e91)");
  run_cmd->add_option("--threshold", run_opts.threshold, "QBER accept threshold");
  run_cmd->add_option("--sample-fraction", run_opts.sample_fraction,
                      "fraction of the sifted key disclosed for error estimation");
  run_cmd->add_option("--seed", run_opts.seed, "64-bit random seed");
  run_cmd->add_option("--mode", run_opts.mode, "mc");
  run_cmd->add_option("--format", run_opts.format, "json | csv");
  run_cmd->add_option("--out", run_opts.out, "output file (default stdout)");
  run_cmd->add_option("--config", run_opts.config, "key = value config file");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Sweep a (noise x eve) parameter grid");
  sweep_cmd->add_option("--protocol", sweep_opts.protocol, "bb84 | b92 | e91");
  sweep_cmd->add_option("--noise", sweep_opts.noise,
                        "noise axis: value or start:stop:step");
  sweep_cmd->add_option("--eve", sweep_opts.eve,
                        "eve axis: value or start:stop:step");
  sweep_cmd->add_option("--rounds", sweep_opts.rounds, "rounds per cell (mc)");
  sweep_cmd->add_option("--mode", sweep_opts.mode, "mc | oracle");
  sweep_cmd->add_option("--eve-mode", sweep_opts.eve_mode, "key | bell | both (e91)");
  sweep_cmd->add_option("--bell-ratio", sweep_opts.bell_ratio, "bell ratio (e91)");
  sweep_cmd->add_option("--allocation", sweep_opts.allocation,
                        "designated | independent (e91)");
  sweep_cmd->add_option("--threshold", sweep_opts.threshold, "QBER accept threshold");
  sweep_cmd->add_option("--sample-fraction", sweep_opts.sample_fraction,
                        "(not applicable)");
  sweep_cmd->add_option("--seed", sweep_opts.seed, "base seed for cell streams");
  sweep_cmd->add_option("--format", sweep_opts.format, "csv");
  sweep_cmd->add_option("--out", sweep_opts.out, "output file (default stdout)");
  sweep_cmd->add_option("--config", sweep_opts.config, "key = value config file");

  CLI::App* replay_cmd = app.add_subcommand(
      "replay", "Recompute statistics from a recorded transmission table");
  replay_cmd->add_option("input", replay_opts.input,
                         "replay CSV path ('-' for stdin)")
      ->required();
  replay_cmd->add_option("--format", replay_opts.format, "json | csv");
  replay_cmd->add_option("--out", replay_opts.out, "output file (default stdout)");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp& e) {
      std::cout << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      throw usage_error(e.what());
    }

    if (run_cmd->parsed()) return dispatch_run(run_cmd, run_opts);
    if (sweep_cmd->parsed()) return dispatch_sweep(sweep_cmd, sweep_opts);
    return dispatch_replay(replay_opts);
  } catch (const usage_error& e) {
    std::cerr << "qkd: " << e.category() << ": " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "qkd: " << e.category() << ": " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "qkd: " << e.category() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qkd: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qkd::cli

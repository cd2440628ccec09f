#include "qkd/emit.hpp"

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

#include "qkd/error.hpp"

namespace qkd {

namespace {

// Shortest text that parses back to exactly the same double; config files
// must round-trip, unlike the 6-digit summary artifacts.
std::string format_exact(double value) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
  }
  return std::string(buf, end);
}

// The fixed summary field set, in emission order.
constexpr const char* kSummaryHeader =
    "protocol,rounds,noise_p,eve_p,eve_mode,bell_ratio,seed,sifted_rate,"
    "conclusive_rate,qber_percent,chsh_s,risk,decision";

std::string opt_number(const std::optional<double>& v) {
  return v.has_value() ? format_number(*v) : "";
}

struct SummaryFields {
  std::string protocol;
  std::string rounds;
  std::string noise_p, eve_p, eve_mode, bell_ratio, seed;
  std::string sifted_rate, conclusive_rate, qber_percent, chsh_s;
  std::string risk, decision;
};

// Renders every field to text once; "" means absent (null in JSON, empty in
// CSV). All strings in the fixed key set are enum names, so JSON needs no
// escaping.
SummaryFields render_fields(const SessionSummary& s) {
  SummaryFields f;
  f.protocol = to_string(s.protocol);
  f.rounds = std::to_string(s.rounds);
  f.noise_p = opt_number(s.noise_p);
  f.eve_p = opt_number(s.eve_p);
  if (s.eve_mode.has_value() && *s.eve_mode != EveMode::NotApplicable) {
    f.eve_mode = to_string(*s.eve_mode);
  }
  f.bell_ratio = opt_number(s.bell_ratio);
  if (s.seed.has_value()) f.seed = std::to_string(*s.seed);
  f.sifted_rate = opt_number(s.sifted_rate);
  f.conclusive_rate = opt_number(s.conclusive_rate);
  f.qber_percent = format_number(s.qber.percent);
  if (s.chsh.has_value()) f.chsh_s = format_number(s.chsh->s);
  f.risk = to_string(s.risk);
  if (s.decision.has_value()) f.decision = to_string(s.decision->value);
  return f;
}

void json_field(std::string& out, const char* key, const std::string& value,
                bool quoted, bool last = false) {
  out += "  \"";
  out += key;
  out += "\": ";
  if (value.empty()) {
    out += "null";
  } else if (quoted) {
    out += '"';
    out += value;
    out += '"';
  } else {
    out += value;
  }
  out += last ? "\n" : ",\n";
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw usage_error("unknown format '" + text + "' (expected json or csv)");
}

std::string emit_summary(const SessionSummary& summary, OutputFormat format) {
  SummaryFields f = render_fields(summary);

  if (format == OutputFormat::Csv) {
    std::string out(kSummaryHeader);
    out += '\n';
    out += f.protocol + ',' + f.rounds + ',' + f.noise_p + ',' + f.eve_p + ',' +
           f.eve_mode + ',' + f.bell_ratio + ',' + f.seed + ',' + f.sifted_rate +
           ',' + f.conclusive_rate + ',' + f.qber_percent + ',' + f.chsh_s + ',' +
           f.risk + ',' + f.decision;
    out += '\n';
    return out;
  }

  std::string out = "{\n";
  json_field(out, "protocol", f.protocol, true);
  json_field(out, "rounds", f.rounds, false);
  json_field(out, "noise_p", f.noise_p, false);
  json_field(out, "eve_p", f.eve_p, false);
  json_field(out, "eve_mode", f.eve_mode, true);
  json_field(out, "bell_ratio", f.bell_ratio, false);
  json_field(out, "seed", f.seed, false);
  json_field(out, "sifted_rate", f.sifted_rate, false);
  json_field(out, "conclusive_rate", f.conclusive_rate, false);
  json_field(out, "qber_percent", f.qber_percent, false);
  json_field(out, "chsh_s", f.chsh_s, false);
  json_field(out, "risk", f.risk, true);
  json_field(out, "decision", f.decision, true, /*last=*/true);
  out += "}\n";
  return out;
}

std::string emit_grid_csv(const SweepGrid& grid) {
  std::string out = "noise_p,eve_p,qber_percent,rate,chsh_s,risk,decision\n";
  for (const GridCell& cell : grid.cells) {
    out += format_number(cell.noise_p);
    out += ',';
    out += format_number(cell.eve_p);
    out += ',';
    out += format_number(100.0 * cell.qber);
    out += ',';
    out += format_number(cell.rate);
    out += ',';
    if (cell.s.has_value()) out += format_number(*cell.s);
    out += ',';
    out += to_string(cell.risk);
    out += ',';
    if (cell.decision.has_value()) out += to_string(*cell.decision);
    out += '\n';
  }
  return out;
}

std::string emit_config_file(const SessionConfig& config) {
  std::string out;
  out += "protocol = " + std::string(to_string(config.protocol)) + "\n";
  out += "rounds = " + std::to_string(config.rounds) + "\n";
  out += "noise = " + format_exact(config.noise_p) + "\n";
  out += "eve = " + format_exact(config.eve_p) + "\n";
  if (config.protocol == Protocol::E91) {
    out += "eve-mode = " + std::string(to_string(config.eve_mode)) + "\n";
    out += "bell-ratio = " + format_exact(config.bell_ratio) + "\n";
    out += "allocation = " + std::string(to_string(config.allocation)) + "\n";
  }
  out += "threshold = " + format_exact(config.qber_threshold) + "\n";
  out += "sample-fraction = " + format_exact(config.sample_fraction) + "\n";
  out += "seed = " + std::to_string(config.seed) + "\n";
  return out;
}

}  // namespace qkd

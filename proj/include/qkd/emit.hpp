#pragma once

#include <string>

#include "qkd/summary.hpp"
#include "qkd/sweep.hpp"

namespace qkd {

enum class OutputFormat { Json, Csv };

OutputFormat parse_format(const std::string& text);  // usage_error

// Serializes a summary with the fixed key set {protocol, rounds, noise_p,
// eve_p, eve_mode, bell_ratio, seed, sifted_rate, conclusive_rate,
// qber_percent, chsh_s, risk, decision}, in that order, numbers at 6
// significant digits, absent values as null (JSON) or empty fields (CSV).
// Output is byte-stable for equal summaries.
std::string emit_summary(const SessionSummary& summary, OutputFormat format);

// Header `noise_p,eve_p,qber_percent,rate,chsh_s,risk,decision` then one row
// per cell in row-major order; empty field for inapplicable columns.
std::string emit_grid_csv(const SweepGrid& grid);

// Flat `key = value` lines using the CLI flag names; parse_config reads the
// result back into an identical SessionConfig.
std::string emit_config_file(const SessionConfig& config);

// "%.6g" rendering used for every floating-point field in emitted artifacts.
std::string format_number(double value);

}  // namespace qkd

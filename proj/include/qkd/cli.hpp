#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qkd/config.hpp"
#include "qkd/sweep.hpp"

namespace qkd::cli {

// Expands "start:stop:step" (stop included when it lands within 1e-9) or a
// single probability into an axis. usage_error on malformed syntax.
std::vector<double> parse_axis(const std::string& text);

// Flat `key = value` config file: '#' comments and blank lines ignored.
// Returns pairs in file order; parse_error with line number on bad lines.
std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& text);

// Builds a SessionConfig from flag-named key/value pairs (as emitted by
// emit_config_file). Unknown keys and inapplicable fields are usage errors.
SessionConfig session_config_from_kv(
    const std::vector<std::pair<std::string, std::string>>& kv);

// Full command-line entry point: `qkd run|sweep|replay ...`. Returns the
// process exit code; all diagnostics go to stderr as one line with a
// machine-parsable `qkd: <category>: ` prefix.
int run_cli(int argc, const char* const* argv);

}  // namespace qkd::cli

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace qkd {

// Quantum bit error rate over a compared bit set. `degenerate` marks an
// empty comparison set, reported as zero error rather than a division fault.
struct QberReport {
  std::uint64_t n_error = 0;
  std::uint64_t n_total = 0;
  double fraction = 0.0;
  double percent = 0.0;
  bool degenerate = false;
};

// n_error > n_total is a domain error.
QberReport qber(std::uint64_t n_error, std::uint64_t n_total);

// Three-level security classification, ordered by severity.
enum class RiskTier { Lowest, Mid, Highest };

struct RiskThresholds {
  double lowest_max_percent = 4.0;  // QBER <= 4% : Lowest
  double mid_max_percent = 11.0;    // 4% < QBER <= 11% : Mid, above: Highest
  double chsh_mid = 2.2;            // S at or below: escalate to at least Mid
  double chsh_high = 2.0;           // S at or below: Highest
};

// QBER tier, combined with the CHSH tier at maximum severity when a CHSH
// value is supplied (E91 sessions).
RiskTier risk_classify_percent(double percent, std::optional<double> s = {},
                               const RiskThresholds& thresholds = {});
RiskTier risk_classify(const QberReport& q, std::optional<double> s = {},
                       const RiskThresholds& thresholds = {});

enum class DecisionOutcome { Accept, Abort };

// Accept/abort verdict; `reason` names the failed condition(s) on Abort.
struct SecurityDecision {
  DecisionOutcome value = DecisionOutcome::Abort;
  std::string reason;
};

// kept/total; total = 0 is a domain error.
double sifted_rate(std::uint64_t kept, std::uint64_t total);

// Exact expected statistics produced by a protocol's enumeration oracle.
// `rate` is the sifted fraction (BB84) or conclusive fraction (B92); the
// CHSH fields are populated for E91 only.
struct ExpectedStats {
  double qber = 0.0;
  double rate = 0.0;
  std::optional<std::array<double, 4>> e_values;
  std::optional<double> s;
};

const char* to_string(RiskTier t);        // "lowest" | "mid" | "highest"
const char* to_string(DecisionOutcome d);  // "accept" | "abort"

}  // namespace qkd

#include "qkd/metrics.hpp"

#include <algorithm>
#include <string>

#include "qkd/error.hpp"

namespace qkd {

QberReport qber(std::uint64_t n_error, std::uint64_t n_total) {
  if (n_error > n_total) {
    throw domain_error("qber: n_error (" + std::to_string(n_error) +
                       ") exceeds n_total (" + std::to_string(n_total) + ")");
  }
  QberReport r;
  r.n_error = n_error;
  r.n_total = n_total;
  if (n_total == 0) {
    r.degenerate = true;
    return r;
  }
  r.fraction = static_cast<double>(n_error) / static_cast<double>(n_total);
  r.percent = (100.0 * static_cast<double>(n_error)) / static_cast<double>(n_total);
  return r;
}

RiskTier risk_classify_percent(double percent, std::optional<double> s,
                               const RiskThresholds& thresholds) {
  RiskTier from_qber = percent <= thresholds.lowest_max_percent ? RiskTier::Lowest
                       : percent <= thresholds.mid_max_percent  ? RiskTier::Mid
                                                                : RiskTier::Highest;
  if (!s.has_value()) {
    return from_qber;
  }
  RiskTier from_chsh = *s <= thresholds.chsh_high  ? RiskTier::Highest
                       : *s <= thresholds.chsh_mid ? RiskTier::Mid
                                                   : RiskTier::Lowest;
  return std::max(from_qber, from_chsh);
}

RiskTier risk_classify(const QberReport& q, std::optional<double> s,
                       const RiskThresholds& thresholds) {
  return risk_classify_percent(q.percent, s, thresholds);
}

double sifted_rate(std::uint64_t kept, std::uint64_t total) {
  if (total == 0) {
    throw domain_error("sifted_rate: total must be > 0");
  }
  if (kept > total) {
    throw domain_error("sifted_rate: kept (" + std::to_string(kept) +
                       ") exceeds total (" + std::to_string(total) + ")");
  }
  return static_cast<double>(kept) / static_cast<double>(total);
}

const char* to_string(RiskTier t) {
  switch (t) {
    case RiskTier::Lowest: return "lowest";
    case RiskTier::Mid: return "mid";
    case RiskTier::Highest: return "highest";
  }
  return "?";
}

const char* to_string(DecisionOutcome d) {
  return d == DecisionOutcome::Accept ? "accept" : "abort";
}

}  // namespace qkd

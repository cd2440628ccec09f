#pragma once

#include <cstdint>
#include <optional>

#include "qkd/b92.hpp"
#include "qkd/bb84.hpp"
#include "qkd/config.hpp"
#include "qkd/e91.hpp"
#include "qkd/metrics.hpp"

namespace qkd {

// Protocol-agnostic aggregate of one session (or one replay). Fields that a
// protocol or source does not provide stay absent and serialize as null.
struct SessionSummary {
  Protocol protocol = Protocol::Bb84;
  std::uint64_t rounds = 0;
  std::optional<double> noise_p;
  std::optional<double> eve_p;
  std::optional<EveMode> eve_mode;
  std::optional<double> bell_ratio;
  std::optional<std::uint64_t> seed;
  std::optional<double> sifted_rate;      // BB84; key fraction for E91
  std::optional<double> conclusive_rate;  // B92
  QberReport qber;
  std::optional<ChshEstimate> chsh;
  RiskTier risk = RiskTier::Lowest;
  std::optional<SecurityDecision> decision;  // E91
};

SessionSummary make_summary(const Bb84Session& session);
SessionSummary make_summary(const B92Session& session);
SessionSummary make_summary(const E91Session& session);

}  // namespace qkd

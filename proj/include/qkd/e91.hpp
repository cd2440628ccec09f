#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qkd/angle.hpp"
#include "qkd/channel.hpp"
#include "qkd/config.hpp"
#include "qkd/metrics.hpp"

namespace qkd {

// The four CHSH basis pairs, in the fixed reporting order.
enum class ChshPair { A1B1, A1B3, A2B1, A2B3 };

const char* to_string(ChshPair p);  // "A1B1" ...

// Analyzer angles of the agreed measurement alphabet. A1 doubles as the
// matched key-generation setting on both sides.
namespace e91_angles {
inline PolarizationAngle a1() { return PolarizationAngle(0.0); }
inline PolarizationAngle a2() { return PolarizationAngle(45.0); }
inline PolarizationAngle key_b() { return PolarizationAngle(0.0); }
inline PolarizationAngle b1() { return PolarizationAngle(22.5); }
inline PolarizationAngle b3() { return PolarizationAngle(67.5); }
}  // namespace e91_angles

enum class PurposeKind { Key, Bell, Discarded };

struct RoundPurpose {
  PurposeKind kind = PurposeKind::Discarded;
  std::optional<ChshPair> pair;  // present iff kind == Bell
};

// Purpose from the pre-agreed angle rule: (0,0) makes a key round, the four
// CHSH pairs make Bell rounds, (45,0) is discarded. Angles outside the
// agreed sets are a domain error.
RoundPurpose classify_round(PolarizationAngle a_angle, PolarizationAngle b_angle);

struct E91Round {
  RoundPurpose purpose;
  PolarizationAngle a_angle;
  PolarizationAngle b_angle;
  Outcome a_outcome = Outcome::Aligned;
  Outcome b_outcome = Outcome::Aligned;
  EveRecord eve;
  bool noise_flipped = false;
};

struct PairCounts {
  std::uint64_t n_same = 0;
  std::uint64_t n_diff = 0;
};

// (n_same - n_diff) / (n_same + n_diff); zero rounds for the pair is an
// insufficient-data error naming it.
double correlation_estimate(const PairCounts& counts, ChshPair which);

// e(A1,B1) - e(A1,B3) + e(A2,B1) + e(A2,B3), associated so the noiseless
// oracle lands exactly on 2*sqrt(2).
double chsh_value(const std::array<double, 4>& e_values);

struct ChshEstimate {
  std::array<double, 4> e_values{};   // order A1B1, A1B3, A2B1, A2B3
  std::array<PairCounts, 4> counts{};
  double s = 0.0;
};

// Accept iff |s| > 2 and qber <= qber_threshold; Abort otherwise with the
// failed condition(s) in the reason.
SecurityDecision security_decision(double s, double qber_fraction,
                                   double qber_threshold);

struct E91Session {
  SessionConfig config;
  std::vector<E91Round> rounds;
  std::uint64_t key_rounds = 0;
  std::uint64_t bell_rounds = 0;
  std::uint64_t discarded_rounds = 0;
  ChshEstimate chsh;
  QberReport qber;  // over key rounds
  SecurityDecision decision;
  RiskTier risk = RiskTier::Lowest;
};

E91Session run_e91(const SessionConfig& config);

// Exact expected pair correlations, CHSH value and key-round error rate by
// exhaustive enumeration of the per-round branch space under the given eve
// mode and analyzer set. `rate` is left 0; the key fraction is an
// allocation property, not a channel one.
ExpectedStats expected_e91(double noise_p, double eve_p, EveMode mode,
                           const std::vector<PolarizationAngle>& angle_set);

}  // namespace qkd

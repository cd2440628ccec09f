#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qkd/angle.hpp"
#include "qkd/channel.hpp"
#include "qkd/config.hpp"
#include "qkd/metrics.hpp"

namespace qkd {

// The three-outcome unambiguous-discrimination measurement.
enum class B92Result { ConclusiveBit0, ConclusiveBit1, Inconclusive };

// Bit 0 -> 0 degrees (H), bit 1 -> 45 degrees (+).
PolarizationAngle b92_encode(int bit);

// Receiver measurement with test analyzer 90 (V) or 135 (-): a click at V
// identifies bit 1, a click at - identifies bit 0, no click is inconclusive.
// Any other test analyzer is a domain error.
B92Result b92_receiver_measure(PolarizationAngle state, PolarizationAngle test,
                               double draw);

struct B92Round {
  int sender_bit = 0;
  PolarizationAngle encoded_state;
  EveRecord eve;
  PolarizationAngle received_state;
  PolarizationAngle receiver_test;
  B92Result result = B92Result::Inconclusive;
  std::optional<int> receiver_bit;  // present iff conclusive
};

struct B92Session {
  SessionConfig config;
  std::vector<B92Round> rounds;
  std::vector<std::uint64_t> conclusive_indices;
  std::vector<int> sifted_sender;
  std::vector<int> sifted_receiver;
  std::vector<std::uint64_t> sample_indices;  // positions in the conclusive key
  double conclusive_rate = 0.0;
  QberReport qber;  // over sampled conclusive bits
  RiskTier risk = RiskTier::Lowest;
};

B92Session run_b92(const SessionConfig& config);

// Exact expected conclusive rate and QBER by exhaustive enumeration.
// Reference closed forms: no eve -> rate = (1+2p)/4, qber = 2p/(1+2p);
// eve only -> rate = 1/4, qber = 3/8 * eve_p.
ExpectedStats expected_b92(double noise_p, double eve_p);

}  // namespace qkd

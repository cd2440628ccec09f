#pragma once

#include <cstdint>
#include <vector>

#include "qkd/angle.hpp"
#include "qkd/channel.hpp"
#include "qkd/config.hpp"
#include "qkd/metrics.hpp"

namespace qkd {

enum class Basis { Rectilinear, Diagonal };  // + and x

// Bit-to-state map: (0,+) -> 0, (1,+) -> 90, (0,x) -> 45, (1,x) -> 135.
PolarizationAngle bb84_encode(int bit, Basis basis);

// The analyzer axis a receiver uses for a basis: its bit-0 state.
PolarizationAngle basis_analyzer(Basis basis);

struct Bb84Round {
  int sender_bit = 0;
  Basis sender_basis = Basis::Rectilinear;
  PolarizationAngle encoded_state;
  EveRecord eve;
  PolarizationAngle received_state;
  Basis receiver_basis = Basis::Rectilinear;
  int receiver_bit = 0;
  bool kept = false;  // bases matched
};

struct SiftResult {
  std::vector<std::uint64_t> indices;  // kept round indices, original order
  std::vector<int> sender_bits;
  std::vector<int> receiver_bits;
};

// Keeps exactly the rounds whose bases matched.
SiftResult sift_bb84(const std::vector<Bb84Round>& rounds);

struct Bb84Session {
  SessionConfig config;
  std::vector<Bb84Round> rounds;
  std::vector<std::uint64_t> sifted_indices;
  std::vector<int> sifted_sender;
  std::vector<int> sifted_receiver;
  std::vector<std::uint64_t> sample_indices;  // positions in the sifted key
  QberReport qber;                            // over sample_indices
  double sifted_rate = 0.0;
  RiskTier risk = RiskTier::Lowest;
};

// Runs a full session from config.seed. Deterministic per (config, seed).
Bb84Session run_bb84(const SessionConfig& config);

// Exact expected QBER and sifted rate by exhaustive enumeration of the
// per-round branch space, each branch weighted by its Born/Bernoulli
// probability. Satisfies qber = noise_p + eve_p*(1/4 - noise_p/2).
ExpectedStats expected_bb84(double noise_p, double eve_p);

}  // namespace qkd

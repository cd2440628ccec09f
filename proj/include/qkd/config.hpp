#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkd/angle.hpp"
#include "qkd/channel.hpp"

namespace qkd {

enum class Protocol { Bb84, B92, E91 };

// How E91 rounds are allocated between key generation and Bell testing:
// Designated pre-assigns each round (Bell with probability bell_ratio, no
// discards); Independent draws both angles uniformly and classifies after
// the fact, discarding the unusable pair.
enum class AllocationMode { Designated, Independent };

// Full parameterization of one protocol session. eve_mode, bell_ratio,
// allocation and eve_angles apply to E91 only.
struct SessionConfig {
  Protocol protocol = Protocol::Bb84;
  std::uint64_t rounds = 20000;
  double noise_p = 0.0;
  double eve_p = 0.0;
  EveMode eve_mode = EveMode::NotApplicable;
  double bell_ratio = 0.25;
  AllocationMode allocation = AllocationMode::Designated;
  double qber_threshold = 0.11;
  double sample_fraction = 1.0;
  std::uint64_t seed = 0;
  std::vector<PolarizationAngle> eve_angles;  // E91 interception analyzers

  // Protocol-appropriate defaults: E91 gets eve_mode Both and analyzers
  // {0, 45}; the other protocols keep eve_mode NotApplicable.
  static SessionConfig defaults(Protocol protocol);

  // Throws config_error naming the first offending field.
  void validate() const;
};

const char* to_string(Protocol p);
const char* to_string(EveMode m);
const char* to_string(AllocationMode m);

Protocol parse_protocol(const std::string& text);        // usage_error
EveMode parse_eve_mode(const std::string& text);         // usage_error
AllocationMode parse_allocation(const std::string& text);  // usage_error

}  // namespace qkd

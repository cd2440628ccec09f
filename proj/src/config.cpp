#include "qkd/config.hpp"

#include <string>

#include "qkd/error.hpp"

namespace qkd {

namespace {

void check_probability(double value, const char* field) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw config_error(std::string(field) + " must be in [0,1] (got " +
                       std::to_string(value) + ")");
  }
}

}  // namespace

SessionConfig SessionConfig::defaults(Protocol protocol) {
  SessionConfig c;
  c.protocol = protocol;
  if (protocol == Protocol::E91) {
    c.eve_mode = EveMode::Both;
    c.eve_angles = {PolarizationAngle(0.0), PolarizationAngle(45.0)};
  }
  return c;
}

void SessionConfig::validate() const {
  if (rounds < 1) {
    throw config_error("rounds must be >= 1 (got " + std::to_string(rounds) + ")");
  }
  check_probability(noise_p, "noise_p");
  check_probability(eve_p, "eve_p");
  check_probability(qber_threshold, "qber_threshold");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw config_error("sample_fraction must be in (0,1] (got " +
                       std::to_string(sample_fraction) + ")");
  }
  if (protocol == Protocol::E91) {
    check_probability(bell_ratio, "bell_ratio");
    if (eve_mode == EveMode::NotApplicable) {
      throw config_error("eve_mode must be key, bell or both for protocol e91");
    }
    if (eve_angles.empty()) {
      throw config_error("eve_angles must be non-empty for protocol e91");
    }
  } else {
    if (eve_mode != EveMode::NotApplicable) {
      throw config_error(std::string("eve_mode not applicable to protocol ") +
                         to_string(protocol));
    }
  }
}

const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::Bb84: return "bb84";
    case Protocol::B92: return "b92";
    case Protocol::E91: return "e91";
  }
  return "?";
}

const char* to_string(EveMode m) {
  switch (m) {
    case EveMode::Key: return "key";
    case EveMode::Bell: return "bell";
    case EveMode::Both: return "both";
    case EveMode::NotApplicable: return "n/a";
  }
  return "?";
}

const char* to_string(AllocationMode m) {
  switch (m) {
    case AllocationMode::Designated: return "designated";
    case AllocationMode::Independent: return "independent";
  }
  return "?";
}

Protocol parse_protocol(const std::string& text) {
  if (text == "bb84") return Protocol::Bb84;
  if (text == "b92") return Protocol::B92;
  if (text == "e91") return Protocol::E91;
  throw usage_error("unknown protocol '" + text + "' (expected bb84, b92 or e91)");
}

EveMode parse_eve_mode(const std::string& text) {
  if (text == "key") return EveMode::Key;
  if (text == "bell") return EveMode::Bell;
  if (text == "both") return EveMode::Both;
  throw usage_error("unknown eve mode '" + text + "' (expected key, bell or both)");
}

AllocationMode parse_allocation(const std::string& text) {
  if (text == "designated") return AllocationMode::Designated;
  if (text == "independent") return AllocationMode::Independent;
  throw usage_error("unknown allocation mode '" + text +
                    "' (expected designated or independent)");
}

}  // namespace qkd

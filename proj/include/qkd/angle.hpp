#pragma once

#include <cmath>

#include "qkd/error.hpp"

namespace qkd {

// Two angles closer than this (on the 180-degree circle) are the same state.
inline constexpr double kAngleToleranceDeg = 1e-9;

// Maps any finite angle into [0, 180). phi and phi + 180 describe the same
// polarization axis. Throws domain_error on non-finite input.
double canonicalize_degrees(double degrees);

// A photon or analyzer orientation in degrees, canonicalized into [0, 180).
class PolarizationAngle {
 public:
  PolarizationAngle() = default;
  explicit PolarizationAngle(double degrees)
      : degrees_(canonicalize_degrees(degrees)) {}

  double degrees() const noexcept { return degrees_; }

  PolarizationAngle rotated(double delta_degrees) const {
    return PolarizationAngle(degrees_ + delta_degrees);
  }

  // Exact comparison of canonical values (used for determinism checks).
  friend bool operator==(PolarizationAngle a, PolarizationAngle b) {
    return a.degrees_ == b.degrees_;
  }
  friend bool operator!=(PolarizationAngle a, PolarizationAngle b) {
    return !(a == b);
  }

 private:
  double degrees_ = 0.0;
};

// Equality up to kAngleToleranceDeg, measured around the 180-degree circle.
bool approx_equal(PolarizationAngle a, PolarizationAngle b,
                  double tolerance_deg = kAngleToleranceDeg);

// Detector fires on the analyzer axis (Aligned, +1) or on its perpendicular
// (Orthogonal, -1). Orthogonal at theta is the same event as Aligned at
// theta + 90.
enum class Outcome { Aligned, Orthogonal };

inline int outcome_sign(Outcome o) { return o == Outcome::Aligned ? +1 : -1; }

// The four maximally entangled two-photon states. Only PhiPlus is used as a
// source state; the others are named for completeness.
enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

}  // namespace qkd

#include "qkd/qstate.hpp"

#include <cmath>

namespace qkd {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double deg) { return deg * (kPi / 180.0); }

bool near(double x, double target) {
  return std::fabs(x - target) <= kAngleToleranceDeg;
}

// The protocols live entirely on multiples of 22.5 degrees; pinning those
// probabilities to closed-form constants keeps noiseless statistics exact
// (a cos^2 of 3.7e-33 would still fire once per 2^53 draws).
double exact_click(double delta_deg) {
  if (near(delta_deg, 0.0) || near(delta_deg, 180.0)) return 1.0;
  if (near(delta_deg, 90.0)) return 0.0;
  if (near(delta_deg, 45.0) || near(delta_deg, 135.0)) return 0.5;
  if (near(delta_deg, 22.5) || near(delta_deg, 157.5)) {
    return (2.0 + std::sqrt(2.0)) / 4.0;
  }
  if (near(delta_deg, 67.5) || near(delta_deg, 112.5)) {
    // Exact complement of the 22.5-degree value, so click(d) + click(d+90)
    // is 1.0 with no rounding residue.
    return 1.0 - (2.0 + std::sqrt(2.0)) / 4.0;
  }
  double c = std::cos(deg2rad(delta_deg));
  return c * c;
}

double exact_correlation(double delta_deg) {
  if (near(delta_deg, 0.0) || near(delta_deg, 180.0)) return 1.0;
  if (near(delta_deg, 90.0)) return -1.0;
  if (near(delta_deg, 45.0) || near(delta_deg, 135.0)) return 0.0;
  if (near(delta_deg, 22.5) || near(delta_deg, 157.5)) {
    return std::sqrt(2.0) / 2.0;
  }
  if (near(delta_deg, 67.5) || near(delta_deg, 112.5)) {
    return -std::sqrt(2.0) / 2.0;
  }
  return std::cos(2.0 * deg2rad(delta_deg));
}

}  // namespace

double click_probability(PolarizationAngle state, PolarizationAngle analyzer) {
  return exact_click(canonicalize_degrees(state.degrees() - analyzer.degrees()));
}

Outcome measure_polarization(PolarizationAngle state, PolarizationAngle analyzer,
                             double draw) {
  if (!(draw >= 0.0 && draw < 1.0)) {
    throw domain_error("measurement draw must lie in [0,1)");
  }
  return draw < click_probability(state, analyzer) ? Outcome::Aligned
                                                   : Outcome::Orthogonal;
}

double correlation_phi_plus(PolarizationAngle a, PolarizationAngle b) {
  return exact_correlation(canonicalize_degrees(a.degrees() - b.degrees()));
}

PolarizationAngle collapse_partner(PolarizationAngle a, Outcome outcome) {
  return outcome == Outcome::Aligned ? a : a.rotated(90.0);
}

std::pair<Outcome, Outcome> sample_pair_phi_plus(PolarizationAngle a,
                                                 PolarizationAngle b,
                                                 double draw_first,
                                                 double draw_second) {
  if (!(draw_first >= 0.0 && draw_first < 1.0)) {
    throw domain_error("measurement draw must lie in [0,1)");
  }
  Outcome first = draw_first < 0.5 ? Outcome::Aligned : Outcome::Orthogonal;
  Outcome second = measure_polarization(collapse_partner(a, first), b, draw_second);
  return {first, second};
}

}  // namespace qkd

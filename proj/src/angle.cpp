#include "qkd/angle.hpp"

#include <cmath>

namespace qkd {

double canonicalize_degrees(double degrees) {
  if (!std::isfinite(degrees)) {
    throw domain_error("polarization angle must be finite");
  }
  double c = std::fmod(degrees, 180.0);
  if (c < 0.0) {
    c += 180.0;
  }
  if (c >= 180.0) {  // fmod rounding can land exactly on 180
    c -= 180.0;
  }
  return c;
}

bool approx_equal(PolarizationAngle a, PolarizationAngle b, double tolerance_deg) {
  double d = std::fabs(a.degrees() - b.degrees());
  double circular = std::min(d, 180.0 - d);
  return circular <= tolerance_deg;
}

}  // namespace qkd

#pragma once

#include <utility>

#include "qkd/angle.hpp"

namespace qkd {

// Born-rule probability that a photon in `state` fires the detector on the
// `analyzer` axis: cos^2(state - analyzer). Exact (0, 1/2, 1, (2 +- sqrt2)/4)
// at multiples of 22.5 degrees so that noiseless statistics are exact.
double click_probability(PolarizationAngle state, PolarizationAngle analyzer);

// Samples one projective measurement: Aligned iff draw < click_probability.
// draw must lie in [0,1).
Outcome measure_polarization(PolarizationAngle state, PolarizationAngle analyzer,
                             double draw);

// Outcome correlation E = cos(2(a-b)) of PhiPlus polarization pairs measured
// at analyzer angles a and b; equals P(same) - P(different).
double correlation_phi_plus(PolarizationAngle a, PolarizationAngle b);

// Pure state of the partner photon after the first party measures PhiPlus at
// angle a: the analyzer axis on Aligned, its perpendicular on Orthogonal.
PolarizationAngle collapse_partner(PolarizationAngle a, Outcome outcome);

// Samples both outcomes of one PhiPlus pair: the first is uniform, the
// second measures the collapsed partner. Marginal P(same) = cos^2(a-b).
std::pair<Outcome, Outcome> sample_pair_phi_plus(PolarizationAngle a,
                                                 PolarizationAngle b,
                                                 double draw_first,
                                                 double draw_second);

}  // namespace qkd

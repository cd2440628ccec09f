#pragma once

#include <optional>
#include <vector>

#include "qkd/angle.hpp"

namespace qkd {

// Channel noise: the in-flight photon is rotated by 90 degrees with
// probability flip_probability.
struct NoiseSpec {
  double flip_probability = 0.0;

  NoiseSpec() = default;
  explicit NoiseSpec(double p);  // config_error outside [0,1]
};

enum class EveMode { Key, Bell, Both, NotApplicable };

// Intercept-resend eavesdropper parameters. `mode` and `angle_set` apply to
// E91 sessions only; BB84/B92 interceptors have fixed measurement alphabets.
struct EveSpec {
  double intercept_probability = 0.0;
  EveMode mode = EveMode::NotApplicable;
  std::vector<PolarizationAngle> angle_set;  // E91 analyzers, default {0, 45}

  EveSpec() = default;
  EveSpec(double intercept_probability, EveMode mode,
          std::vector<PolarizationAngle> angle_set = {});
};

// What Eve did on one round. All optionals are absent when she did not
// intercept; on a B92 inconclusive branch she resends a guess and the
// inferred bit stays absent.
struct EveRecord {
  bool intercepted = false;
  std::optional<PolarizationAngle> eve_analyzer;
  std::optional<Outcome> eve_outcome;
  std::optional<int> eve_inferred_bit;
  std::optional<PolarizationAngle> resent_state;
  bool guessed = false;

  static EveRecord none() { return EveRecord{}; }
};

// With probability flip_probability (draw < p) rotates the state by 90
// degrees; otherwise returns it unchanged.
PolarizationAngle apply_flip_noise(PolarizationAngle state, const NoiseSpec& spec,
                                   double draw);

struct InterceptResult {
  PolarizationAngle state;  // what travels on toward the receiver
  EveRecord eve;
};

// BB84 interceptor: Eve picks the rectilinear (analyzer 0) or diagonal
// (analyzer 45) basis uniformly, measures, and resends the eigenstate of her
// outcome. Aligned infers bit 0, Orthogonal bit 1.
InterceptResult bb84_intercept_resend(PolarizationAngle state, double draw_basis,
                                      double draw_outcome);

// B92 interceptor: Eve tests uniformly with analyzer 90 (V) or 135 (-).
// A click identifies the state she could not have received, so she resends
// the inferred signal state; on no click she resends a uniform guess from
// {0, 45} with the inferred bit absent. The input must be a B92 signal state.
InterceptResult b92_intercept_resend(PolarizationAngle state, double draw_test,
                                     double draw_click, double draw_guess);

// E91 interceptor for the receiver-bound photon: analyzer drawn uniformly
// from spec.angle_set, measured, and the outcome eigenstate resent.
// config_error on an empty angle_set.
InterceptResult e91_intercept(PolarizationAngle flying_state, const EveSpec& spec,
                              double draw_pick, double draw_outcome);

}  // namespace qkd

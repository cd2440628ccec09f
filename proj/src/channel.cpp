#include "qkd/channel.hpp"

#include <string>

#include "qkd/error.hpp"
#include "qkd/qstate.hpp"

namespace qkd {

NoiseSpec::NoiseSpec(double p) : flip_probability(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw config_error("flip_probability must be in [0,1] (got " +
                       std::to_string(p) + ")");
  }
}

EveSpec::EveSpec(double intercept_probability_, EveMode mode_,
                 std::vector<PolarizationAngle> angle_set_)
    : intercept_probability(intercept_probability_),
      mode(mode_),
      angle_set(std::move(angle_set_)) {
  if (!(intercept_probability >= 0.0 && intercept_probability <= 1.0)) {
    throw config_error("intercept_probability must be in [0,1] (got " +
                       std::to_string(intercept_probability) + ")");
  }
}

PolarizationAngle apply_flip_noise(PolarizationAngle state, const NoiseSpec& spec,
                                   double draw) {
  if (!(draw >= 0.0 && draw < 1.0)) {
    throw domain_error("noise draw must lie in [0,1)");
  }
  return draw < spec.flip_probability ? state.rotated(90.0) : state;
}

InterceptResult bb84_intercept_resend(PolarizationAngle state, double draw_basis,
                                      double draw_outcome) {
  PolarizationAngle analyzer(draw_basis < 0.5 ? 0.0 : 45.0);
  Outcome outcome = measure_polarization(state, analyzer, draw_outcome);
  PolarizationAngle resent = collapse_partner(analyzer, outcome);

  EveRecord record;
  record.intercepted = true;
  record.eve_analyzer = analyzer;
  record.eve_outcome = outcome;
  record.eve_inferred_bit = outcome == Outcome::Aligned ? 0 : 1;
  record.resent_state = resent;
  return {resent, record};
}

InterceptResult b92_intercept_resend(PolarizationAngle state, double draw_test,
                                     double draw_click, double draw_guess) {
  const PolarizationAngle h(0.0), plus(45.0);
  if (!approx_equal(state, h) && !approx_equal(state, plus)) {
    throw domain_error("b92 interceptor expects a signal state of 0 or 45 "
                       "degrees (got " + std::to_string(state.degrees()) + ")");
  }

  PolarizationAngle test(draw_test < 0.5 ? 90.0 : 135.0);
  bool click = measure_polarization(state, test, draw_click) == Outcome::Aligned;

  EveRecord record;
  record.intercepted = true;
  record.eve_analyzer = test;
  record.eve_outcome = click ? Outcome::Aligned : Outcome::Orthogonal;

  PolarizationAngle resent;
  if (click) {
    // A click at V rules out H, so the signal was |+> (bit 1); a click at -
    // rules out |+>, so it was H (bit 0). Eve resends what she inferred.
    bool tested_v = approx_equal(test, PolarizationAngle(90.0));
    record.eve_inferred_bit = tested_v ? 1 : 0;
    resent = tested_v ? plus : h;
  } else {
    record.guessed = true;
    resent = draw_guess < 0.5 ? h : plus;
  }
  record.resent_state = resent;
  return {resent, record};
}

InterceptResult e91_intercept(PolarizationAngle flying_state, const EveSpec& spec,
                              double draw_pick, double draw_outcome) {
  if (spec.angle_set.empty()) {
    throw config_error("eve angle_set must be non-empty");
  }
  std::size_t n = spec.angle_set.size();
  std::size_t idx = static_cast<std::size_t>(draw_pick * static_cast<double>(n));
  if (idx >= n) idx = n - 1;

  PolarizationAngle analyzer = spec.angle_set[idx];
  Outcome outcome = measure_polarization(flying_state, analyzer, draw_outcome);
  PolarizationAngle resent = collapse_partner(analyzer, outcome);

  EveRecord record;
  record.intercepted = true;
  record.eve_analyzer = analyzer;
  record.eve_outcome = outcome;
  record.resent_state = resent;
  return {resent, record};
}

}  // namespace qkd

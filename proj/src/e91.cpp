#include "qkd/e91.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qkd/error.hpp"
#include "qkd/qstate.hpp"
#include "qkd/random.hpp"

namespace qkd {

namespace {

std::string fmt_g6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

bool eve_covers(EveMode mode, PurposeKind kind) {
  switch (mode) {
    case EveMode::Both: return true;
    case EveMode::Key: return kind == PurposeKind::Key;
    case EveMode::Bell: return kind == PurposeKind::Bell;
    case EveMode::NotApplicable: return false;
  }
  return false;
}

struct PairAngles {
  PolarizationAngle a;
  PolarizationAngle b;
};

PairAngles pair_angles(ChshPair pair) {
  switch (pair) {
    case ChshPair::A1B1: return {e91_angles::a1(), e91_angles::b1()};
    case ChshPair::A1B3: return {e91_angles::a1(), e91_angles::b3()};
    case ChshPair::A2B1: return {e91_angles::a2(), e91_angles::b1()};
    case ChshPair::A2B3: return {e91_angles::a2(), e91_angles::b3()};
  }
  return {e91_angles::a1(), e91_angles::b1()};
}

// Exact E[sign_a * sign_b] for one analyzer pair by enumerating sender
// outcome, interception, Eve's analyzer and outcome, and the noise flip,
// each branch weighted by its Born/Bernoulli probability.
double expected_correlation(PolarizationAngle a, PolarizationAngle b,
                            double attack_prob,
                            const std::vector<PolarizationAngle>& angle_set,
                            double noise_p) {
  double e_total = 0.0;
  for (int sign : {+1, -1}) {
    Outcome first = sign > 0 ? Outcome::Aligned : Outcome::Orthogonal;
    PolarizationAngle partner = collapse_partner(a, first);

    struct Branch { PolarizationAngle state; double weight; };
    std::vector<Branch> in_flight;
    if (attack_prob < 1.0) {
      in_flight.push_back({partner, 1.0 - attack_prob});
    }
    if (attack_prob > 0.0) {
      double w_pick = attack_prob / static_cast<double>(angle_set.size());
      for (PolarizationAngle analyzer : angle_set) {
        double p_aligned = click_probability(partner, analyzer);
        if (p_aligned > 0.0) {
          in_flight.push_back({analyzer, w_pick * p_aligned});
        }
        if (p_aligned < 1.0) {
          in_flight.push_back({analyzer.rotated(90.0), w_pick * (1.0 - p_aligned)});
        }
      }
    }

    for (const Branch& branch : in_flight) {
      struct Noisy { PolarizationAngle state; double weight; };
      Noisy noisy[2] = {{branch.state, branch.weight * (1.0 - noise_p)},
                        {branch.state.rotated(90.0), branch.weight * noise_p}};
      for (const Noisy& n : noisy) {
        if (n.weight == 0.0) continue;
        double e_receiver = 2.0 * click_probability(n.state, b) - 1.0;
        e_total += 0.5 * static_cast<double>(sign) * n.weight * e_receiver;
      }
    }
  }
  return e_total;
}

}  // namespace

const char* to_string(ChshPair p) {
  switch (p) {
    case ChshPair::A1B1: return "A1B1";
    case ChshPair::A1B3: return "A1B3";
    case ChshPair::A2B1: return "A2B1";
    case ChshPair::A2B3: return "A2B3";
  }
  return "?";
}

RoundPurpose classify_round(PolarizationAngle a_angle, PolarizationAngle b_angle) {
  bool a_is_1 = approx_equal(a_angle, e91_angles::a1());
  bool a_is_2 = approx_equal(a_angle, e91_angles::a2());
  if (!a_is_1 && !a_is_2) {
    throw domain_error("sender angle " + std::to_string(a_angle.degrees()) +
                       " not in the agreed set {0, 45}");
  }
  bool b_is_key = approx_equal(b_angle, e91_angles::key_b());
  bool b_is_1 = approx_equal(b_angle, e91_angles::b1());
  bool b_is_3 = approx_equal(b_angle, e91_angles::b3());
  if (!b_is_key && !b_is_1 && !b_is_3) {
    throw domain_error("receiver angle " + std::to_string(b_angle.degrees()) +
                       " not in the agreed set {0, 22.5, 67.5}");
  }

  if (b_is_key) {
    return a_is_1 ? RoundPurpose{PurposeKind::Key, {}}
                  : RoundPurpose{PurposeKind::Discarded, {}};
  }
  ChshPair pair = a_is_1 ? (b_is_1 ? ChshPair::A1B1 : ChshPair::A1B3)
                         : (b_is_1 ? ChshPair::A2B1 : ChshPair::A2B3);
  return RoundPurpose{PurposeKind::Bell, pair};
}

double correlation_estimate(const PairCounts& counts, ChshPair which) {
  std::uint64_t total = counts.n_same + counts.n_diff;
  if (total == 0) {
    throw insufficient_data_error(std::string("no rounds recorded for CHSH pair ") +
                                  to_string(which));
  }
  return (static_cast<double>(counts.n_same) - static_cast<double>(counts.n_diff)) /
         static_cast<double>(total);
}

double chsh_value(const std::array<double, 4>& e) {
  // Grouped so the symmetric noiseless point sums without rounding.
  return (e[0] - e[1]) + (e[2] + e[3]);
}

SecurityDecision security_decision(double s, double qber_fraction,
                                   double qber_threshold) {
  if (!(qber_fraction >= 0.0 && qber_fraction <= 1.0)) {
    throw domain_error("security_decision: qber must lie in [0,1]");
  }
  bool bell_ok = std::fabs(s) > 2.0;
  bool qber_ok = qber_fraction <= qber_threshold;

  SecurityDecision decision;
  if (bell_ok && qber_ok) {
    decision.value = DecisionOutcome::Accept;
    return decision;
  }
  decision.value = DecisionOutcome::Abort;
  std::string reason;
  if (!bell_ok) {
    reason += "no Bell violation (|S| = " + fmt_g6(std::fabs(s)) + " <= 2)";
  }
  if (!qber_ok) {
    if (!reason.empty()) reason += "; ";
    reason += "QBER " + fmt_g6(100.0 * qber_fraction) + "% exceeds threshold " +
              fmt_g6(100.0 * qber_threshold) + "%";
  }
  decision.reason = reason;
  return decision;
}

E91Session run_e91(const SessionConfig& config) {
  if (config.protocol != Protocol::E91) {
    throw config_error("run_e91 requires protocol e91 (got " +
                       std::string(to_string(config.protocol)) + ")");
  }
  config.validate();

  RandomSource rng(config.seed);
  NoiseSpec noise(config.noise_p);
  EveSpec eve(config.eve_p, config.eve_mode, config.eve_angles);

  E91Session session;
  session.config = config;
  session.rounds.reserve(config.rounds);

  std::array<PairCounts, 4> counts{};
  std::uint64_t key_same = 0, key_diff = 0;

  for (std::uint64_t i = 0; i < config.rounds; ++i) {
    E91Round round;

    if (config.allocation == AllocationMode::Designated) {
      bool bell = rng.uniform() < config.bell_ratio;
      if (bell) {
        round.a_angle = rng.uniform() < 0.5 ? e91_angles::a1() : e91_angles::a2();
        round.b_angle = rng.uniform() < 0.5 ? e91_angles::b1() : e91_angles::b3();
      } else {
        round.a_angle = e91_angles::a1();
        round.b_angle = e91_angles::key_b();
      }
    } else {
      round.a_angle = rng.uniform() < 0.5 ? e91_angles::a1() : e91_angles::a2();
      std::size_t pick = rng.pick(3);
      round.b_angle = pick == 0   ? e91_angles::key_b()
                      : pick == 1 ? e91_angles::b1()
                                  : e91_angles::b3();
    }
    round.purpose = classify_round(round.a_angle, round.b_angle);

    round.a_outcome = rng.uniform() < 0.5 ? Outcome::Aligned : Outcome::Orthogonal;
    PolarizationAngle flying = collapse_partner(round.a_angle, round.a_outcome);

    double eve_draw = rng.uniform();
    if (eve_covers(eve.mode, round.purpose.kind) &&
        eve_draw < eve.intercept_probability) {
      InterceptResult tapped = e91_intercept(flying, eve, rng.uniform(), rng.uniform());
      flying = tapped.state;
      round.eve = tapped.eve;
    }

    double noise_draw = rng.uniform();
    round.noise_flipped = noise_draw < noise.flip_probability;
    flying = apply_flip_noise(flying, noise, noise_draw);

    round.b_outcome = measure_polarization(flying, round.b_angle, rng.uniform());

    bool same = round.a_outcome == round.b_outcome;
    switch (round.purpose.kind) {
      case PurposeKind::Key:
        ++session.key_rounds;
        same ? ++key_same : ++key_diff;
        break;
      case PurposeKind::Bell: {
        ++session.bell_rounds;
        PairCounts& c = counts[static_cast<std::size_t>(*round.purpose.pair)];
        same ? ++c.n_same : ++c.n_diff;
        break;
      }
      case PurposeKind::Discarded:
        ++session.discarded_rounds;
        break;
    }
    session.rounds.push_back(round);
  }

  session.chsh.counts = counts;
  for (std::size_t p = 0; p < 4; ++p) {
    session.chsh.e_values[p] =
        correlation_estimate(counts[p], static_cast<ChshPair>(p));
  }
  session.chsh.s = chsh_value(session.chsh.e_values);

  session.qber = qber(key_diff, key_same + key_diff);
  session.decision =
      security_decision(session.chsh.s, session.qber.fraction, config.qber_threshold);
  session.risk = risk_classify(session.qber, session.chsh.s);
  return session;
}

ExpectedStats expected_e91(double noise_p, double eve_p, EveMode mode,
                           const std::vector<PolarizationAngle>& angle_set) {
  if (!(noise_p >= 0.0 && noise_p <= 1.0) || !(eve_p >= 0.0 && eve_p <= 1.0)) {
    throw domain_error("expected_e91: probabilities must lie in [0,1]");
  }
  if (eve_p > 0.0) {
    if (mode == EveMode::NotApplicable) {
      throw config_error("expected_e91: eve_mode required when eve_p > 0");
    }
    if (angle_set.empty()) {
      throw config_error("eve angle_set must be non-empty");
    }
  }

  double eve_bell = (mode == EveMode::Bell || mode == EveMode::Both) ? eve_p : 0.0;
  double eve_key = (mode == EveMode::Key || mode == EveMode::Both) ? eve_p : 0.0;

  ExpectedStats stats;
  std::array<double, 4> e_values{};
  for (std::size_t p = 0; p < 4; ++p) {
    PairAngles angles = pair_angles(static_cast<ChshPair>(p));
    e_values[p] =
        expected_correlation(angles.a, angles.b, eve_bell, angle_set, noise_p);
  }
  stats.e_values = e_values;
  stats.s = chsh_value(e_values);

  double e_key = expected_correlation(e91_angles::a1(), e91_angles::key_b(),
                                      eve_key, angle_set, noise_p);
  stats.qber = (1.0 - e_key) / 2.0;
  return stats;
}

}  // namespace qkd

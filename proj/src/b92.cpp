#include "qkd/b92.hpp"

#include <string>

#include "qkd/error.hpp"
#include "qkd/qstate.hpp"
#include "qkd/random.hpp"

namespace qkd {

PolarizationAngle b92_encode(int bit) {
  if (bit != 0 && bit != 1) {
    throw domain_error("b92_encode: bit must be 0 or 1");
  }
  return PolarizationAngle(bit == 0 ? 0.0 : 45.0);
}

B92Result b92_receiver_measure(PolarizationAngle state, PolarizationAngle test,
                               double draw) {
  const PolarizationAngle v(90.0), minus(135.0);
  bool is_v = approx_equal(test, v);
  if (!is_v && !approx_equal(test, minus)) {
    throw domain_error("b92 receiver test must be 90 or 135 degrees (got " +
                       std::to_string(test.degrees()) + ")");
  }
  bool click = measure_polarization(state, test, draw) == Outcome::Aligned;
  if (!click) {
    return B92Result::Inconclusive;
  }
  // A click at V excludes H, so bit 1 was sent; a click at - excludes |+>,
  // so bit 0 was sent.
  return is_v ? B92Result::ConclusiveBit1 : B92Result::ConclusiveBit0;
}

B92Session run_b92(const SessionConfig& config) {
  if (config.protocol != Protocol::B92) {
    throw config_error("run_b92 requires protocol b92 (got " +
                       std::string(to_string(config.protocol)) + ")");
  }
  config.validate();

  RandomSource rng(config.seed);
  NoiseSpec noise(config.noise_p);

  B92Session session;
  session.config = config;
  session.rounds.reserve(config.rounds);

  for (std::uint64_t i = 0; i < config.rounds; ++i) {
    B92Round round;
    round.sender_bit = rng.uniform() < 0.5 ? 0 : 1;
    round.encoded_state = b92_encode(round.sender_bit);

    PolarizationAngle flying = round.encoded_state;
    if (rng.uniform() < config.eve_p) {
      InterceptResult tapped = b92_intercept_resend(flying, rng.uniform(),
                                                    rng.uniform(), rng.uniform());
      flying = tapped.state;
      round.eve = tapped.eve;
    }
    flying = apply_flip_noise(flying, noise, rng.uniform());
    round.received_state = flying;

    round.receiver_test = PolarizationAngle(rng.uniform() < 0.5 ? 90.0 : 135.0);
    round.result = b92_receiver_measure(flying, round.receiver_test, rng.uniform());
    if (round.result == B92Result::ConclusiveBit0) round.receiver_bit = 0;
    if (round.result == B92Result::ConclusiveBit1) round.receiver_bit = 1;

    if (round.receiver_bit.has_value()) {
      session.conclusive_indices.push_back(i);
      session.sifted_sender.push_back(round.sender_bit);
      session.sifted_receiver.push_back(*round.receiver_bit);
    }
    session.rounds.push_back(round);
  }

  std::uint64_t n_conclusive = session.sifted_sender.size();
  session.conclusive_rate =
      static_cast<double>(n_conclusive) / static_cast<double>(config.rounds);

  if (config.sample_fraction >= 1.0) {
    session.sample_indices.resize(n_conclusive);
    for (std::uint64_t i = 0; i < n_conclusive; ++i) session.sample_indices[i] = i;
  } else {
    for (std::uint64_t i = 0; i < n_conclusive; ++i) {
      if (rng.uniform() < config.sample_fraction) session.sample_indices.push_back(i);
    }
  }

  std::uint64_t errors = 0;
  for (std::uint64_t i : session.sample_indices) {
    if (session.sifted_sender[i] != session.sifted_receiver[i]) ++errors;
  }
  session.qber = qber(errors, session.sample_indices.size());
  session.risk = risk_classify(session.qber);
  return session;
}

ExpectedStats expected_b92(double noise_p, double eve_p) {
  if (!(noise_p >= 0.0 && noise_p <= 1.0) || !(eve_p >= 0.0 && eve_p <= 1.0)) {
    throw domain_error("expected_b92: probabilities must lie in [0,1]");
  }

  double p_conclusive = 0.0;
  double p_conclusive_error = 0.0;

  for (int bit = 0; bit < 2; ++bit) {
    double w_bit = 0.5;
    PolarizationAngle encoded = b92_encode(bit);

    // States reaching the noise stage with their weights.
    struct Branch { PolarizationAngle state; double weight; };
    std::vector<Branch> after_eve;
    if (eve_p < 1.0) {
      after_eve.push_back({encoded, 1.0 - eve_p});
    }
    if (eve_p > 0.0) {
      const PolarizationAngle h(0.0), plus(45.0);
      for (double test_deg : {90.0, 135.0}) {
        PolarizationAngle test(test_deg);
        double w_test = eve_p * 0.5;
        double p_click = click_probability(encoded, test);
        if (p_click > 0.0) {
          PolarizationAngle resent = test_deg == 90.0 ? plus : h;
          after_eve.push_back({resent, w_test * p_click});
        }
        if (p_click < 1.0) {
          double w_guess = w_test * (1.0 - p_click) * 0.5;
          after_eve.push_back({h, w_guess});
          after_eve.push_back({plus, w_guess});
        }
      }
    }

    for (const Branch& b : after_eve) {
      struct Noisy { PolarizationAngle state; double weight; };
      Noisy noisy[2] = {{b.state, b.weight * (1.0 - noise_p)},
                        {b.state.rotated(90.0), b.weight * noise_p}};
      for (const Noisy& n : noisy) {
        if (n.weight == 0.0) continue;
        for (double test_deg : {90.0, 135.0}) {
          double w = w_bit * n.weight * 0.5;
          double p_click = click_probability(n.state, PolarizationAngle(test_deg));
          if (p_click == 0.0) continue;
          int inferred = test_deg == 90.0 ? 1 : 0;
          p_conclusive += w * p_click;
          if (inferred != bit) p_conclusive_error += w * p_click;
        }
      }
    }
  }

  ExpectedStats stats;
  stats.rate = p_conclusive;
  stats.qber = p_conclusive > 0.0 ? p_conclusive_error / p_conclusive : 0.0;
  return stats;
}

}  // namespace qkd

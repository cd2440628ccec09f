#include "qkd/bb84.hpp"

#include <string>

#include "qkd/error.hpp"
#include "qkd/qstate.hpp"
#include "qkd/random.hpp"

namespace qkd {

PolarizationAngle bb84_encode(int bit, Basis basis) {
  if (bit != 0 && bit != 1) {
    throw domain_error("bb84_encode: bit must be 0 or 1");
  }
  double axis = basis == Basis::Rectilinear ? 0.0 : 45.0;
  return PolarizationAngle(axis + (bit == 1 ? 90.0 : 0.0));
}

PolarizationAngle basis_analyzer(Basis basis) {
  return PolarizationAngle(basis == Basis::Rectilinear ? 0.0 : 45.0);
}

SiftResult sift_bb84(const std::vector<Bb84Round>& rounds) {
  SiftResult result;
  for (std::uint64_t i = 0; i < rounds.size(); ++i) {
    if (rounds[i].kept) {
      result.indices.push_back(i);
      result.sender_bits.push_back(rounds[i].sender_bit);
      result.receiver_bits.push_back(rounds[i].receiver_bit);
    }
  }
  return result;
}

Bb84Session run_bb84(const SessionConfig& config) {
  if (config.protocol != Protocol::Bb84) {
    throw config_error("run_bb84 requires protocol bb84 (got " +
                       std::string(to_string(config.protocol)) + ")");
  }
  config.validate();

  RandomSource rng(config.seed);
  NoiseSpec noise(config.noise_p);

  Bb84Session session;
  session.config = config;
  session.rounds.reserve(config.rounds);

  for (std::uint64_t i = 0; i < config.rounds; ++i) {
    Bb84Round round;
    round.sender_bit = rng.uniform() < 0.5 ? 0 : 1;
    round.sender_basis = rng.uniform() < 0.5 ? Basis::Rectilinear : Basis::Diagonal;
    round.encoded_state = bb84_encode(round.sender_bit, round.sender_basis);

    PolarizationAngle flying = round.encoded_state;
    if (rng.uniform() < config.eve_p) {
      InterceptResult tapped =
          bb84_intercept_resend(flying, rng.uniform(), rng.uniform());
      flying = tapped.state;
      round.eve = tapped.eve;
    }
    flying = apply_flip_noise(flying, noise, rng.uniform());
    round.received_state = flying;

    round.receiver_basis = rng.uniform() < 0.5 ? Basis::Rectilinear : Basis::Diagonal;
    Outcome outcome = measure_polarization(
        flying, basis_analyzer(round.receiver_basis), rng.uniform());
    round.receiver_bit = outcome == Outcome::Aligned ? 0 : 1;
    round.kept = round.sender_basis == round.receiver_basis;
    session.rounds.push_back(round);
  }

  SiftResult sifted = sift_bb84(session.rounds);
  session.sifted_indices = std::move(sifted.indices);
  session.sifted_sender = std::move(sifted.sender_bits);
  session.sifted_receiver = std::move(sifted.receiver_bits);
  session.sifted_rate = static_cast<double>(session.sifted_sender.size()) /
                        static_cast<double>(config.rounds);

  // Disclosed error-estimation sample: everything at the default fraction,
  // an independent per-bit draw below it.
  std::uint64_t n_sifted = session.sifted_sender.size();
  if (config.sample_fraction >= 1.0) {
    session.sample_indices.resize(n_sifted);
    for (std::uint64_t i = 0; i < n_sifted; ++i) session.sample_indices[i] = i;
  } else {
    for (std::uint64_t i = 0; i < n_sifted; ++i) {
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

ExpectedStats expected_bb84(double noise_p, double eve_p) {
  if (!(noise_p >= 0.0 && noise_p <= 1.0) || !(eve_p >= 0.0 && eve_p <= 1.0)) {
    throw domain_error("expected_bb84: probabilities must lie in [0,1]");
  }

  const Basis bases[2] = {Basis::Rectilinear, Basis::Diagonal};
  double p_kept = 0.0;
  double p_kept_error = 0.0;

  for (int bit = 0; bit < 2; ++bit) {
    for (Basis sender_basis : bases) {
      double w_send = 0.25;  // uniform bit and basis
      PolarizationAngle encoded = bb84_encode(bit, sender_basis);

      // Channel branches: (state reaching the noise stage, weight).
      struct Branch { PolarizationAngle state; double weight; };
      std::vector<Branch> after_eve;
      if (eve_p < 1.0) {
        after_eve.push_back({encoded, 1.0 - eve_p});
      }
      if (eve_p > 0.0) {
        for (double analyzer_deg : {0.0, 45.0}) {
          PolarizationAngle analyzer(analyzer_deg);
          double p_aligned = click_probability(encoded, analyzer);
          if (p_aligned > 0.0) {
            after_eve.push_back({analyzer, eve_p * 0.5 * p_aligned});
          }
          if (p_aligned < 1.0) {
            after_eve.push_back({analyzer.rotated(90.0), eve_p * 0.5 * (1.0 - p_aligned)});
          }
        }
      }

      for (const Branch& b : after_eve) {
        struct Noisy { PolarizationAngle state; double weight; };
        Noisy noisy[2] = {{b.state, b.weight * (1.0 - noise_p)},
                          {b.state.rotated(90.0), b.weight * noise_p}};
        for (const Noisy& n : noisy) {
          if (n.weight == 0.0) continue;
          for (Basis receiver_basis : bases) {
            if (receiver_basis != sender_basis) continue;  // sifted away
            double w = w_send * n.weight * 0.5;
            double p_aligned = click_probability(n.state, basis_analyzer(receiver_basis));
            // Aligned decodes to bit 0.
            double p_wrong = bit == 0 ? (1.0 - p_aligned) : p_aligned;
            p_kept += w;
            p_kept_error += w * p_wrong;
          }
        }
      }
    }
  }

  ExpectedStats stats;
  stats.rate = p_kept;
  stats.qber = p_kept > 0.0 ? p_kept_error / p_kept : 0.0;
  return stats;
}

}  // namespace qkd

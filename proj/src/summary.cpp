#include "qkd/summary.hpp"

namespace qkd {

SessionSummary make_summary(const Bb84Session& session) {
  SessionSummary s;
  s.protocol = Protocol::Bb84;
  s.rounds = session.config.rounds;
  s.noise_p = session.config.noise_p;
  s.eve_p = session.config.eve_p;
  s.seed = session.config.seed;
  s.sifted_rate = session.sifted_rate;
  s.qber = session.qber;
  s.risk = session.risk;
  return s;
}

SessionSummary make_summary(const B92Session& session) {
  SessionSummary s;
  s.protocol = Protocol::B92;
  s.rounds = session.config.rounds;
  s.noise_p = session.config.noise_p;
  s.eve_p = session.config.eve_p;
  s.seed = session.config.seed;
  s.conclusive_rate = session.conclusive_rate;
  s.qber = session.qber;
  s.risk = session.risk;
  return s;
}

SessionSummary make_summary(const E91Session& session) {
  SessionSummary s;
  s.protocol = Protocol::E91;
  s.rounds = session.config.rounds;
  s.noise_p = session.config.noise_p;
  s.eve_p = session.config.eve_p;
  s.eve_mode = session.config.eve_mode;
  s.bell_ratio = session.config.bell_ratio;
  s.seed = session.config.seed;
  s.sifted_rate = static_cast<double>(session.key_rounds) /
                  static_cast<double>(session.config.rounds);
  s.qber = session.qber;
  s.chsh = session.chsh;
  s.risk = session.risk;
  s.decision = session.decision;
  return s;
}

}  // namespace qkd

#include <doctest.h>

#include <cmath>
#include <string>

#include "qkd/error.hpp"
#include "qkd/replay.hpp"

using namespace qkd;

namespace {

// The published 10-round entangled-session record.
const char* kE91Table =
    "# recorded E91 exchange, sender/receiver bits by round\n"
    "round,a_basis,b_basis,a_bit,b_bit,purpose\n"
    "1,A1,B1,0,0,Key\n"
    "2,A1,B1,0,1,Key\n"
    "3,A1,B3,1,0,Bell\n"
    "4,A1,B3,1,0,Bell\n"
    "5,A2,B1,0,0,Bell\n"
    "6,A2,B1,0,1,Bell\n"
    "7,A2,B3,0,0,Bell\n"
    "8,A2,B3,1,0,Bell\n"
    "9,A2,B3,0,1,Bell\n"
    "10,A1,B1,0,0,Key\n";

// The published 10-row intercept-resend transmission record.
const char* kB92Table =
    "row,sender_bit,sender_state,eve_test,eve_click,eve_resend,"
    "receiver_test,receiver_click,receiver_bit\n"
    "1,0,H,V,No,+,-,Yes,0\n"
    "2,0,H,-,Yes,H,V,No,\n"
    "3,1,+,V,Yes,+,V,Yes,1\n"
    "4,1,+,-,No,H,-,Yes,0\n"
    "5,0,H,V,No,H,-,Yes,0\n"
    "6,1,+,-,No,+,V,Yes,1\n"
    "7,0,H,-,Yes,H,-,Yes,0\n"
    "8,1,+,V,Yes,+,-,No,\n"
    "9,0,H,V,No,+,V,Yes,1\n"
    "10,1,+,-,No,H,V,No,\n";

}  // namespace

TEST_SUITE("replay") {

TEST_CASE("e91 worked example reproduces the published statistics") {
  SessionSummary s = replay(parse_replay_csv(kE91Table));
  CHECK(s.protocol == Protocol::E91);
  CHECK(s.rounds == 10);
  REQUIRE(s.chsh.has_value());
  CHECK(std::fabs(s.chsh->e_values[0] - 1.0 / 3.0) <= 1e-12);
  CHECK(s.chsh->e_values[1] == -1.0);
  CHECK(s.chsh->e_values[2] == 0.0);
  CHECK(std::fabs(s.chsh->e_values[3] - (-1.0 / 3.0)) <= 1e-12);
  CHECK(std::fabs(s.chsh->s - 1.0) <= 1e-12);
  CHECK(std::fabs(s.qber.percent - 100.0 / 3.0) <= 1e-9);
  REQUIRE(s.decision.has_value());
  CHECK(s.decision->value == DecisionOutcome::Abort);
  CHECK(s.risk == RiskTier::Highest);
  CHECK(*s.sifted_rate == doctest::Approx(0.3));
}

TEST_CASE("b92 worked example reproduces the published statistics") {
  SessionSummary s = replay(parse_replay_csv(kB92Table));
  CHECK(s.protocol == Protocol::B92);
  CHECK(s.rounds == 10);
  CHECK(s.qber.n_total == 7);
  CHECK(s.qber.n_error == 2);
  CHECK(std::fabs(s.qber.percent - 200.0 / 7.0) <= 1e-9);
  CHECK(*s.conclusive_rate == doctest::Approx(0.7));
  CHECK(s.risk == RiskTier::Highest);
  CHECK_FALSE(s.decision.has_value());
  CHECK_FALSE(s.chsh.has_value());
}

TEST_CASE("a single key row cannot support a CHSH estimate") {
  const char* one_row =
      "round,a_basis,b_basis,a_bit,b_bit,purpose\n"
      "1,A1,B1,0,0,Key\n";
  CHECK_THROWS_WITH_AS(replay(parse_replay_csv(one_row)),
                       doctest::Contains("A1B3"), insufficient_data_error);
}

TEST_CASE("comment lines and blank lines are ignored") {
  std::string text = std::string("# leading comment\n\n") + kB92Table + "\n# trailing\n";
  SessionSummary s = replay(parse_replay_csv(text));
  CHECK(s.qber.n_total == 7);
}

TEST_CASE("the unicode minus sign is accepted as a state label") {
  std::string text =
      "row,sender_bit,sender_state,eve_test,eve_click,eve_resend,"
      "receiver_test,receiver_click,receiver_bit\n"
      "1,0,H,\xe2\x88\x92,Yes,H,\xe2\x88\x92,Yes,0\n";
  SessionSummary s = replay(parse_replay_csv(text));
  CHECK(s.qber.n_total == 1);
  CHECK(s.qber.n_error == 0);
}

TEST_CASE("parse errors name the offending row") {
  CHECK_THROWS_WITH_AS(parse_replay_csv(""), doctest::Contains("no header"),
                       parse_error);
  CHECK_THROWS_WITH_AS(parse_replay_csv("round,a_basis,b_basis,a_bit,b_bit,purpose\n"),
                       doctest::Contains("no data rows"), parse_error);
  CHECK_THROWS_WITH_AS(parse_replay_csv("bogus,header\n1,2\n"),
                       doctest::Contains("header"), parse_error);

  const char* bad_label =
      "round,a_basis,b_basis,a_bit,b_bit,purpose\n"
      "1,A9,B1,0,0,Key\n";
  CHECK_THROWS_WITH_AS(parse_replay_csv(bad_label), doctest::Contains("row 2"),
                       parse_error);

  const char* bad_bit =
      "round,a_basis,b_basis,a_bit,b_bit,purpose\n"
      "1,A1,B1,0,0,Key\n"
      "2,A1,B1,0,7,Key\n";
  CHECK_THROWS_WITH_AS(parse_replay_csv(bad_bit), doctest::Contains("row 3"),
                       parse_error);

  const char* bad_width =
      "row,sender_bit,sender_state,eve_test,eve_click,eve_resend,"
      "receiver_test,receiver_click,receiver_bit\n"
      "1,0,H\n";
  CHECK_THROWS_WITH_AS(parse_replay_csv(bad_width), doctest::Contains("9 fields"),
                       parse_error);

  // a click must come with a bit, and vice versa
  const char* inconsistent =
      "row,sender_bit,sender_state,eve_test,eve_click,eve_resend,"
      "receiver_test,receiver_click,receiver_bit\n"
      "1,0,H,V,No,+,-,Yes,\n";
  CHECK_THROWS_AS(parse_replay_csv(inconsistent), parse_error);
}

TEST_CASE("label alphabets are enforced per column") {
  const char* v_as_sender =
      "row,sender_bit,sender_state,eve_test,eve_click,eve_resend,"
      "receiver_test,receiver_click,receiver_bit\n"
      "1,0,V,V,No,+,-,Yes,0\n";
  CHECK_THROWS_WITH_AS(parse_replay_csv(v_as_sender),
                       doctest::Contains("sender_state"), parse_error);
}

}  // TEST_SUITE

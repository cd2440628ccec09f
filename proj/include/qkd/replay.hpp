#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qkd/e91.hpp"
#include "qkd/summary.hpp"

namespace qkd {

// Record-level replay recomputes statistics from published transmission
// tables exactly as written, without re-simulating any physics.

enum class StateLabel { H, Plus, V, Minus };  // H, +, V, -

const char* to_string(StateLabel s);

enum class SenderBasisLabel { A1, A2 };
enum class ReceiverBasisLabel { B1, B3 };

struct E91ReplayRecord {
  std::uint64_t round = 0;
  SenderBasisLabel a_basis = SenderBasisLabel::A1;
  ReceiverBasisLabel b_basis = ReceiverBasisLabel::B1;
  int a_bit = 0;
  int b_bit = 0;
  PurposeKind purpose = PurposeKind::Key;  // Key or Bell
};

struct B92ReplayRecord {
  std::uint64_t row = 0;
  int sender_bit = 0;
  StateLabel sender_state = StateLabel::H;   // H or +
  StateLabel eve_test = StateLabel::V;       // V or -
  bool eve_click = false;
  StateLabel eve_resend = StateLabel::H;     // H or +
  StateLabel receiver_test = StateLabel::V;  // V or -
  bool receiver_click = false;
  std::optional<int> receiver_bit;  // blank when no click
};

using ReplayRecords =
    std::variant<std::vector<E91ReplayRecord>, std::vector<B92ReplayRecord>>;

// Parses a replay CSV (UTF-8, '#' comment lines ignored). The header row
// selects the protocol:
//   round,a_basis,b_basis,a_bit,b_bit,purpose                        (E91)
//   row,sender_bit,sender_state,eve_test,eve_click,eve_resend,
//       receiver_test,receiver_click,receiver_bit                    (B92)
// Malformed labels or fields raise parse_error with the row number.
ReplayRecords parse_replay_csv(const std::string& text);

// E91: per-pair correlations over all rows of each basis pair, CHSH value,
// QBER over Key-purpose rows, decision and risk. Every pair must appear.
SessionSummary replay(const std::vector<E91ReplayRecord>& records);

// B92: conclusive count and QBER over conclusive rows.
SessionSummary replay(const std::vector<B92ReplayRecord>& records);

SessionSummary replay(const ReplayRecords& records);

}  // namespace qkd

#include "qkd/replay.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <string>

#include "qkd/error.hpp"
#include "qkd/metrics.hpp"

namespace qkd {

namespace {

constexpr const char* kE91Header = "round,a_basis,b_basis,a_bit,b_bit,purpose";
constexpr const char* kB92Header =
    "row,sender_bit,sender_state,eve_test,eve_click,eve_resend,"
    "receiver_test,receiver_click,receiver_bit";

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw parse_error("row " + std::to_string(line_no) + ": " + what);
}

std::uint64_t parse_index(const std::string& text, std::size_t line_no,
                          const char* field) {
  try {
    // stoull would wrap a leading minus instead of failing
    if (text.empty() || text[0] == '-') throw std::invalid_argument(text);
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(line_no, std::string("invalid ") + field + " '" + text + "'");
  }
}

int parse_bit(const std::string& text, std::size_t line_no, const char* field) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  fail(line_no, std::string("invalid ") + field + " '" + text +
                    "' (expected 0 or 1)");
}

bool parse_click(const std::string& text, std::size_t line_no, const char* field) {
  std::string t = lower(text);
  if (t == "yes" || t == "1" || t == "true") return true;
  if (t == "no" || t == "0" || t == "false") return false;
  fail(line_no, std::string("invalid ") + field + " '" + text +
                    "' (expected yes or no)");
}

StateLabel parse_state_label(const std::string& text, std::size_t line_no,
                             const char* field) {
  if (text == "H" || text == "h") return StateLabel::H;
  if (text == "+") return StateLabel::Plus;
  if (text == "V" || text == "v") return StateLabel::V;
  if (text == "-" || text == "\xe2\x88\x92") return StateLabel::Minus;  // - or U+2212
  fail(line_no, std::string("unknown state label '") + text + "' for " + field +
                    " (expected H, +, V or -)");
}

void require_one_of(StateLabel label, StateLabel a, StateLabel b,
                    std::size_t line_no, const char* field) {
  if (label != a && label != b) {
    fail(line_no, std::string(field) + " must be " + to_string(a) + " or " +
                      to_string(b));
  }
}

E91ReplayRecord parse_e91_row(const std::vector<std::string>& fields,
                              std::size_t line_no) {
  if (fields.size() != 6) {
    fail(line_no, "expected 6 fields, got " + std::to_string(fields.size()));
  }
  E91ReplayRecord r;
  r.round = parse_index(fields[0], line_no, "round");
  if (fields[1] == "A1") r.a_basis = SenderBasisLabel::A1;
  else if (fields[1] == "A2") r.a_basis = SenderBasisLabel::A2;
  else fail(line_no, "unknown a_basis '" + fields[1] + "' (expected A1 or A2)");
  if (fields[2] == "B1") r.b_basis = ReceiverBasisLabel::B1;
  else if (fields[2] == "B3") r.b_basis = ReceiverBasisLabel::B3;
  else fail(line_no, "unknown b_basis '" + fields[2] + "' (expected B1 or B3)");
  r.a_bit = parse_bit(fields[3], line_no, "a_bit");
  r.b_bit = parse_bit(fields[4], line_no, "b_bit");
  std::string purpose = lower(fields[5]);
  if (purpose == "key") r.purpose = PurposeKind::Key;
  else if (purpose == "bell") r.purpose = PurposeKind::Bell;
  else fail(line_no, "unknown purpose '" + fields[5] + "' (expected Key or Bell)");
  return r;
}

B92ReplayRecord parse_b92_row(const std::vector<std::string>& fields,
                              std::size_t line_no) {
  if (fields.size() != 9) {
    fail(line_no, "expected 9 fields, got " + std::to_string(fields.size()));
  }
  B92ReplayRecord r;
  r.row = parse_index(fields[0], line_no, "row");
  r.sender_bit = parse_bit(fields[1], line_no, "sender_bit");
  r.sender_state = parse_state_label(fields[2], line_no, "sender_state");
  require_one_of(r.sender_state, StateLabel::H, StateLabel::Plus, line_no,
                 "sender_state");
  r.eve_test = parse_state_label(fields[3], line_no, "eve_test");
  require_one_of(r.eve_test, StateLabel::V, StateLabel::Minus, line_no, "eve_test");
  r.eve_click = parse_click(fields[4], line_no, "eve_click");
  r.eve_resend = parse_state_label(fields[5], line_no, "eve_resend");
  require_one_of(r.eve_resend, StateLabel::H, StateLabel::Plus, line_no,
                 "eve_resend");
  r.receiver_test = parse_state_label(fields[6], line_no, "receiver_test");
  require_one_of(r.receiver_test, StateLabel::V, StateLabel::Minus, line_no,
                 "receiver_test");
  r.receiver_click = parse_click(fields[7], line_no, "receiver_click");
  std::string bit = fields[8];
  if (bit.empty() || bit == "-" || bit == "\xe2\x88\x92") {
    r.receiver_bit = std::nullopt;
  } else {
    r.receiver_bit = parse_bit(bit, line_no, "receiver_bit");
  }
  if (r.receiver_click != r.receiver_bit.has_value()) {
    fail(line_no, "receiver_bit must be present exactly when receiver_click is yes");
  }
  return r;
}

}  // namespace

const char* to_string(StateLabel s) {
  switch (s) {
    case StateLabel::H: return "H";
    case StateLabel::Plus: return "+";
    case StateLabel::V: return "V";
    case StateLabel::Minus: return "-";
  }
  return "?";
}

ReplayRecords parse_replay_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool is_e91 = false;
  std::vector<E91ReplayRecord> e91_records;
  std::vector<B92ReplayRecord> b92_records;

  auto normalized = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c != ' ' && c != '\t' && c != '\r') out.push_back(c);
    }
    return lower(out);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string content = trim(line);
    if (content.empty() || content[0] == '#') continue;
    if (!have_header) {
      std::string header = normalized(content);
      if (header == kE91Header) {
        is_e91 = true;
      } else if (header == kB92Header) {
        is_e91 = false;
      } else {
        fail(line_no, "unrecognized replay header '" + content + "'");
      }
      have_header = true;
      continue;
    }
    std::vector<std::string> fields = split_fields(content);
    if (is_e91) {
      e91_records.push_back(parse_e91_row(fields, line_no));
    } else {
      b92_records.push_back(parse_b92_row(fields, line_no));
    }
  }

  if (!have_header) {
    throw parse_error("replay input has no header row");
  }
  if (is_e91) {
    if (e91_records.empty()) throw parse_error("replay input has no data rows");
    return ReplayRecords(std::move(e91_records));
  }
  if (b92_records.empty()) throw parse_error("replay input has no data rows");
  return ReplayRecords(std::move(b92_records));
}

SessionSummary replay(const std::vector<E91ReplayRecord>& records) {
  if (records.empty()) {
    throw insufficient_data_error("replay requires at least one record");
  }

  std::array<PairCounts, 4> counts{};
  std::uint64_t key_total = 0, key_errors = 0;
  for (const E91ReplayRecord& r : records) {
    bool a1 = r.a_basis == SenderBasisLabel::A1;
    bool b1 = r.b_basis == ReceiverBasisLabel::B1;
    ChshPair pair = a1 ? (b1 ? ChshPair::A1B1 : ChshPair::A1B3)
                       : (b1 ? ChshPair::A2B1 : ChshPair::A2B3);
    PairCounts& c = counts[static_cast<std::size_t>(pair)];
    if (r.a_bit == r.b_bit) ++c.n_same; else ++c.n_diff;
    if (r.purpose == PurposeKind::Key) {
      ++key_total;
      if (r.a_bit != r.b_bit) ++key_errors;
    }
  }

  ChshEstimate chsh;
  chsh.counts = counts;
  for (std::size_t p = 0; p < 4; ++p) {
    chsh.e_values[p] = correlation_estimate(counts[p], static_cast<ChshPair>(p));
  }
  chsh.s = chsh_value(chsh.e_values);

  SessionSummary s;
  s.protocol = Protocol::E91;
  s.rounds = records.size();
  s.qber = qber(key_errors, key_total);
  s.chsh = chsh;
  s.sifted_rate = static_cast<double>(key_total) / static_cast<double>(records.size());
  s.decision = security_decision(chsh.s, s.qber.fraction, 0.11);
  s.risk = risk_classify(s.qber, chsh.s);
  return s;
}

SessionSummary replay(const std::vector<B92ReplayRecord>& records) {
  if (records.empty()) {
    throw insufficient_data_error("replay requires at least one record");
  }

  std::uint64_t conclusive = 0, errors = 0;
  for (const B92ReplayRecord& r : records) {
    if (!r.receiver_bit.has_value()) continue;
    ++conclusive;
    if (*r.receiver_bit != r.sender_bit) ++errors;
  }

  SessionSummary s;
  s.protocol = Protocol::B92;
  s.rounds = records.size();
  s.conclusive_rate =
      static_cast<double>(conclusive) / static_cast<double>(records.size());
  s.qber = qber(errors, conclusive);
  s.risk = risk_classify(s.qber);
  return s;
}

SessionSummary replay(const ReplayRecords& records) {
  if (std::holds_alternative<std::vector<E91ReplayRecord>>(records)) {
    return replay(std::get<std::vector<E91ReplayRecord>>(records));
  }
  return replay(std::get<std::vector<B92ReplayRecord>>(records));
}

}  // namespace qkd

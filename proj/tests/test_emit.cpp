#include <doctest.h>

#include <string>

#include "qkd/cli.hpp"
#include "qkd/emit.hpp"
#include "qkd/error.hpp"

using namespace qkd;

namespace {

SessionSummary bb84_summary() {
  SessionSummary s;
  s.protocol = Protocol::Bb84;
  s.rounds = 20000;
  s.noise_p = 0.0;
  s.eve_p = 0.0;
  s.seed = 42;
  s.sifted_rate = 0.5012;
  s.qber = qber(0, 10024);
  s.risk = RiskTier::Lowest;
  return s;
}

}  // namespace

TEST_SUITE("emit") {

TEST_CASE("json summary has the fixed key set in order, nulls for absences") {
  std::string text = emit_summary(bb84_summary(), OutputFormat::Json);
  CHECK(text ==
        "{\n"
        "  \"protocol\": \"bb84\",\n"
        "  \"rounds\": 20000,\n"
        "  \"noise_p\": 0,\n"
        "  \"eve_p\": 0,\n"
        "  \"eve_mode\": null,\n"
        "  \"bell_ratio\": null,\n"
        "  \"seed\": 42,\n"
        "  \"sifted_rate\": 0.5012,\n"
        "  \"conclusive_rate\": null,\n"
        "  \"qber_percent\": 0,\n"
        "  \"chsh_s\": null,\n"
        "  \"risk\": \"lowest\",\n"
        "  \"decision\": null\n"
        "}\n");
}

TEST_CASE("csv summary mirrors the same field order") {
  std::string text = emit_summary(bb84_summary(), OutputFormat::Csv);
  CHECK(text ==
        "protocol,rounds,noise_p,eve_p,eve_mode,bell_ratio,seed,sifted_rate,"
        "conclusive_rate,qber_percent,chsh_s,risk,decision\n"
        "bb84,20000,0,0,,,42,0.5012,,0,,lowest,\n");
}

TEST_CASE("serialization is byte-stable") {
  SessionSummary s = bb84_summary();
  CHECK(emit_summary(s, OutputFormat::Json) == emit_summary(s, OutputFormat::Json));
  CHECK(emit_summary(s, OutputFormat::Csv) == emit_summary(s, OutputFormat::Csv));
}

TEST_CASE("numbers render with six significant digits") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(100.0 / 3.0) == "33.3333");
  CHECK(format_number(200.0 / 7.0) == "28.5714");
  CHECK(format_number(2.8284271247461903) == "2.82843");
  CHECK(format_number(1.9233304448274091) == "1.92333");
  CHECK(format_number(0.0725) == "0.0725");
}

TEST_CASE("grid csv: pinned header, one row per cell, row-major") {
  SweepSpec spec = SweepSpec::defaults(Protocol::Bb84);
  spec.mode = SweepMode::Oracle;
  spec.noise_axis = {0.0, 0.05, 0.1};
  spec.eve_axis = {0.0, 0.5, 1.0};
  std::string text = emit_grid_csv(run_sweep(spec));

  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 10);  // header + 9 cells
  CHECK(text.rfind("noise_p,eve_p,qber_percent,rate,chsh_s,risk,decision\n", 0) == 0);
}

TEST_CASE("grid csv: bb84 clean oracle cell renders with empty e91 columns") {
  SweepSpec spec = SweepSpec::defaults(Protocol::Bb84);
  spec.mode = SweepMode::Oracle;
  std::string text = emit_grid_csv(run_sweep(spec));
  CHECK(text ==
        "noise_p,eve_p,qber_percent,rate,chsh_s,risk,decision\n"
        "0,0,0,0.5,,lowest,\n");
}

TEST_CASE("grid csv: e91 oracle cell carries the chsh column") {
  SweepSpec spec = SweepSpec::defaults(Protocol::E91);
  spec.mode = SweepMode::Oracle;
  spec.noise_axis = {0.16};
  std::string text = emit_grid_csv(run_sweep(spec));
  CHECK(text ==
        "noise_p,eve_p,qber_percent,rate,chsh_s,risk,decision\n"
        "0.16,0,16,0.75,1.92333,highest,abort\n");
}

TEST_CASE("config file round-trips exactly") {
  SessionConfig config = SessionConfig::defaults(Protocol::E91);
  config.rounds = 12345;
  config.noise_p = 0.0625;
  config.eve_p = 0.123456789;  // not representable in 6 digits
  config.eve_mode = EveMode::Bell;
  config.bell_ratio = 0.5;
  config.allocation = AllocationMode::Independent;
  config.qber_threshold = 0.11;
  config.sample_fraction = 0.75;
  config.seed = 987654321;

  SessionConfig parsed =
      cli::session_config_from_kv(cli::parse_config_file(emit_config_file(config)));
  CHECK(parsed.protocol == config.protocol);
  CHECK(parsed.rounds == config.rounds);
  CHECK(parsed.noise_p == config.noise_p);
  CHECK(parsed.eve_p == config.eve_p);
  CHECK(parsed.eve_mode == config.eve_mode);
  CHECK(parsed.bell_ratio == config.bell_ratio);
  CHECK(parsed.allocation == config.allocation);
  CHECK(parsed.qber_threshold == config.qber_threshold);
  CHECK(parsed.sample_fraction == config.sample_fraction);
  CHECK(parsed.seed == config.seed);

  SessionConfig bb84 = SessionConfig::defaults(Protocol::Bb84);
  bb84.noise_p = 0.05;
  bb84.seed = 7;
  SessionConfig parsed_bb84 =
      cli::session_config_from_kv(cli::parse_config_file(emit_config_file(bb84)));
  CHECK(parsed_bb84.protocol == Protocol::Bb84);
  CHECK(parsed_bb84.noise_p == 0.05);
  CHECK(parsed_bb84.eve_mode == EveMode::NotApplicable);
}

TEST_CASE("config file parsing") {
  auto kv = cli::parse_config_file("# comment\nprotocol = bb84\n\nrounds=10\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0].first == "protocol");
  CHECK(kv[0].second == "bb84");
  CHECK(kv[1].second == "10");
  CHECK_THROWS_WITH_AS(cli::parse_config_file("protocol bb84\n"),
                       doctest::Contains("line 1"), parse_error);
}

TEST_CASE("kv config rejects unknown and inapplicable keys") {
  CHECK_THROWS_WITH_AS(cli::session_config_from_kv({{"protocol", "bb84"},
                                                    {"wibble", "1"}}),
                       doctest::Contains("wibble"), usage_error);
  CHECK_THROWS_WITH_AS(cli::session_config_from_kv({{"protocol", "bb84"},
                                                    {"bell-ratio", "0.5"}}),
                       doctest::Contains("bell-ratio"), usage_error);
  CHECK_THROWS_AS(cli::session_config_from_kv({{"rounds", "10"}}), usage_error);
}

TEST_CASE("axis parsing expands inclusive ranges") {
  auto axis = cli::parse_axis("0:0.2:0.05");
  REQUIRE(axis.size() == 5);
  CHECK(axis.front() == 0.0);
  CHECK(axis.back() == 0.2);  // snapped onto the stop value
  CHECK(cli::parse_axis("0.3") == std::vector<double>{0.3});
  auto fine = cli::parse_axis("0:0.1:0.01");
  CHECK(fine.size() == 11);
  CHECK_THROWS_AS(cli::parse_axis("0:0.2"), usage_error);
  CHECK_THROWS_AS(cli::parse_axis("0:0.2:0"), usage_error);
  CHECK_THROWS_AS(cli::parse_axis("0.2:0:0.05"), usage_error);
  CHECK_THROWS_AS(cli::parse_axis("zero"), usage_error);
  CHECK_THROWS_AS(cli::parse_axis("0:1:1e-9"), usage_error);
}

}  // TEST_SUITE

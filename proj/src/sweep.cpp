#include "qkd/sweep.hpp"

#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "qkd/b92.hpp"
#include "qkd/bb84.hpp"
#include "qkd/e91.hpp"
#include "qkd/error.hpp"
#include "qkd/summary.hpp"

namespace qkd {

namespace {

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw config_error(std::string(name) + " must be non-empty");
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] >= 0.0 && axis[i] <= 1.0)) {
      throw config_error(std::string(name) + " values must lie in [0,1] (got " +
                         std::to_string(axis[i]) + ")");
    }
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw config_error(std::string(name) + " must be strictly increasing");
    }
  }
}

SessionConfig cell_config(const SweepSpec& spec, double noise_p, double eve_p,
                          std::uint64_t seed) {
  SessionConfig c = SessionConfig::defaults(spec.protocol);
  c.rounds = spec.rounds_per_cell;
  c.noise_p = noise_p;
  c.eve_p = eve_p;
  c.qber_threshold = spec.qber_threshold;
  c.seed = seed;
  if (spec.protocol == Protocol::E91) {
    c.eve_mode = spec.eve_mode;
    c.bell_ratio = spec.bell_ratio;
    c.allocation = spec.allocation;
    if (!spec.eve_angles.empty()) c.eve_angles = spec.eve_angles;
  }
  return c;
}

GridCell evaluate_monte_carlo(const SweepSpec& spec, double noise_p, double eve_p,
                              std::uint64_t seed) {
  GridCell cell;
  cell.noise_p = noise_p;
  cell.eve_p = eve_p;
  SessionConfig config = cell_config(spec, noise_p, eve_p, seed);
  switch (spec.protocol) {
    case Protocol::Bb84: {
      Bb84Session s = run_bb84(config);
      cell.qber = s.qber.fraction;
      cell.rate = s.sifted_rate;
      cell.risk = s.risk;
      break;
    }
    case Protocol::B92: {
      B92Session s = run_b92(config);
      cell.qber = s.qber.fraction;
      cell.rate = s.conclusive_rate;
      cell.risk = s.risk;
      break;
    }
    case Protocol::E91: {
      E91Session s = run_e91(config);
      cell.qber = s.qber.fraction;
      cell.rate = static_cast<double>(s.key_rounds) /
                  static_cast<double>(config.rounds);
      cell.s = s.chsh.s;
      cell.risk = s.risk;
      cell.decision = s.decision.value;
      break;
    }
  }
  return cell;
}

GridCell evaluate_oracle(const SweepSpec& spec, double noise_p, double eve_p) {
  GridCell cell;
  cell.noise_p = noise_p;
  cell.eve_p = eve_p;
  switch (spec.protocol) {
    case Protocol::Bb84: {
      ExpectedStats e = expected_bb84(noise_p, eve_p);
      cell.qber = e.qber;
      cell.rate = e.rate;
      cell.risk = risk_classify_percent(100.0 * e.qber);
      break;
    }
    case Protocol::B92: {
      ExpectedStats e = expected_b92(noise_p, eve_p);
      cell.qber = e.qber;
      cell.rate = e.rate;
      cell.risk = risk_classify_percent(100.0 * e.qber);
      break;
    }
    case Protocol::E91: {
      std::vector<PolarizationAngle> angles =
          spec.eve_angles.empty() ? SessionConfig::defaults(Protocol::E91).eve_angles
                                  : spec.eve_angles;
      ExpectedStats e = expected_e91(noise_p, eve_p, spec.eve_mode, angles);
      cell.qber = e.qber;
      cell.rate = 1.0 - spec.bell_ratio;  // expected key fraction
      cell.s = e.s;
      cell.risk = risk_classify_percent(100.0 * e.qber, e.s);
      cell.decision =
          security_decision(*e.s, e.qber, spec.qber_threshold).value;
      break;
    }
  }
  return cell;
}

}  // namespace

SweepSpec SweepSpec::defaults(Protocol protocol) {
  SweepSpec s;
  s.protocol = protocol;
  s.noise_axis = {0.0};
  s.eve_axis = {0.0};
  if (protocol == Protocol::E91) {
    s.eve_mode = EveMode::Both;
    s.eve_angles = {PolarizationAngle(0.0), PolarizationAngle(45.0)};
  }
  return s;
}

void SweepSpec::validate() const {
  check_axis(noise_axis, "noise_axis");
  check_axis(eve_axis, "eve_axis");
  if (mode == SweepMode::MonteCarlo && rounds_per_cell < 1) {
    throw config_error("rounds_per_cell must be >= 1 in monte-carlo mode");
  }
  if (!(bell_ratio >= 0.0 && bell_ratio <= 1.0)) {
    throw config_error("bell_ratio must be in [0,1] (got " +
                       std::to_string(bell_ratio) + ")");
  }
  if (!(qber_threshold >= 0.0 && qber_threshold <= 1.0)) {
    throw config_error("qber_threshold must be in [0,1] (got " +
                       std::to_string(qber_threshold) + ")");
  }
  if (protocol == Protocol::E91 && eve_mode == EveMode::NotApplicable) {
    throw config_error("eve_mode must be key, bell or both for protocol e91");
  }
  if (protocol != Protocol::E91 && eve_mode != EveMode::NotApplicable) {
    throw config_error(std::string("eve_mode not applicable to protocol ") +
                       to_string(protocol));
  }
}

std::uint64_t derive_cell_seed(std::uint64_t base_seed, std::uint64_t row,
                               std::uint64_t col) {
  // (row, col) packs injectively below 2^32 x 2^32; multiplying the packed
  // index by an odd constant and adding it to the base stays injective per
  // base, and mix64 is a bijection, so no two cells of one grid collide.
  std::uint64_t packed = (row << 32) | (col & 0xffffffffULL);
  return mix64(base_seed + 0x9e3779b97f4a7c15ULL * (packed + 1));
}

SweepGrid run_sweep(const SweepSpec& spec) {
  spec.validate();

  SweepGrid grid;
  grid.spec = spec;
  std::size_t n_noise = spec.noise_axis.size();
  std::size_t n_eve = spec.eve_axis.size();
  grid.cells.resize(n_noise * n_eve);

  auto evaluate_index = [&](std::size_t flat) {
    std::size_t i = flat / n_eve;
    std::size_t j = flat % n_eve;
    double noise_p = spec.noise_axis[i];
    double eve_p = spec.eve_axis[j];
    grid.cells[flat] =
        spec.mode == SweepMode::Oracle
            ? evaluate_oracle(spec, noise_p, eve_p)
            : evaluate_monte_carlo(spec, noise_p, eve_p,
                                   derive_cell_seed(spec.base_seed, i, j));
  };

  std::size_t n_cells = grid.cells.size();
  std::size_t n_threads = spec.max_threads != 0
                              ? spec.max_threads
                              : std::thread::hardware_concurrency();
  if (n_threads < 1) n_threads = 1;
  if (n_threads > n_cells) n_threads = n_cells;

  if (n_threads == 1 || spec.mode == SweepMode::Oracle) {
    for (std::size_t flat = 0; flat < n_cells; ++flat) evaluate_index(flat);
    return grid;
  }

  // Cells are independent; each worker writes only its own slots. Failures
  // are rethrown after join.
  std::vector<std::exception_ptr> failures(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    workers.emplace_back([&, t]() {
      try {
        for (std::size_t flat = t; flat < n_cells; flat += n_threads) {
          evaluate_index(flat);
        }
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return grid;
}

}  // namespace qkd

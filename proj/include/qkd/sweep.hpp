#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qkd/config.hpp"
#include "qkd/metrics.hpp"

namespace qkd {

enum class SweepMode { MonteCarlo, Oracle };

// A 2-D experiment over (noise_p x eve_p). Axes must be non-empty, strictly
// increasing and within [0,1]. Oracle mode evaluates the exact expectation
// oracles; MonteCarlo runs one session per cell with a derived seed.
struct SweepSpec {
  Protocol protocol = Protocol::Bb84;
  std::vector<double> noise_axis;
  std::vector<double> eve_axis;
  std::uint64_t rounds_per_cell = 20000;
  SweepMode mode = SweepMode::MonteCarlo;
  EveMode eve_mode = EveMode::NotApplicable;  // E91
  double bell_ratio = 0.25;                   // E91
  AllocationMode allocation = AllocationMode::Designated;
  double qber_threshold = 0.11;
  std::vector<PolarizationAngle> eve_angles;  // E91
  std::uint64_t base_seed = 0;
  std::size_t max_threads = 0;  // 0 = hardware concurrency

  static SweepSpec defaults(Protocol protocol);
  void validate() const;  // config_error naming the axis/field
};

struct GridCell {
  double noise_p = 0.0;
  double eve_p = 0.0;
  double qber = 0.0;  // fraction
  double rate = 0.0;  // sifted (BB84) / conclusive (B92) / key fraction (E91)
  std::optional<double> s;
  RiskTier risk = RiskTier::Lowest;
  std::optional<DecisionOutcome> decision;  // E91
};

struct SweepGrid {
  SweepSpec spec;
  std::vector<GridCell> cells;  // row-major, noise major, eve minor

  const GridCell& at(std::size_t noise_index, std::size_t eve_index) const {
    return cells[noise_index * spec.eve_axis.size() + eve_index];
  }
};

// Injective, stable per-cell seed: cells may be evaluated in any order or in
// parallel with reproducible output.
std::uint64_t derive_cell_seed(std::uint64_t base_seed, std::uint64_t row,
                               std::uint64_t col);

SweepGrid run_sweep(const SweepSpec& spec);

}  // namespace qkd

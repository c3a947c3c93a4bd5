#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

struct MemberRecord {
  std::size_t index = 0;
  std::size_t present_count = 0;
  std::size_t peak_time = 0;   // zero on failure
  double peak_probability = 0.0;
  bool success = false;
};

struct EnsembleResult {
  std::size_t n_lattices = 0;
  double mean_peak_probability = 0.0;  // failures count as zero
  // Reciprocal of the mean success rate r_i = 1/peak_time (failures
  // contribute r_i = 0); empty when every member failed.
  std::optional<double> aggregated_time;
  double success_rate = 0.0;
  double percolation_probability = 0.0;
  std::size_t base_vertex_count = 0;
  std::uint64_t seed = 0;
  std::vector<MemberRecord> members;
};

// Generates M site-percolated instances of the base lattice (marked vertex
// at the centre, always retained), runs the search on each with threshold
// 2/present and step budget 2*present, and aggregates. Deterministic for a
// fixed seed, independent of worker scheduling.
EnsembleResult run_percolation_ensemble(const LatticeSpec& base, double p,
                                        std::size_t m, std::uint64_t seed,
                                        std::size_t workers = 0);

struct EnsembleSweepConfig {
  LatticeFamily family = LatticeFamily::kSquare2d;
  std::vector<std::vector<std::size_t>> extents_list;
  std::vector<double> p_values;
  std::size_t members = 5000;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
};

// One EnsembleResult per (extents, p) cell, in deterministic order.
std::vector<EnsembleResult> ensemble_sweep(const EnsembleSweepConfig& config);

// Per-member seed derivation (split of the master seed by index).
std::uint64_t member_seed(std::uint64_t master_seed, std::size_t index);

}  // namespace qwalk

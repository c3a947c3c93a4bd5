#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

// Time series of the marked-vertex probability, t = 0..t_max.
struct SearchTrace {
  std::vector<double> marked_probability;
  std::string graph_descriptor;
  std::size_t marked = 0;
};

struct SearchResult {
  std::size_t peak_time = 0;
  double peak_probability = 0.0;
  bool success = false;
  double threshold_used = 0.0;
};

// Default step budget for a single search: the first peak of a regular
// lattice sits well inside 4*sqrt(N)+20.
std::size_t default_t_max(const PortGraph& graph);

// Default success threshold: twice the uniform superposition value.
double default_threshold(const PortGraph& graph);

// Earliest step at which a peak may be counted: half the minimal search
// timescale. The first few steps only show the marked defect's local
// backscatter, never a search outcome.
std::size_t default_min_peak_time(const PortGraph& graph);

// Runs the search walk: uniform start (or tunnelling-weighted start when
// p_tunnel is given), phase-inverted coin at the marked vertex, and records
// the marked-vertex probability after every step.
SearchTrace run_search(const PortGraph& graph, std::size_t marked,
                       std::optional<double> p_tunnel, std::size_t t_max);

// Apex of the first peak: the earliest running maximum of the trace at
// t >= min_time, frozen once the probability has fallen to half of a
// success-level apex (later revivals recur at odd multiples of the
// first-peak time and are not the algorithm's answer). Success needs the
// apex at or above both the threshold and the t=0 value; failure zeroes the
// time and probability. Searches pass default_min_peak_time to skip the
// marked defect's backscatter transient.
SearchResult find_first_peak(const SearchTrace& trace, double threshold,
                             std::size_t min_time = 1);

// find_first_peak(run_search(...)) without materializing the trace, with
// the backscatter floor default_min_peak_time(graph).
SearchResult run_search_first_peak(const PortGraph& graph, std::size_t marked,
                                   std::optional<double> p_tunnel,
                                   double threshold, std::size_t t_max);

struct ExperimentRow {
  std::string family;
  std::size_t n = 0;
  std::string extents;
  std::optional<double> p_tunnel;
  std::size_t peak_time = 0;
  double peak_probability = 0.0;
  bool success = false;
  double threshold = 0.0;
  std::size_t t_max = 0;
  std::uint64_t seed = 0;
};

struct SearchExperimentConfig {
  LatticeFamily family = LatticeFamily::kSquare2d;
  std::vector<std::vector<std::size_t>> extents_list;
  // One row per (extents, p); an empty optional runs the plain search.
  std::vector<std::optional<double>> p_values{std::nullopt};
  std::optional<std::size_t> t_max_override;
  std::uint64_t seed = 0;  // echoed into rows; the runs are deterministic
  std::size_t workers = 0;
};

// Cross product of sizes and tunnelling probabilities, marked vertex at the
// lattice centre, deterministic row order.
std::vector<ExperimentRow> search_experiment(const SearchExperimentConfig& config);

}  // namespace qwalk

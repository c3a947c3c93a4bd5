#include "qwalk/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/parallel.hpp"
#include "qwalk/search.hpp"

namespace qwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

MemberRecord run_member(const PortGraph& base, std::size_t marked, double p,
                        std::size_t index, std::uint64_t seed) {
  PercolationSpec ps;
  ps.site_probability = p;
  ps.seed = member_seed(seed, index);
  ps.marked_vertex = marked;
  const PortGraph lattice = percolate_sites(base, ps);

  MemberRecord rec;
  rec.index = index;
  rec.present_count = lattice.present_vertex_count();
  if (lattice.present_arc_count() == 0) return rec;  // isolated marked vertex

  const double threshold = default_threshold(lattice);
  const std::size_t t_max = 2 * lattice.present_vertex_count();
  const SearchResult res =
      run_search_first_peak(lattice, marked, std::nullopt, threshold, t_max);
  rec.peak_time = res.peak_time;
  rec.peak_probability = res.peak_probability;
  rec.success = res.success;
  return rec;
}

}  // namespace

std::uint64_t member_seed(std::uint64_t master_seed, std::size_t index) {
  return splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

EnsembleResult run_percolation_ensemble(const LatticeSpec& base, double p,
                                        std::size_t m, std::uint64_t seed,
                                        std::size_t workers) {
  if (m < 1) throw std::invalid_argument("ensemble needs at least one member");
  const PortGraph graph = build_lattice(base);
  const std::size_t marked = graph.center_vertex();

  EnsembleResult result;
  result.n_lattices = m;
  result.percolation_probability = p;
  result.base_vertex_count = graph.num_vertices();
  result.seed = seed;
  result.members.resize(m);

  if (p == 0.0 || p == 1.0) {
    // Every member draws the identical lattice; one run represents all of
    // them, and the aggregates equal the single-run values exactly.
    MemberRecord rec = run_member(graph, marked, p, 0, seed);
    for (std::size_t i = 0; i < m; ++i) {
      rec.index = i;
      result.members[i] = rec;
    }
    result.mean_peak_probability = rec.peak_probability;
    result.success_rate = rec.success ? 1.0 : 0.0;
    if (rec.success) {
      result.aggregated_time = static_cast<double>(rec.peak_time);
    }
    return result;
  }

  parallel_for(m, workers, [&](std::size_t i) {
    result.members[i] = run_member(graph, marked, p, i, seed);
  });

  // Aggregate in index order so the outcome is independent of scheduling.
  double prob_sum = 0.0;
  double rate_sum = 0.0;
  std::size_t successes = 0;
  for (const MemberRecord& rec : result.members) {
    prob_sum += rec.peak_probability;
    if (rec.success) {
      rate_sum += 1.0 / static_cast<double>(rec.peak_time);
      ++successes;
    }
  }
  result.mean_peak_probability = prob_sum / static_cast<double>(m);
  result.success_rate =
      static_cast<double>(successes) / static_cast<double>(m);
  if (successes > 0) {
    result.aggregated_time = 1.0 / (rate_sum / static_cast<double>(m));
  }
  return result;
}

std::vector<EnsembleResult> ensemble_sweep(const EnsembleSweepConfig& config) {
  std::vector<EnsembleResult> rows;
  rows.reserve(config.extents_list.size() * config.p_values.size());
  std::size_t cell = 0;
  for (const auto& extents : config.extents_list) {
    for (const double p : config.p_values) {
      LatticeSpec spec;
      spec.family = config.family;
      spec.extents = extents;
      const std::uint64_t cell_seed = splitmix64(config.seed + cell);
      rows.push_back(run_percolation_ensemble(spec, p, config.members, cell_seed,
                                              config.workers));
      ++cell;
    }
  }
  return rows;
}

}  // namespace qwalk

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwalk/ensemble.hpp"
#include "qwalk/search.hpp"

using namespace qwalk;

namespace {

LatticeSpec square(std::size_t side) {
  LatticeSpec spec;
  spec.family = LatticeFamily::kSquare2d;
  spec.extents = {side, side};
  return spec;
}

}  // namespace

TEST_CASE("p=1 ensemble equals the deterministic run exactly") {
  const LatticeSpec base = square(12);
  const EnsembleResult res = run_percolation_ensemble(base, 1.0, 25, 99);
  CHECK(res.success_rate == 1.0);
  CHECK(res.n_lattices == 25);

  const PortGraph g = build_lattice(base);
  const SearchResult direct = run_search_first_peak(
      g, g.center_vertex(), std::nullopt, default_threshold(g),
      2 * g.present_vertex_count());
  REQUIRE(direct.success);
  CHECK(res.mean_peak_probability == direct.peak_probability);
  REQUIRE(res.aggregated_time.has_value());
  CHECK(*res.aggregated_time == static_cast<double>(direct.peak_time));
  for (const auto& m : res.members) {
    REQUIRE(m.success);
    REQUIRE(m.peak_time == direct.peak_time);
    REQUIRE(m.present_count == 144);
  }
}

TEST_CASE("p=0 ensemble fails every member and reports no time") {
  const EnsembleResult res = run_percolation_ensemble(square(8), 0.0, 100, 7);
  CHECK(res.success_rate == 0.0);
  CHECK(res.mean_peak_probability == 0.0);
  CHECK_FALSE(res.aggregated_time.has_value());
  for (const auto& m : res.members) {
    REQUIRE_FALSE(m.success);
    REQUIRE(m.present_count == 1);
    REQUIRE(m.peak_time == 0);
    REQUIRE(m.peak_probability == 0.0);
  }
}

TEST_CASE("identical seeds give bit-identical ensembles regardless of workers") {
  const EnsembleResult a = run_percolation_ensemble(square(10), 0.85, 40, 1234, 1);
  const EnsembleResult b = run_percolation_ensemble(square(10), 0.85, 40, 1234, 2);
  REQUIRE(a.members.size() == b.members.size());
  CHECK(a.mean_peak_probability == b.mean_peak_probability);
  CHECK(a.success_rate == b.success_rate);
  CHECK(a.aggregated_time == b.aggregated_time);
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    REQUIRE(a.members[i].peak_time == b.members[i].peak_time);
    REQUIRE(a.members[i].peak_probability == b.members[i].peak_probability);
    REQUIRE(a.members[i].present_count == b.members[i].present_count);
  }
  const EnsembleResult c = run_percolation_ensemble(square(10), 0.85, 40, 4321, 2);
  bool differs = c.mean_peak_probability != a.mean_peak_probability;
  for (std::size_t i = 0; i < a.members.size() && !differs; ++i) {
    differs = c.members[i].present_count != a.members[i].present_count;
  }
  CHECK(differs);
}

TEST_CASE("aggregates recompute from the stored member records") {
  const EnsembleResult res = run_percolation_ensemble(square(10), 0.8, 60, 5);
  double prob_sum = 0.0, rate_sum = 0.0;
  std::size_t successes = 0;
  for (const auto& m : res.members) {
    prob_sum += m.peak_probability;
    if (m.success) {
      rate_sum += 1.0 / static_cast<double>(m.peak_time);
      ++successes;
    }
    if (!m.success) {
      REQUIRE(m.peak_time == 0);
      REQUIRE(m.peak_probability == 0.0);
    }
  }
  CHECK(res.mean_peak_probability == prob_sum / 60.0);
  CHECK(res.success_rate == static_cast<double>(successes) / 60.0);
  if (successes > 0) {
    REQUIRE(res.aggregated_time.has_value());
    CHECK(*res.aggregated_time == 1.0 / (rate_sum / 60.0));
  }
}

TEST_CASE("milder percolation keeps more of the peak probability") {
  const EnsembleResult p1 = run_percolation_ensemble(square(20), 1.0, 1, 11);
  const EnsembleResult p09 = run_percolation_ensemble(square(20), 0.9, 120, 11);
  const EnsembleResult p07 = run_percolation_ensemble(square(20), 0.7, 120, 11);
  REQUIRE(p1.aggregated_time.has_value());
  CHECK(p09.mean_peak_probability < p1.mean_peak_probability);
  CHECK(p07.mean_peak_probability < p09.mean_peak_probability);
  CHECK(p09.success_rate > p07.success_rate);
}

TEST_CASE("aggregated time grows as the lattice gets more disordered") {
  const LatticeSpec base = square(15);
  const EnsembleResult p1 = run_percolation_ensemble(base, 1.0, 1, 3);
  const EnsembleResult p09 = run_percolation_ensemble(base, 0.9, 60, 3);
  const EnsembleResult p06 = run_percolation_ensemble(base, 0.6, 60, 3);
  REQUIRE(p1.aggregated_time.has_value());
  REQUIRE(p09.aggregated_time.has_value());
  REQUIRE(p06.aggregated_time.has_value());
  CHECK(*p1.aggregated_time < *p09.aggregated_time);
  CHECK(*p09.aggregated_time < *p06.aggregated_time);
}

TEST_CASE("ensemble sweep covers the grid and repeats search rows at p=1") {
  EnsembleSweepConfig config;
  config.family = LatticeFamily::kSquare2d;
  config.extents_list = {{8, 8}, {10, 10}};
  config.p_values = {0.8, 1.0};
  config.members = 15;
  config.seed = 77;
  const auto rows = ensemble_sweep(config);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].base_vertex_count == 64);
  CHECK(rows[0].percolation_probability == 0.8);
  CHECK(rows[3].base_vertex_count == 100);
  CHECK(rows[3].percolation_probability == 1.0);

  // the p=1 cells carry the plain-search peak values
  SearchExperimentConfig sc;
  sc.family = LatticeFamily::kSquare2d;
  sc.extents_list = {{8, 8}, {10, 10}};
  sc.t_max_override = 2 * 100;
  const auto search_rows = search_experiment(sc);
  const PortGraph g8 = build_lattice(square(8));
  const SearchResult direct8 = run_search_first_peak(
      g8, g8.center_vertex(), std::nullopt, 2.0 / 64, 2 * 64);
  CHECK(rows[1].mean_peak_probability == direct8.peak_probability);
  CHECK(rows[1].aggregated_time.has_value());
  CHECK(*rows[1].aggregated_time == static_cast<double>(direct8.peak_time));
  CHECK(search_rows[0].peak_probability == direct8.peak_probability);
  CHECK(search_rows[0].peak_time == direct8.peak_time);
}

TEST_CASE("member seeds are stable splits of the master seed") {
  CHECK(member_seed(1, 0) == member_seed(1, 0));
  CHECK(member_seed(1, 0) != member_seed(1, 1));
  CHECK(member_seed(1, 5) != member_seed(2, 5));
}

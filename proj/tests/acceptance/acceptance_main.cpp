// End-to-end acceptance suite. Every reproduction target runs at its stated
// tolerance and prints one PASS/FAIL line; the exit code is the number of
// failed checks.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/search.hpp"
#include "support/dense_oracle.hpp"

namespace {

using namespace qwalk;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    } else {
      if (!detail.empty()) detail += "; ";
      detail += what + " ok";
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

PortGraph make(LatticeFamily family, std::vector<std::size_t> extents) {
  LatticeSpec spec;
  spec.family = family;
  spec.extents = std::move(extents);
  return build_lattice(spec);
}

// ---------------------------------------------------------------------------

Outcome check_line_walk_amplitudes() {
  Outcome out;
  const PortGraph g = make(LatticeFamily::kLine, {9});
  const std::size_t origin = g.center_vertex();
  const CoinAssignment coins = CoinAssignment::uniform(g, hadamard());
  const Amplitude start[2] = {1.0, 0.0};
  WalkState s = localized_state(g, origin, start);
  evolve(s, coins, ShiftKind::kDirectional, 3);

  const double r8 = 1.0 / std::sqrt(8.0);
  struct Expect {
    long offset;
    int port;
    double value;
  };
  const Expect expected[] = {
      {-3, 0, r8}, {-1, 1, r8}, {-1, 0, 2 * r8}, {+1, 0, -r8}, {+3, 1, r8}};
  double worst = 0.0;
  std::vector<Amplitude> want(g.arc_count(), 0.0);
  for (const auto& e : expected) {
    const std::size_t v = (origin + 9 + e.offset) % 9;
    want[g.arc_index(v, e.port)] = e.value;
  }
  for (std::size_t a = 0; a < g.arc_count(); ++a) {
    worst = std::max(worst, std::abs(s.amp[a] - want[a]));
  }
  out.require(worst <= 1e-12, "three-step amplitudes exact (max dev " + fmt(worst) + ")");
  return out;
}

Outcome check_coin_goldens() {
  Outcome out;
  auto diff = [](const CoinMatrix& m, const std::vector<std::vector<double>>& want) {
    double worst = 0.0;
    for (int r = 0; r < m.dim(); ++r) {
      for (int c = 0; c < m.dim(); ++c) {
        worst = std::max(worst, std::abs(m.at(r, c) - want[r][c]));
      }
    }
    return worst;
  };
  const double d0 = diff(tunnelling_coin(6, 2, 0.0),
                         {{-0.5, 0.5, 0.5, 0.5, 0, 0},
                          {0.5, -0.5, 0.5, 0.5, 0, 0},
                          {0.5, 0.5, -0.5, 0.5, 0, 0},
                          {0.5, 0.5, 0.5, -0.5, 0, 0},
                          {0, 0, 0, 0, -1, 0},
                          {0, 0, 0, 0, 0, -1}});
  out.require(d0 <= 1e-12, "decoupled tunnelling coin (dev " + fmt(d0) + ")");

  const double third = 1.0 / 3.0;
  std::vector<std::vector<double>> full(6, std::vector<double>(6, third));
  for (int i = 0; i < 6; ++i) full[i][i] = -2.0 * third;
  const double d1 = diff(tunnelling_coin(6, 2, third), full);
  out.require(d1 <= 1e-12, "grover-limit tunnelling coin (dev " + fmt(d1) + ")");

  const double a = -third, b = 2.0 * third;
  const double d2 = diff(percolation_coin(4, std::vector<bool>{true, true, false, true}),
                         {{a, b, 0, b}, {b, a, 0, b}, {0, 0, 1, 0}, {b, b, 0, a}});
  out.require(d2 <= 1e-12, "identity-padded coin (dev " + fmt(d2) + ")");
  return out;
}

Outcome check_unitarity_sweep() {
  Outcome out;
  double worst_unitary = 0.0;
  double worst_limit = 0.0;
  for (int d = 2; d <= 14; ++d) {
    const CoinMatrix g = grover(d);
    worst_unitary = std::max(worst_unitary, g.unitarity_defect());
    worst_unitary = std::max(worst_unitary, marked_coin(d).unitarity_defect());
    for (int t = 1; 2 * t <= d; ++t) {
      for (int k = 0; k <= 10; ++k) {
        const double c = (2.0 / d) * (k / 10.0);
        worst_unitary =
            std::max(worst_unitary, tunnelling_coin(d, t, c).unitarity_defect());
      }
      const CoinMatrix limit = tunnelling_coin(d, t, 2.0 / d);
      for (int r = 0; r < d; ++r) {
        for (int col = 0; col < d; ++col) {
          worst_limit =
              std::max(worst_limit, std::abs(limit.at(r, col) - g.at(r, col)));
        }
      }
    }
  }
  for (int d = 2; d <= 6; ++d) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      worst_unitary =
          std::max(worst_unitary, percolation_coin(d, mask).unitarity_defect());
    }
  }
  out.require(worst_unitary <= 1e-12,
              "every coin unitary (worst defect " + fmt(worst_unitary) + ")");
  out.require(worst_limit <= 1e-12,
              "tunnelling coin at c=2/d equals grover (dev " + fmt(worst_limit) + ")");
  return out;
}

Outcome check_n400_reproduction() {
  Outcome out;
  const PortGraph g = make(LatticeFamily::kSquare2d, {20, 20});
  const SearchTrace trace = run_search(g, 190, std::nullopt, 200);
  const SearchResult r =
      find_first_peak(trace, 2.0 / 400, default_min_peak_time(g));
  out.require(r.success, "search succeeds");
  out.require(r.peak_time >= 30 && r.peak_time <= 34,
              "first peak time " + std::to_string(r.peak_time) + " in [30,34]");
  out.require(r.peak_probability >= 0.20 && r.peak_probability <= 0.26,
              "peak probability " + fmt(r.peak_probability) + " in [0.20,0.26]");
  const double half = trace.marked_probability[16];
  out.require(half >= 0.07 && half <= 0.13,
              "probability at t=16 " + fmt(half) + " in [0.07,0.13]");
  return out;
}

std::vector<ExperimentRow> square_sweep_rows() {
  SearchExperimentConfig config;
  config.family = LatticeFamily::kSquare2d;
  for (std::size_t side = 10; side <= 100; side += 10) {
    config.extents_list.push_back({side, side});
  }
  return search_experiment(config);
}

Outcome check_probability_prefactor(const std::vector<ExperimentRow>& rows) {
  Outcome out;
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows) pts.emplace_back(row.n, row.peak_probability);
  const ScalingFit f = fit(ScalingModel::kLogPrefactor, pts);
  out.require(std::abs(f.coefficients[0] - 2.173) <= 0.15,
              "probability prefactor " + fmt(f.coefficients[0]) + " = 2.173 +/- 0.15");
  return out;
}

Outcome check_time_prefactor(const std::vector<ExperimentRow>& rows) {
  Outcome out;
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows) {
    pts.emplace_back(row.n, static_cast<double>(row.peak_time));
  }
  const ScalingFit f = fit(ScalingModel::kSqrtPrefactor, pts);
  out.require(std::abs(f.coefficients[0] - 2.0) <= 0.15,
              "time prefactor " + fmt(f.coefficients[0]) + " = 2.0 +/- 0.15");
  return out;
}

Outcome check_stationarity_and_periodicity() {
  Outcome out;
  double worst_drift = 0.0;
  for (const auto& g :
       {make(LatticeFamily::kSquare2d, {20, 20}), make(LatticeFamily::kHex2d, {6, 6}),
        make(LatticeFamily::kCubic3d, {6, 6, 6})}) {
    const CoinAssignment coins = assemble_coins(g, std::nullopt, std::nullopt);
    const WalkState reference = uniform_state(g);
    WalkState s = uniform_state(g);
    evolve(s, coins, ShiftKind::kReversing, 100);
    for (std::size_t a = 0; a < g.arc_count(); ++a) {
      worst_drift = std::max(worst_drift, std::abs(s.amp[a] - reference.amp[a]));
    }
  }
  out.require(worst_drift <= 1e-10,
              "uniform state fixed for 100 steps (drift " + fmt(worst_drift) + ")");

  double worst_period = 0.0;
  const PortGraph g = make(LatticeFamily::kStacked2d, {6, 6, 6});
  for (double p : {0.0, 0.3, 0.7, 1.0}) {
    const CoinAssignment coins =
        assemble_coins(g, std::nullopt, p * 2.0 / g.max_degree());
    WalkState s = weighted_tunnelling_state(g, p);
    const WalkState reference = s;
    evolve(s, coins, ShiftKind::kReversing, 2);
    for (std::size_t a = 0; a < g.arc_count(); ++a) {
      worst_period = std::max(worst_period, std::abs(s.amp[a] - reference.amp[a]));
    }
  }
  out.require(worst_period <= 1e-10,
              "weighted state two-step periodic (dev " + fmt(worst_period) + ")");
  return out;
}

Outcome check_dense_oracle_equivalence() {
  Outcome out;
  const PortGraph g = make(LatticeFamily::kSquare2d, {4, 4});
  const std::size_t marked = 5;
  const SearchTrace trace = run_search(g, marked, std::nullopt, 50);
  const CoinAssignment coins = assemble_coins(g, marked, std::nullopt);
  const auto u = qwalk::testing::build_step_matrix(g, coins, ShiftKind::kReversing);
  WalkState psi = uniform_state(g);
  double worst = 0.0;
  for (std::size_t t = 1; t <= 50; ++t) {
    psi.amp = qwalk::testing::apply_dense(u, psi.amp);
    double prob = 0.0;
    for (int p = 0; p < 4; ++p) prob += std::norm(psi.amp[g.arc_index(marked, p)]);
    worst = std::max(worst, std::abs(prob - trace.marked_probability[t]));
  }
  out.require(worst <= 1e-10, "dense oracle matches the trace (dev " + fmt(worst) + ")");
  return out;
}

Outcome check_tunnelling_limit() {
  Outcome out;
  {
    const PortGraph stacked = make(LatticeFamily::kStacked2d, {8, 8, 8});
    const PortGraph cubic = make(LatticeFamily::kCubic3d, {8, 8, 8});
    const std::size_t marked = stacked.center_vertex();
    const std::size_t t_max = default_t_max(stacked);
    const SearchTrace a = run_search(stacked, marked, 1.0, t_max);
    const SearchTrace b = run_search(cubic, marked, std::nullopt, t_max);
    double worst = 0.0;
    for (std::size_t t = 0; t < a.marked_probability.size(); ++t) {
      worst = std::max(worst,
                       std::abs(a.marked_probability[t] - b.marked_probability[t]));
    }
    out.require(worst <= 1e-10,
                "full-tunnelling trace equals the cubic lattice (dev " + fmt(worst) + ")");
  }
  {
    std::vector<double> prefactors;
    for (double p : {0.4, 0.6, 0.8, 1.0}) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t side = 6; side <= 12; ++side) {
        SearchExperimentConfig config;
        config.family = LatticeFamily::kStacked2d;
        config.extents_list = {{side, side, side}};
        config.p_values = {p};
        const auto rows = search_experiment(config);
        pts.emplace_back(rows[0].n, static_cast<double>(rows[0].peak_time));
      }
      prefactors.push_back(fit(ScalingModel::kSqrtPrefactor, pts).coefficients[0]);
    }
    bool monotone = true;
    std::string seq;
    for (std::size_t i = 0; i < prefactors.size(); ++i) {
      if (i) {
        monotone = monotone && prefactors[i] <= prefactors[i - 1] + 1e-12;
        seq += " >= ";
      }
      seq += fmt(prefactors[i]);
    }
    out.require(monotone, "time prefactor non-increasing in p (" + seq + ")");
  }
  return out;
}

Outcome check_depth_sweep() {
  Outcome out;
  SearchExperimentConfig flat;
  flat.family = LatticeFamily::kSquare2d;
  flat.extents_list = {{30, 30}};
  const double flat_prob = search_experiment(flat)[0].peak_probability;

  std::vector<double> cubic_prob(31, 0.0);
  for (std::size_t side = 26; side <= 30; ++side) {
    SearchExperimentConfig cubic;
    cubic.family = LatticeFamily::kCubic3d;
    cubic.extents_list = {{side, side, side}};
    cubic_prob[side] = search_experiment(cubic)[0].peak_probability;
  }

  SearchExperimentConfig slab;
  slab.family = LatticeFamily::kSlab3d;
  for (std::size_t l = 1; l <= 30; ++l) slab.extents_list.push_back({30, 30, l});
  const auto rows = search_experiment(slab);

  const double first_ratio = rows[0].peak_probability / flat_prob;
  out.require(std::abs(first_ratio - 1.0) <= 0.05,
              "single layer matches the 2D lattice (ratio " + fmt(first_ratio) + ")");

  double worst = 0.0;
  for (std::size_t l = 20; l <= 30; ++l) {
    const int near = static_cast<int>(std::lround(std::cbrt(900.0 * l)));
    const double ratio = rows[l - 1].peak_probability / cubic_prob[near];
    worst = std::max(worst, std::abs(ratio - 1.0));
  }
  out.require(worst <= 0.05,
              "deep slabs track the cubic curve (worst deviation " + fmt(worst) + ")");
  return out;
}

Outcome check_connectivity_ordering() {
  Outcome out;
  auto peak_time = [](LatticeFamily family) {
    SearchExperimentConfig config;
    config.family = family;
    config.extents_list = {{50, 50}};
    return search_experiment(config)[0].peak_time;
  };
  const std::size_t t3 = peak_time(LatticeFamily::kHex2d);
  const std::size_t t4 = peak_time(LatticeFamily::kSquare2d);
  const std::size_t t6 = peak_time(LatticeFamily::kTriangular2d);
  const std::size_t t8 = peak_time(LatticeFamily::kSquareDiag2d);
  const std::string times = "T(3)=" + std::to_string(t3) + " T(4)=" + std::to_string(t4) +
                            " T(6)=" + std::to_string(t6) + " T(8)=" + std::to_string(t8);
  out.require(t8 < t6, "T(d=8) < T(d=6) (" + times + ")");
  out.require(t6 < t4, "T(d=6) < T(d=4)");
  out.require(t4 < t3, "T(d=4) < T(d=3)");
  return out;
}

Outcome check_percolation_exponents() {
  Outcome out;
  EnsembleSweepConfig config;
  config.family = LatticeFamily::kSquare2d;
  for (std::size_t side : {15, 20, 25, 30, 35, 40}) {
    config.extents_list.push_back({side, side});
  }
  config.p_values = {1.0, 0.9, 0.6};
  config.members = 300;
  config.seed = 20240601;
  const auto rows = ensemble_sweep(config);

  std::vector<AlphaPoint> pts;
  for (const auto& r : rows) {
    pts.push_back({r.percolation_probability, static_cast<double>(r.base_vertex_count),
                   r.aggregated_time});
  }
  const AlphaSeries series = alpha_vs_p(pts);
  auto alpha_of = [&](double p) -> double {
    for (const auto& [pp, a] : series.alpha) {
      if (pp == p) return a;
    }
    return std::nan("");
  };
  const double a10 = alpha_of(1.0);
  const double a09 = alpha_of(0.9);
  const double a06 = alpha_of(0.6);
  out.require(a10 >= 0.45 && a10 <= 0.58,
              "alpha(p=1.0) " + fmt(a10) + " in [0.45,0.58]");
  out.require(a09 <= 0.65, "alpha(p=0.9) " + fmt(a09) + " <= 0.65");
  out.require(a06 >= 0.80, "alpha(p=0.6) " + fmt(a06) + " >= 0.80");
  return out;
}

Outcome check_percolation_degenerate() {
  Outcome out;
  LatticeSpec base;
  base.family = LatticeFamily::kSquare2d;
  base.extents = {12, 12};
  const EnsembleResult ones = run_percolation_ensemble(base, 1.0, 25, 99);
  const PortGraph g = build_lattice(base);
  const SearchResult direct = run_search_first_peak(
      g, g.center_vertex(), std::nullopt, default_threshold(g),
      2 * g.present_vertex_count());
  out.require(ones.mean_peak_probability == direct.peak_probability &&
                  ones.aggregated_time.has_value() &&
                  *ones.aggregated_time == static_cast<double>(direct.peak_time) &&
                  ones.success_rate == 1.0,
              "p=1 ensemble equals the deterministic run bit-exactly");

  const EnsembleResult zeros = run_percolation_ensemble(base, 0.0, 25, 99);
  out.require(zeros.success_rate == 0.0 && !zeros.aggregated_time.has_value() &&
                  zeros.mean_peak_probability == 0.0,
              "p=0 ensemble fails with the no-time sentinel");
  return out;
}

Outcome check_classical_baseline() {
  Outcome out;
  const auto prob = classical_walk_line(100, 50000, 2024);
  double mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const double pos = static_cast<double>(i) - 100.0;
    mean += prob[i] * pos;
    second += prob[i] * pos * pos;
  }
  const double variance = second - mean * mean;
  out.require(std::abs(variance - 100.0) / 100.0 <= 0.05,
              "sample variance " + fmt(variance) + " within 5% of 100");
  return out;
}

Outcome check_cli_determinism() {
  Outcome out;
  const std::string cli = QWALK_CLI_PATH;
  const fs::path dir =
      fs::temp_directory_path() / ("qwalk_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " >/dev/null 2>&1").c_str()) == 0;
  };

  bool ok = true;
  ok = ok && run("search --family square2d --sizes 6:12:2 --seed 9 --out " +
                 (dir / "s1").string());
  ok = ok && run("search --family square2d --sizes 6:12:2 --seed 9 --out " +
                 (dir / "s2").string());
  ok = ok && run("percolation --dim 2 --sizes 10 --p 0.8,1.0 --m 20 --seed 9 "
                 "--members --out " +
                 (dir / "p1").string());
  ok = ok && run("percolation --dim 2 --sizes 10 --p 0.8,1.0 --m 20 --seed 9 "
                 "--members --out " +
                 (dir / "p2").string());
  ok = ok && run("walk --family line --steps 60 --classical-iters 20000 --seed 9 "
                 "--out " +
                 (dir / "w1").string());
  ok = ok && run("walk --family line --steps 60 --classical-iters 20000 --seed 9 "
                 "--out " +
                 (dir / "w2").string());
  out.require(ok, "commands run");
  if (ok) {
    out.require(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"), "search csv identical");
    out.require(slurp(dir / "p1.csv") == slurp(dir / "p2.csv"),
                "percolation csv identical");
    out.require(slurp(dir / "p1_members.csv") == slurp(dir / "p2_members.csv"),
                "member dump identical");
    out.require(slurp(dir / "w1_classical.csv") == slurp(dir / "w2_classical.csv"),
                "classical histogram identical");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };

  std::vector<ExperimentRow> sweep_rows;
  const std::vector<Criterion> criteria = {
      {1, "line walk three-step amplitudes", check_line_walk_amplitudes},
      {2, "coin construction goldens", check_coin_goldens},
      {3, "coin unitarity sweep", check_unitarity_sweep},
      {4, "N=400 search reproduction", check_n400_reproduction},
      {5, "probability prefactor fit",
       [&] { return check_probability_prefactor(sweep_rows); }},
      {6, "time prefactor fit", [&] { return check_time_prefactor(sweep_rows); }},
      {7, "stationarity and two-step periodicity", check_stationarity_and_periodicity},
      {8, "dense oracle equivalence", check_dense_oracle_equivalence},
      {9, "tunnelling limit consistency", check_tunnelling_limit},
      {10, "depth sweep trend", check_depth_sweep},
      {11, "connectivity ordering", check_connectivity_ordering},
      {12, "percolation exponents", check_percolation_exponents},
      {13, "percolation degenerate cases", check_percolation_degenerate},
      {14, "classical baseline", check_classical_baseline},
      {15, "command determinism", check_cli_determinism},
  };

  sweep_rows = square_sweep_rows();

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& err) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + err.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    std::printf("[%s] criterion %2d: %s (%.1fs) - %s\n",
                outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name, elapsed,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d/%zu acceptance criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

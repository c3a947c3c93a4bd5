#include "qwalk/search.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qwalk/coin.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

// User-facing tunnelling probability -> coin parameter.
double c_from_p(const PortGraph& g, double p_tunnel) {
  return p_tunnel * 2.0 / g.max_degree();
}

std::string extents_text(const std::vector<std::size_t>& extents) {
  std::ostringstream out;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (i) out << 'x';
    out << extents[i];
  }
  return out.str();
}

// Incremental first-peak detector.
//
// Values before min_time are the local backscatter transient of the marked
// defect, never a search outcome, and are skipped. Afterwards the earliest
// running maximum is tracked. A coherent search peak (one that towers over
// the success threshold) recurs indefinitely on regular lattices at odd
// multiples of the first-peak time, creeping upward by a few percent per
// revival; so once such a peak has completed (the trace fell to half its
// apex) it is held, and only a later value clearing it by more than the
// revival margin displaces it. Low, incoherent wiggles barely above the
// threshold have no revival structure and get plain earliest-maximum
// semantics. The constants sit in wide gaps: coherent first peaks measure
// 30-800x the threshold against 2-3x for wiggles, and revival growth stays
// under +9% across the step budget against severalfold differences between
// a wiggle and a genuine disordered-lattice maximum.
class PeakScan {
 public:
  PeakScan(double threshold, std::size_t min_time)
      : threshold_(threshold), min_time_(std::max<std::size_t>(min_time, 1)) {}

  void feed(std::size_t t, double value) {
    if (t == 0) {
      initial_ = value;
      return;
    }
    if (t < min_time_) return;
    if (held_) {
      if (value > (1.0 + kRevivalMargin) * apex_value_) {
        held_ = false;
        apex_value_ = value;
        apex_time_ = t;
      }
      return;
    }
    if (value > apex_value_) {
      apex_value_ = value;
      apex_time_ = t;
    } else if (apex_value_ >= kProminence * threshold_ && value < 0.5 * apex_value_) {
      held_ = true;
    }
  }

  SearchResult result() const {
    SearchResult r;
    r.threshold_used = threshold_;
    if (apex_time_ >= 1 && apex_value_ >= threshold_ && apex_value_ >= initial_) {
      r.peak_time = apex_time_;
      r.peak_probability = apex_value_;
      r.success = true;
    }
    return r;
  }

 private:
  static constexpr double kRevivalMargin = 0.25;
  static constexpr double kProminence = 10.0;

  double threshold_;
  std::size_t min_time_;
  double initial_ = 0.0;
  double apex_value_ = 0.0;
  std::size_t apex_time_ = 0;
  bool held_ = false;
};

}  // namespace

std::size_t default_t_max(const PortGraph& graph) {
  const double n = static_cast<double>(graph.present_vertex_count());
  return static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(n))) + 20;
}

double default_threshold(const PortGraph& graph) {
  return 2.0 / static_cast<double>(graph.present_vertex_count());
}

std::size_t default_min_peak_time(const PortGraph& graph) {
  const double n = static_cast<double>(graph.present_vertex_count());
  return static_cast<std::size_t>(std::ceil(0.5 * std::sqrt(n)));
}

SearchTrace run_search(const PortGraph& graph, std::size_t marked,
                       std::optional<double> p_tunnel, std::size_t t_max) {
  if (marked >= graph.num_vertices() || !graph.vertex_present(marked)) {
    throw std::invalid_argument("marked vertex absent from graph");
  }
  const auto coins = assemble_coins(
      graph, marked,
      p_tunnel ? std::optional<double>(c_from_p(graph, *p_tunnel)) : std::nullopt);
  WalkState state =
      p_tunnel ? weighted_tunnelling_state(graph, *p_tunnel) : uniform_state(graph);

  SearchTrace trace;
  trace.graph_descriptor = graph.descriptor();
  trace.marked = marked;
  trace.marked_probability.reserve(t_max + 1);
  trace.marked_probability.push_back(vertex_probability(state, marked));
  evolve(state, coins, ShiftKind::kReversing, t_max, [&](const WalkState& s) {
    trace.marked_probability.push_back(vertex_probability(s, marked));
  });
  return trace;
}

SearchResult find_first_peak(const SearchTrace& trace, double threshold,
                             std::size_t min_time) {
  PeakScan scan(threshold, min_time);
  const auto& tr = trace.marked_probability;
  for (std::size_t t = 0; t < tr.size(); ++t) scan.feed(t, tr[t]);
  return scan.result();
}

SearchResult run_search_first_peak(const PortGraph& graph, std::size_t marked,
                                   std::optional<double> p_tunnel,
                                   double threshold, std::size_t t_max) {
  if (marked >= graph.num_vertices() || !graph.vertex_present(marked)) {
    throw std::invalid_argument("marked vertex absent from graph");
  }
  PeakScan scan(threshold, default_min_peak_time(graph));
  if (graph.present_arc_count() == 0) return scan.result();

  const auto coins = assemble_coins(
      graph, marked,
      p_tunnel ? std::optional<double>(c_from_p(graph, *p_tunnel)) : std::nullopt);
  WalkState state =
      p_tunnel ? weighted_tunnelling_state(graph, *p_tunnel) : uniform_state(graph);

  std::vector<Amplitude> scratch;
  scan.feed(0, vertex_probability(state, marked));
  for (std::size_t t = 1; t <= t_max; ++t) {
    step(state, coins, ShiftKind::kReversing, scratch);
    scan.feed(t, vertex_probability(state, marked));
  }
  return scan.result();
}

std::vector<ExperimentRow> search_experiment(const SearchExperimentConfig& config) {
  struct Cell {
    std::size_t size_index;
    std::size_t p_index;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < config.extents_list.size(); ++i) {
    for (std::size_t j = 0; j < config.p_values.size(); ++j) cells.push_back({i, j});
  }
  std::vector<ExperimentRow> rows(cells.size());

  parallel_for(cells.size(), config.workers, [&](std::size_t k) {
    const Cell& cell = cells[k];
    LatticeSpec spec;
    spec.family = config.family;
    spec.extents = config.extents_list[cell.size_index];
    const PortGraph graph = build_lattice(spec);
    const std::optional<double> p = config.p_values[cell.p_index];
    const std::size_t t_max =
        config.t_max_override ? *config.t_max_override : default_t_max(graph);
    const double threshold = default_threshold(graph);
    const SearchResult res = run_search_first_peak(graph, graph.center_vertex(), p,
                                                   threshold, t_max);
    ExperimentRow row;
    row.family = family_name(config.family);
    row.n = graph.num_vertices();
    row.extents = extents_text(spec.extents);
    row.p_tunnel = p;
    row.peak_time = res.peak_time;
    row.peak_probability = res.peak_probability;
    row.success = res.success;
    row.threshold = threshold;
    row.t_max = t_max;
    row.seed = config.seed;
    rows[k] = std::move(row);
  });
  return rows;
}

}  // namespace qwalk

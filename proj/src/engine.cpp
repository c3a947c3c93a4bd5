#include "qwalk/engine.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qwalk {

double WalkState::norm_squared() const {
  double acc = 0.0;
  for (const auto& z : amp) acc += std::norm(z);
  return acc;
}

WalkState uniform_state(const PortGraph& graph) {
  const std::size_t arcs = graph.present_arc_count();
  if (arcs == 0) throw std::invalid_argument("graph has no present arcs");
  WalkState s;
  s.graph = &graph;
  s.amp.assign(graph.arc_count(), 0.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(arcs));
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    for (int p = 0; p < graph.max_degree(); ++p) {
      if (graph.port_present(v, p)) s.amp[graph.arc_index(v, p)] = a;
    }
  }
  return s;
}

WalkState weighted_tunnelling_state(const PortGraph& graph, double p_tunnel) {
  if (graph.tunnel_count() == 0) {
    throw std::invalid_argument("graph has no tunnelling ports");
  }
  if (p_tunnel < 0.0 || p_tunnel > 1.0) {
    throw std::invalid_argument("tunnelling probability must lie in [0, 1]");
  }
  WalkState s;
  s.graph = &graph;
  s.amp.assign(graph.arc_count(), 0.0);
  // Per-edge weight alpha on normal arcs and p*alpha on tunnelling arcs,
  // with (d-t + t p) alpha = 1/sqrt(N); then normalize globally.
  const int d = graph.max_degree();
  const int t = graph.tunnel_count();
  const double alpha = 1.0 / (std::sqrt(static_cast<double>(graph.num_vertices())) *
                              (static_cast<double>(d - t) + t * p_tunnel));
  double norm2 = 0.0;
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    for (int p = 0; p < d; ++p) {
      if (!graph.port_present(v, p)) continue;
      const double w = graph.tunnelling_port(v, p) ? p_tunnel * alpha : alpha;
      s.amp[graph.arc_index(v, p)] = w;
      norm2 += w * w;
    }
  }
  if (norm2 <= 0.0) throw std::invalid_argument("weighted state has zero norm");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& z : s.amp) z *= scale;
  return s;
}

WalkState localized_state(const PortGraph& graph, std::size_t v,
                          std::span<const Amplitude> coin_weights) {
  if (v >= graph.num_vertices() || !graph.vertex_present(v)) {
    throw std::invalid_argument("start vertex absent from graph");
  }
  if (static_cast<int>(coin_weights.size()) != graph.max_degree()) {
    throw std::invalid_argument("coin weight count must equal the degree");
  }
  double norm2 = 0.0;
  for (int p = 0; p < graph.max_degree(); ++p) {
    if (graph.port_present(v, p)) {
      norm2 += std::norm(coin_weights[p]);
    } else if (std::norm(coin_weights[p]) != 0.0) {
      throw std::invalid_argument("coin weight on an absent port");
    }
  }
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("coin weights must be normalized");
  }
  WalkState s;
  s.graph = &graph;
  s.amp.assign(graph.arc_count(), 0.0);
  for (int p = 0; p < graph.max_degree(); ++p) {
    s.amp[graph.arc_index(v, p)] = coin_weights[p];
  }
  return s;
}

void step(WalkState& state, const CoinAssignment& coins, ShiftKind shift,
          std::vector<Amplitude>& scratch) {
  const PortGraph& g = *state.graph;
  if (&coins.graph() != &g) {
    throw std::invalid_argument("coin assignment was built for a different graph");
  }
  const int d = g.max_degree();
  const std::size_t n = g.num_vertices();
  scratch.resize(g.arc_count());

  Amplitude* const out = scratch.data();
  const Amplitude* const in = state.amp.data();

  if (coins.all_real()) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::complex<double>* m = coins.flat(v);
      const std::size_t base = v * d;
      for (int p = 0; p < d; ++p) {
        double re = 0.0, im = 0.0;
        const std::complex<double>* row = m + static_cast<std::size_t>(p) * d;
        for (int q = 0; q < d; ++q) {
          const double w = row[q].real();
          re += w * in[base + q].real();
          im += w * in[base + q].imag();
        }
        out[base + p] = {re, im};
      }
    }
  } else {
    for (std::size_t v = 0; v < n; ++v) {
      const std::complex<double>* m = coins.flat(v);
      const std::size_t base = v * d;
      for (int p = 0; p < d; ++p) {
        double re = 0.0, im = 0.0;
        const std::complex<double>* row = m + static_cast<std::size_t>(p) * d;
        for (int q = 0; q < d; ++q) {
          const double wr = row[q].real(), wi = row[q].imag();
          const double xr = in[base + q].real(), xi = in[base + q].imag();
          re += wr * xr - wi * xi;
          im += wr * xi + wi * xr;
        }
        out[base + p] = {re, im};
      }
    }
  }

  // Shift: present arcs move to their landing arc, absent arcs stay. Either
  // landing map is a permutation, so each target is written exactly once.
  Amplitude* const dst = state.amp.data();
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t base = v * d;
    for (int p = 0; p < d; ++p) {
      if (g.port_present(v, p)) {
        const ArcRef land = shift == ShiftKind::kReversing ? g.arc_pair(v, p)
                                                           : g.landing_arc(v, p);
        dst[land.vertex * d + land.port] = out[base + p];
      } else {
        dst[base + p] = out[base + p];
      }
    }
  }
  ++state.time;
}

void evolve(WalkState& state, const CoinAssignment& coins, ShiftKind shift,
            std::size_t steps, const StepObserver& observer) {
  std::vector<Amplitude> scratch;
  for (std::size_t i = 0; i < steps; ++i) {
    step(state, coins, shift, scratch);
    if (observer) observer(state);
  }
}

std::vector<double> vertex_probabilities(const WalkState& state) {
  const PortGraph& g = *state.graph;
  std::vector<double> prob(g.num_vertices(), 0.0);
  const int d = g.max_degree();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    double acc = 0.0;
    for (int p = 0; p < d; ++p) acc += std::norm(state.amp[v * d + p]);
    prob[v] = acc;
  }
  return prob;
}

double vertex_probability(const WalkState& state, std::size_t v) {
  const int d = state.graph->max_degree();
  double acc = 0.0;
  for (int p = 0; p < d; ++p) acc += std::norm(state.amp[v * d + p]);
  return acc;
}

double spread(const WalkState& state, const std::vector<std::size_t>& distances) {
  const auto prob = vertex_probabilities(state);
  double acc = 0.0;
  for (std::size_t v = 0; v < prob.size(); ++v) {
    if (prob[v] == 0.0) continue;
    if (distances[v] == kUnreachable) {
      throw std::runtime_error("nonzero probability at an unreachable vertex");
    }
    acc += prob[v] * static_cast<double>(distances[v]);
  }
  return acc;
}

Observables observe(const WalkState& state, std::size_t origin,
                    const std::vector<std::size_t>* distances) {
  Observables obs;
  obs.vertex_probability = vertex_probabilities(state);
  obs.origin_probability = obs.vertex_probability[origin];
  if (distances) {
    double acc = 0.0;
    for (std::size_t v = 0; v < obs.vertex_probability.size(); ++v) {
      if (obs.vertex_probability[v] == 0.0) continue;
      if ((*distances)[v] == kUnreachable) {
        throw std::runtime_error("nonzero probability at an unreachable vertex");
      }
      acc += obs.vertex_probability[v] * static_cast<double>((*distances)[v]);
    }
    obs.spread = acc;
  }
  return obs;
}

std::vector<double> classical_walk_line(std::size_t steps, std::size_t iterations,
                                        std::uint64_t seed) {
  std::vector<std::size_t> counts(2 * steps + 1, 0);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t it = 0; it < iterations; ++it) {
    long pos = 0;
    for (std::size_t t = 0; t < steps; ++t) pos += flip(rng) ? 1 : -1;
    counts[static_cast<std::size_t>(pos + static_cast<long>(steps))]++;
  }
  std::vector<double> prob(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    prob[i] = static_cast<double>(counts[i]) / static_cast<double>(iterations);
  }
  return prob;
}

}  // namespace qwalk

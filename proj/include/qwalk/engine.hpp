#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

using Amplitude = std::complex<double>;

// Quantum state of a coined walk: one complex amplitude per (vertex, port)
// arc. Absent arcs carry exactly zero at all times.
struct WalkState {
  const PortGraph* graph = nullptr;
  std::vector<Amplitude> amp;
  std::size_t time = 0;

  double norm_squared() const;
};

// Equal superposition over every present arc (1/sqrt(dN) on a full lattice).
WalkState uniform_state(const PortGraph& graph);

// Uniform over vertices with tunnelling arcs down-weighted by the tunnelling
// probability p, then normalized. p=1 reduces to uniform_state; p=0 puts
// nothing on tunnelling arcs. Requires a graph with tunnelling ports.
WalkState weighted_tunnelling_state(const PortGraph& graph, double p_tunnel);

// All amplitude on one vertex with the given per-port coin weights, which
// must be normalized over the vertex's present ports (tolerance 1e-10).
WalkState localized_state(const PortGraph& graph, std::size_t v,
                          std::span<const Amplitude> coin_weights);

// Landing convention of the conditional shift.
//   kDirectional: amplitude leaving port p lands on the far vertex's port of
//     the same direction (coin state 0 keeps moving left forever), falling
//     back to the traversed edge's far port when that slot has no edge.
//     This is the free-walk convention: line demos, spreading and
//     localization studies.
//   kReversing: amplitude lands on the far port of the traversed edge. This
//     is the search convention; the marked-coin defect only concentrates
//     probability under it.
enum class ShiftKind { kDirectional, kReversing };

// One walk step: per-vertex coin, then the conditional shift. Amplitude on
// an absent arc stays in place. Norm-preserving.
void step(WalkState& state, const CoinAssignment& coins, ShiftKind shift,
          std::vector<Amplitude>& scratch);

using StepObserver = std::function<void(const WalkState&)>;

// Applies `steps` walk steps; the observer (if any) sees the state after
// each one.
void evolve(WalkState& state, const CoinAssignment& coins, ShiftKind shift,
            std::size_t steps, const StepObserver& observer = {});

struct Observables {
  std::vector<double> vertex_probability;
  double origin_probability = 0.0;
  double spread = 0.0;
};

// Per-vertex probabilities (summed over ports); they sum to one.
std::vector<double> vertex_probabilities(const WalkState& state);

// Probability at a single vertex.
double vertex_probability(const WalkState& state, std::size_t v);

// Probability-weighted mean hop distance <r> = sum_i p_i s_i; `distances`
// comes from shortest_distances at the walk's start vertex.
double spread(const WalkState& state, const std::vector<std::size_t>& distances);

// Everything at once, for trace emission.
Observables observe(const WalkState& state, std::size_t origin,
                    const std::vector<std::size_t>* distances = nullptr);

// Monte Carlo unbiased +/-1 walk; returns probabilities for positions
// -steps..steps (index i corresponds to position i - steps).
std::vector<double> classical_walk_line(std::size_t steps, std::size_t iterations,
                                        std::uint64_t seed);

}  // namespace qwalk

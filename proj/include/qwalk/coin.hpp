#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

// A small dense unitary acting on the port space of one vertex.
class CoinMatrix {
 public:
  CoinMatrix() = default;
  explicit CoinMatrix(int dim)
      : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}

  int dim() const noexcept { return dim_; }

  std::complex<double>& at(int row, int col) {
    return entries_[static_cast<std::size_t>(row) * dim_ + col];
  }
  const std::complex<double>& at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * dim_ + col];
  }
  const std::vector<std::complex<double>>& entries() const noexcept { return entries_; }

  CoinMatrix negated() const;

  // Max elementwise deviation of C·C† from the identity.
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }

  // Row-major decimal text, one row per line.
  std::string to_text() const;

 private:
  int dim_ = 0;
  std::vector<std::complex<double>> entries_;
};

CoinMatrix hadamard();

// The balanced reflection coin of degree d: entries 2/d - delta_ij.
CoinMatrix grover(int d);

// Phase-inverted coin applied at the search target.
CoinMatrix marked_coin(int d);

// Coin coupling d-t normal ports to t tunnelling ports with strength c.
// Requires 1 <= t <= d/2 and 0 <= c <= 2/d; c = 0 decouples the blocks and
// c = 2/d recovers grover(d).
CoinMatrix tunnelling_coin(int d, int t, double c);

// Grover coin on the present ports, identity on the absent ones, no
// cross-coupling. mask[p] is true when port p carries an edge.
CoinMatrix percolation_coin(int d, const std::vector<bool>& mask);
CoinMatrix percolation_coin(int d, std::uint64_t mask_bits);  // bit p = port p

// Per-vertex coin table for a walk on a given graph. Immutable once built.
class CoinAssignment {
 public:
  // Every vertex with a full complement of edges receives default_coin; any
  // vertex missing edges receives the identity-padded coin for its presence
  // mask; the marked vertex receives the negation of what it would otherwise
  // get.
  static CoinAssignment uniform(const PortGraph& graph, const CoinMatrix& default_coin,
                                std::optional<std::size_t> marked = std::nullopt);

  const PortGraph& graph() const noexcept { return *graph_; }
  const CoinMatrix& coin_for(std::size_t v) const { return coins_[coin_index_[v]]; }
  std::optional<std::size_t> marked() const noexcept { return marked_; }

  // Row-major complex entries of vertex v's coin, for the step kernel.
  const std::complex<double>* flat(std::size_t v) const {
    return coins_[coin_index_[v]].entries().data();
  }
  bool all_real() const noexcept { return all_real_; }

 private:
  const PortGraph* graph_ = nullptr;
  std::vector<CoinMatrix> coins_;
  std::vector<std::uint32_t> coin_index_;
  std::optional<std::size_t> marked_;
  bool all_real_ = true;

  friend CoinAssignment assemble_coins(const PortGraph&, std::optional<std::size_t>,
                                       std::optional<double>);
};

// Builds the search coin field: percolation coins where edges are missing,
// the tunnelling coin when the graph interpolates and c is given, the Grover
// coin otherwise; the marked vertex gets the negated version.
CoinAssignment assemble_coins(const PortGraph& graph,
                              std::optional<std::size_t> marked,
                              std::optional<double> tunnelling_c);

}  // namespace qwalk

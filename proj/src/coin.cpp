#include "qwalk/coin.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace qwalk {

CoinMatrix CoinMatrix::negated() const {
  CoinMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = -entries_[i];
  return out;
}

double CoinMatrix::unitarity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < dim_; ++k) acc += at(r, k) * std::conj(at(c, k));
      const double expect = r == c ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(acc - expect));
    }
  }
  return worst;
}

std::string CoinMatrix::to_text() const {
  std::string out;
  char buf[64];
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      const auto& z = at(r, c);
      if (c) out += ' ';
      if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12g", z.real());
        out += buf;
      } else {
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

CoinMatrix hadamard() {
  CoinMatrix h(2);
  const double s = 1.0 / std::sqrt(2.0);
  h.at(0, 0) = s;
  h.at(0, 1) = s;
  h.at(1, 0) = s;
  h.at(1, 1) = -s;
  return h;
}

CoinMatrix grover(int d) {
  if (d < 2) throw std::invalid_argument("grover coin needs d >= 2");
  CoinMatrix g(d);
  const double off = 2.0 / d;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) g.at(r, c) = off - (r == c ? 1.0 : 0.0);
  }
  return g;
}

CoinMatrix marked_coin(int d) {
  if (d < 2) throw std::invalid_argument("marked coin needs d >= 2");
  return grover(d).negated();
}

CoinMatrix tunnelling_coin(int d, int t, double c) {
  if (t < 1 || 2 * t > d) {
    throw std::invalid_argument("tunnelling coin needs 1 <= t <= d/2");
  }
  if (c < 0.0 || c > 2.0 / d) {
    throw std::invalid_argument("tunnelling parameter must lie in [0, 2/d]");
  }
  const double disc = 1.0 - static_cast<double>(d - t) * t * c * c;
  if (disc < 0.0) throw std::invalid_argument("tunnelling coin discriminant negative");
  const double s = std::sqrt(disc);
  const double b = (1.0 + s) / (d - t);
  const double a = b - 1.0;
  const double f = (1.0 - s) / t;
  const double e = f - 1.0;

  CoinMatrix m(d);
  for (int r = 0; r < d; ++r) {
    const bool r_tunnel = r >= d - t;
    for (int col = 0; col < d; ++col) {
      const bool c_tunnel = col >= d - t;
      double value;
      if (r_tunnel != c_tunnel) {
        value = c;
      } else if (r_tunnel) {
        value = r == col ? e : f;
      } else {
        value = r == col ? a : b;
      }
      m.at(r, col) = value;
    }
  }
  return m;
}

CoinMatrix percolation_coin(int d, const std::vector<bool>& mask) {
  if (static_cast<int>(mask.size()) != d) {
    throw std::invalid_argument("presence mask size must equal the degree");
  }
  int k = 0;
  for (bool bit : mask) k += bit ? 1 : 0;
  CoinMatrix m(d);
  const double off = k > 0 ? 2.0 / k : 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (mask[r] && mask[c]) {
        m.at(r, c) = off - (r == c ? 1.0 : 0.0);
      } else {
        m.at(r, c) = (r == c) ? 1.0 : 0.0;  // identity on the absent block
      }
    }
  }
  return m;
}

CoinMatrix percolation_coin(int d, std::uint64_t mask_bits) {
  std::vector<bool> mask(d);
  for (int p = 0; p < d; ++p) mask[p] = (mask_bits >> p) & 1u;
  return percolation_coin(d, mask);
}

namespace {

std::uint64_t presence_mask(const PortGraph& g, std::size_t v) {
  std::uint64_t mask = 0;
  for (int p = 0; p < g.max_degree(); ++p) {
    if (g.port_present(v, p)) mask |= std::uint64_t{1} << p;
  }
  return mask;
}

bool matrix_is_real(const CoinMatrix& m) {
  for (const auto& z : m.entries()) {
    if (z.imag() != 0.0) return false;
  }
  return true;
}

struct AssignmentBuilder {
  const PortGraph* graph;
  std::vector<CoinMatrix> coins;
  std::unordered_map<std::uint32_t, std::uint32_t> negations;
  std::unordered_map<std::uint64_t, std::uint32_t> mask_ids;

  explicit AssignmentBuilder(const PortGraph& g) : graph(&g) {}

  std::uint32_t add(const CoinMatrix& m) {
    coins.push_back(m);
    return static_cast<std::uint32_t>(coins.size() - 1);
  }

  std::uint32_t negated_of(std::uint32_t id) {
    auto it = negations.find(id);
    if (it != negations.end()) return it->second;
    const std::uint32_t neg = add(coins[id].negated());
    negations[id] = neg;
    return neg;
  }

  std::uint32_t mask_coin(std::uint64_t mask) {
    auto it = mask_ids.find(mask);
    if (it != mask_ids.end()) return it->second;
    const std::uint32_t id = add(percolation_coin(graph->max_degree(), mask));
    mask_ids[mask] = id;
    return id;
  }
};

}  // namespace

CoinAssignment CoinAssignment::uniform(const PortGraph& graph,
                                       const CoinMatrix& default_coin,
                                       std::optional<std::size_t> marked) {
  if (default_coin.dim() != graph.max_degree()) {
    throw std::invalid_argument("coin dimension must equal the graph degree");
  }
  if (marked && (*marked >= graph.num_vertices() || !graph.vertex_present(*marked))) {
    throw std::invalid_argument("marked vertex absent from graph");
  }
  AssignmentBuilder builder(graph);
  const std::uint64_t full = graph.max_degree() == 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << graph.max_degree()) - 1;
  const std::uint32_t base = builder.add(default_coin);
  std::vector<std::uint32_t> index(graph.num_vertices());
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    const std::uint64_t mask = presence_mask(graph, v);
    std::uint32_t id = mask == full ? base : builder.mask_coin(mask);
    if (marked && v == *marked) id = builder.negated_of(id);
    index[v] = id;
  }

  CoinAssignment out;
  out.graph_ = &graph;
  out.coins_ = std::move(builder.coins);
  out.coin_index_ = std::move(index);
  out.marked_ = marked;
  out.all_real_ = true;
  for (const auto& m : out.coins_) {
    if (!matrix_is_real(m)) {
      out.all_real_ = false;
      break;
    }
  }
  return out;
}

CoinAssignment assemble_coins(const PortGraph& graph,
                              std::optional<std::size_t> marked,
                              std::optional<double> tunnelling_c) {
  if (tunnelling_c && graph.tunnel_count() == 0) {
    throw std::invalid_argument(
        "tunnelling parameter given for a graph without tunnelling ports");
  }
  const CoinMatrix base =
      tunnelling_c ? tunnelling_coin(graph.max_degree(), graph.tunnel_count(),
                                     *tunnelling_c)
                   : grover(graph.max_degree());
  return CoinAssignment::uniform(graph, base, marked);
}

}  // namespace qwalk

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwalk {

// Lattice families available to the experiment drivers. The *_from_hex
// variants carry the brick-wall vertical split that lets the tunnelling coin
// interpolate from the degree-3 (resp. degree-5) lattice up to the full
// square (cubic) lattice; their extra vertical ports are flagged tunnelling.
enum class LatticeFamily {
  kLine,
  kHex2d,
  kSquare2d,
  kSquareFromHex2d,
  kTriangular2d,
  kSquareDiag2d,
  kHex3d,
  kCubic3d,
  kCubicFromHex3d,
  kStacked2d,
  kSlab3d,
  kCubicDiag1,
  kCubicDiag2,
};

const char* family_name(LatticeFamily family);
std::optional<LatticeFamily> family_from_name(std::string_view name);

// Spatial dimension of the embedding (1, 2 or 3); equals the number of
// extents a LatticeSpec for the family must carry.
int family_dimension(LatticeFamily family);

struct LatticeSpec {
  LatticeFamily family = LatticeFamily::kSquare2d;
  std::vector<std::size_t> extents;  // side lengths: w [, h [, l]]
  bool periodic = true;
};

struct ArcRef {
  std::size_t vertex = 0;
  int port = 0;

  bool operator==(const ArcRef&) const = default;
};

// A vertex-and-port labelled graph. Every vertex owns max_degree() port
// slots; an arc is a (vertex, port) pair and the state of a walk lives on
// arcs. arc_pair() is the edge involution (the same physical edge seen from
// its other endpoint); landing_arc() is where a walker travelling out of a
// port comes to rest after one shift.
class PortGraph {
 public:
  std::size_t num_vertices() const noexcept { return num_vertices_; }
  int max_degree() const noexcept { return degree_; }
  // Number of tunnelling ports per vertex (0 on non-interpolating families).
  int tunnel_count() const noexcept { return tunnel_count_; }
  const LatticeSpec& lattice() const noexcept { return spec_; }

  std::size_t arc_count() const noexcept { return num_vertices_ * degree_; }
  std::size_t arc_index(std::size_t v, int p) const noexcept {
    return v * static_cast<std::size_t>(degree_) + static_cast<std::size_t>(p);
  }

  ArcRef arc_pair(std::size_t v, int p) const noexcept {
    const std::size_t a = arc_index(v, p);
    return {pair_vertex_[a], pair_port_[a]};
  }

  // Landing arc of the conditional shift: the same-direction port at the far
  // vertex, falling back to the far side of the traversed edge when that
  // port is absent (only possible on percolated lattices). Requires
  // port_present(v, p).
  ArcRef landing_arc(std::size_t v, int p) const noexcept {
    const std::size_t a = arc_index(v, p);
    const std::size_t far = pair_vertex_[a];
    const int cont = continue_port_[a];
    if (port_present_[far * static_cast<std::size_t>(degree_) +
                      static_cast<std::size_t>(cont)]) {
      return {far, cont};
    }
    return {far, pair_port_[a]};
  }

  bool vertex_present(std::size_t v) const noexcept { return present_[v] != 0; }
  bool port_present(std::size_t v, int p) const noexcept {
    return port_present_[arc_index(v, p)] != 0;
  }
  bool tunnelling_port(std::size_t v, int p) const noexcept {
    return tunnel_port_[arc_index(v, p)] != 0;
  }

  std::size_t present_vertex_count() const noexcept { return present_vertices_; }
  std::size_t present_arc_count() const noexcept { return present_arcs_; }

  // Vertex at the mid coordinates; the conventional marked vertex for sweeps
  // and ensembles.
  std::size_t center_vertex() const noexcept;

  std::string descriptor() const;  // e.g. "square2d 20x20"

 private:
  LatticeSpec spec_;
  std::size_t num_vertices_ = 0;
  int degree_ = 0;
  int tunnel_count_ = 0;
  std::vector<std::uint32_t> pair_vertex_;
  std::vector<std::uint8_t> pair_port_;
  std::vector<std::uint8_t> continue_port_;
  std::vector<std::uint8_t> tunnel_port_;
  std::vector<std::uint8_t> present_;
  std::vector<std::uint8_t> port_present_;
  std::size_t present_vertices_ = 0;
  std::size_t present_arcs_ = 0;

  void recount_presence();
  void validate() const;

  friend PortGraph build_lattice(const LatticeSpec&);
  friend PortGraph percolate_sites(const PortGraph&, const struct PercolationSpec&);
};

struct PercolationSpec {
  double site_probability = 1.0;
  std::uint64_t seed = 0;
  std::size_t marked_vertex = 0;  // always retained
};

PortGraph build_lattice(const LatticeSpec& spec);

// Site percolation: every vertex except the marked one is kept independently
// with the given probability; a port survives only when both endpoints do.
// Deterministic for a fixed seed.
PortGraph percolate_sites(const PortGraph& graph, const PercolationSpec& spec);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Breadth-first hop distances over present arcs; kUnreachable marks vertices
// outside the source's component.
std::vector<std::size_t> shortest_distances(const PortGraph& graph, std::size_t source);

// Debug dump, one line per arc in (vertex, port) order:
//   v p -> v' p' [T] [absent]
// where (v', p') is the arc pairing. Stable across runs.
std::string dump_graph(const PortGraph& graph);

}  // namespace qwalk

#include "qwalk/graph.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qwalk {

namespace {

struct FamilyInfo {
  const char* name;
  int dimension;
};

const FamilyInfo& info(LatticeFamily family) {
  static const FamilyInfo table[] = {
      {"line", 1},           {"hex2d", 2},          {"square2d", 2},
      {"square2d_from_hex", 2}, {"triangular2d", 2}, {"square_diag2d", 2},
      {"hex3d", 3},          {"cubic3d", 3},        {"cubic3d_from_hex", 3},
      {"stacked2d", 3},      {"slab3d", 3},         {"cubic_diag1", 3},
      {"cubic_diag2", 3},
  };
  return table[static_cast<int>(family)];
}

// One port slot of the family layout. Fixed ports carry a constant lattice
// offset; brick ports flip the sign of their axis offset with the parity of
// the vertex coordinate sum (brick-wall embedding) and pair with the same
// slot at the far vertex.
struct PortDef {
  std::array<int, 3> offset{0, 0, 0};
  int pair_port = 0;
  bool tunnelling = false;
  bool brick = false;
};

std::vector<PortDef> family_layout(LatticeFamily family, bool single_layer_slab) {
  using P = PortDef;
  const P xm{{-1, 0, 0}, 1, false, false};
  const P xp{{+1, 0, 0}, 0, false, false};
  const P ym{{0, -1, 0}, 3, false, false};
  const P yp{{0, +1, 0}, 2, false, false};
  const P zm{{0, 0, -1}, 5, false, false};
  const P zp{{0, 0, +1}, 4, false, false};

  switch (family) {
    case LatticeFamily::kLine:
      return {xm, xp};
    case LatticeFamily::kHex2d:
      return {xm, xp, P{{0, 1, 0}, 2, false, true}};
    case LatticeFamily::kSquare2d:
      return {xm, xp, ym, yp};
    case LatticeFamily::kSquareFromHex2d:
      // Brick vertical (slot 2) plus its parity complement as the tunnelling
      // port: the degree-3 lattice is the c=0 limit.
      return {xm, xp, P{{0, 1, 0}, 2, false, true}, P{{0, -1, 0}, 3, true, true}};
    case LatticeFamily::kTriangular2d:
      return {xm, xp, ym, yp,
              P{{+1, +1, 0}, 5, true, false}, P{{-1, -1, 0}, 4, true, false}};
    case LatticeFamily::kSquareDiag2d:
      return {xm, xp, ym, yp,
              P{{+1, +1, 0}, 5, false, false}, P{{-1, -1, 0}, 4, false, false},
              P{{-1, +1, 0}, 7, true, false},  P{{+1, -1, 0}, 6, true, false}};
    case LatticeFamily::kHex3d:
      return {xm, xp, ym, yp, P{{0, 0, 1}, 4, false, true}};
    case LatticeFamily::kCubic3d:
      return {xm, xp, ym, yp, zm, zp};
    case LatticeFamily::kCubicFromHex3d:
      return {xm, xp, ym, yp,
              P{{0, 0, 1}, 4, false, true}, P{{0, 0, -1}, 5, true, true}};
    case LatticeFamily::kStacked2d: {
      auto ports = std::vector<P>{xm, xp, ym, yp, zm, zp};
      ports[4].tunnelling = true;
      ports[5].tunnelling = true;
      return ports;
    }
    case LatticeFamily::kSlab3d:
      // A single layer has no transverse edges: it is the plain 2D lattice.
      if (single_layer_slab) return {xm, xp, ym, yp};
      return {xm, xp, ym, yp, zm, zp};
    case LatticeFamily::kCubicDiag1:
      return {xm, xp, ym, yp, zm, zp,
              P{{+1, +1, 0}, 7, true, false}, P{{-1, -1, 0}, 6, true, false},
              P{{-1, +1, 0}, 9, true, false}, P{{+1, -1, 0}, 8, true, false}};
    case LatticeFamily::kCubicDiag2:
      return {xm, xp, ym, yp, zm, zp,
              P{{+1, +1, 0}, 7, false, false},  P{{-1, -1, 0}, 6, false, false},
              P{{-1, +1, 0}, 9, false, false},  P{{+1, -1, 0}, 8, false, false},
              P{{+1, 0, +1}, 11, true, false},  P{{-1, 0, -1}, 10, true, false},
              P{{-1, 0, +1}, 13, true, false},  P{{+1, 0, -1}, 12, true, false}};
  }
  throw std::invalid_argument("unknown lattice family");
}

bool family_needs_even_sides(LatticeFamily family) {
  switch (family) {
    case LatticeFamily::kHex2d:
    case LatticeFamily::kSquareFromHex2d:
    case LatticeFamily::kHex3d:
    case LatticeFamily::kCubicFromHex3d:
      return true;
    default:
      return false;
  }
}

}  // namespace

const char* family_name(LatticeFamily family) { return info(family).name; }

int family_dimension(LatticeFamily family) { return info(family).dimension; }

std::optional<LatticeFamily> family_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(LatticeFamily::kCubicDiag2); ++i) {
    const auto family = static_cast<LatticeFamily>(i);
    if (name == info(family).name) return family;
  }
  return std::nullopt;
}

std::size_t PortGraph::center_vertex() const noexcept {
  const auto& e = spec_.extents;
  std::size_t v = 0;
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < e.size(); ++axis) {
    v += (e[axis] / 2) * stride;
    stride *= e[axis];
  }
  return v;
}

std::string PortGraph::descriptor() const {
  std::ostringstream out;
  out << family_name(spec_.family) << ' ';
  for (std::size_t i = 0; i < spec_.extents.size(); ++i) {
    if (i) out << 'x';
    out << spec_.extents[i];
  }
  if (!spec_.periodic) out << " open";
  return out.str();
}

void PortGraph::recount_presence() {
  present_vertices_ = 0;
  for (auto f : present_) present_vertices_ += f;
  present_arcs_ = 0;
  for (auto f : port_present_) present_arcs_ += f;
}

void PortGraph::validate() const {
  for (std::size_t v = 0; v < num_vertices_; ++v) {
    int tunnels = 0;
    for (int p = 0; p < degree_; ++p) {
      const ArcRef far = arc_pair(v, p);
      const ArcRef back = arc_pair(far.vertex, far.port);
      if (back.vertex != v || back.port != p) {
        throw std::logic_error("arc pairing is not an involution");
      }
      if (port_present(v, p) != port_present(far.vertex, far.port)) {
        throw std::logic_error("edge presence is not symmetric");
      }
      tunnels += tunnelling_port(v, p) ? 1 : 0;
    }
    if (tunnels != tunnel_count_) {
      throw std::logic_error("tunnelling port census mismatch");
    }
  }
}

PortGraph build_lattice(const LatticeSpec& spec) {
  const int dim = family_dimension(spec.family);
  if (static_cast<int>(spec.extents.size()) != dim) {
    throw std::invalid_argument("lattice extents do not match family dimension");
  }
  const bool single_layer =
      spec.family == LatticeFamily::kSlab3d && spec.extents.back() == 1;
  for (int axis = 0; axis < dim; ++axis) {
    const std::size_t side = spec.extents[axis];
    const bool last_slab_axis = single_layer && axis == dim - 1;
    if (side < 2 && !last_slab_axis) {
      throw std::invalid_argument("lattice extents must all be at least 2");
    }
    if (family_needs_even_sides(spec.family) && side % 2 != 0) {
      throw std::invalid_argument("brick-wall families require even side lengths");
    }
  }

  const auto ports = family_layout(spec.family, single_layer);
  const int degree = static_cast<int>(ports.size());
  int tunnel_count = 0;
  for (const auto& p : ports) tunnel_count += p.tunnelling ? 1 : 0;

  std::array<std::size_t, 3> ext{1, 1, 1};
  for (int axis = 0; axis < dim; ++axis) ext[axis] = spec.extents[axis];
  const int effective_dim = single_layer ? 2 : dim;

  std::size_t n = 1;
  for (int axis = 0; axis < effective_dim; ++axis) n *= ext[axis];

  PortGraph g;
  g.spec_ = spec;
  g.num_vertices_ = n;
  g.degree_ = degree;
  g.tunnel_count_ = tunnel_count;
  g.pair_vertex_.assign(n * degree, 0);
  g.pair_port_.assign(n * degree, 0);
  g.continue_port_.assign(n * degree, 0);
  g.tunnel_port_.assign(n * degree, 0);
  g.present_.assign(n, 1);
  g.port_present_.assign(n * degree, 1);

  std::array<std::size_t, 3> coord{0, 0, 0};
  for (std::size_t v = 0; v < n; ++v) {
    // mixed-radix coordinates of v
    std::size_t rem = v;
    for (int axis = 0; axis < effective_dim; ++axis) {
      coord[axis] = rem % ext[axis];
      rem /= ext[axis];
    }
    const bool even_parity = ((coord[0] + coord[1] + coord[2]) % 2) == 0;

    for (int p = 0; p < degree; ++p) {
      const PortDef& def = ports[p];
      const std::size_t a = g.arc_index(v, p);
      g.tunnel_port_[a] = def.tunnelling ? 1 : 0;

      std::array<int, 3> off = def.offset;
      if (def.brick && !even_parity) {
        for (auto& o : off) o = -o;
      }

      bool wrapped_out = false;
      std::array<std::size_t, 3> target = coord;
      for (int axis = 0; axis < effective_dim; ++axis) {
        if (off[axis] == 0) continue;
        const long signed_pos = static_cast<long>(coord[axis]) + off[axis];
        if (signed_pos < 0 || signed_pos >= static_cast<long>(ext[axis])) {
          if (!spec.periodic) {
            wrapped_out = true;
            break;
          }
          target[axis] = static_cast<std::size_t>(
              (signed_pos + static_cast<long>(ext[axis])) %
              static_cast<long>(ext[axis]));
        } else {
          target[axis] = static_cast<std::size_t>(signed_pos);
        }
      }

      if (wrapped_out) {
        // Open boundary: the slot exists but carries no edge.
        g.pair_vertex_[a] = static_cast<std::uint32_t>(v);
        g.pair_port_[a] = static_cast<std::uint8_t>(p);
        g.continue_port_[a] = static_cast<std::uint8_t>(p);
        g.port_present_[a] = 0;
        continue;
      }

      std::size_t tv = 0;
      std::size_t stride = 1;
      for (int axis = 0; axis < effective_dim; ++axis) {
        tv += target[axis] * stride;
        stride *= ext[axis];
      }
      const int pair_port = def.brick ? p : def.pair_port;
      g.pair_vertex_[a] = static_cast<std::uint32_t>(tv);
      g.pair_port_[a] = static_cast<std::uint8_t>(pair_port);
      // Direction-preserving continuation: same slot at the far vertex. For
      // brick ports that slot is the traversed edge itself (the walker
      // reverses; a degree-consistent vertical has no onward edge).
      g.continue_port_[a] = static_cast<std::uint8_t>(p);
    }
  }

  g.recount_presence();
  g.validate();
  return g;
}

PortGraph percolate_sites(const PortGraph& graph, const PercolationSpec& spec) {
  if (graph.present_vertex_count() != graph.num_vertices()) {
    throw std::invalid_argument("percolate_sites expects a fully present graph");
  }
  if (spec.marked_vertex >= graph.num_vertices()) {
    throw std::invalid_argument("marked vertex outside graph");
  }
  if (spec.site_probability < 0.0 || spec.site_probability > 1.0) {
    throw std::invalid_argument("site probability must lie in [0, 1]");
  }

  PortGraph g = graph;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (std::size_t v = 0; v < g.num_vertices_; ++v) {
    if (v == spec.marked_vertex) continue;  // the marked vertex always survives
    g.present_[v] = u01(rng) < spec.site_probability ? 1 : 0;
  }
  for (std::size_t v = 0; v < g.num_vertices_; ++v) {
    for (int p = 0; p < g.degree_; ++p) {
      const std::size_t a = g.arc_index(v, p);
      if (!g.port_present_[a]) continue;
      const std::size_t far = g.pair_vertex_[a];
      if (!g.present_[v] || !g.present_[far]) g.port_present_[a] = 0;
    }
  }
  g.recount_presence();
  return g;
}

std::vector<std::size_t> shortest_distances(const PortGraph& graph, std::size_t source) {
  if (source >= graph.num_vertices() || !graph.vertex_present(source)) {
    throw std::invalid_argument("distance source must be a present vertex");
  }
  std::vector<std::size_t> dist(graph.num_vertices(), kUnreachable);
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (int p = 0; p < graph.max_degree(); ++p) {
      if (!graph.port_present(v, p)) continue;
      const std::size_t far = graph.arc_pair(v, p).vertex;
      if (dist[far] != kUnreachable) continue;
      dist[far] = dist[v] + 1;
      frontier.push(far);
    }
  }
  return dist;
}

std::string dump_graph(const PortGraph& graph) {
  std::ostringstream out;
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    for (int p = 0; p < graph.max_degree(); ++p) {
      const ArcRef far = graph.arc_pair(v, p);
      out << v << ' ' << p << " -> " << far.vertex << ' ' << far.port;
      if (graph.tunnelling_port(v, p)) out << " T";
      if (!graph.port_present(v, p)) out << " absent";
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace qwalk

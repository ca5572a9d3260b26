#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace tsdec {

// A spacetime vertex of the decoding lattice: an X-stabilizer plaquette at
// checkerboard cell (x, y) with x + y even, observed at round t.
struct VertexId {
  int x = 0;
  int y = 0;
  int t = 0;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

enum class EdgeKind { SpaceLike, TimeLike };

// Distance-d rotated surface code with periodic boundaries in space and
// time, plus its (2+1)-dimensional decoding lattice.
//
// Geometry conventions (frozen; the wire format and tests depend on them):
//  - qubits sit on integer grid points (qx, qy), 0 <= qx, qy < d;
//  - X-plaquettes are the unit squares whose lower-left corner (x, y) has
//    x + y even; the plaquette at (x, y) holds qubits (x, y), (x+1, y),
//    (x, y+1), (x+1, y+1), all mod d;
//  - vertex addresses are time-major and row-major in space:
//    address = t * n_stab + rank(x, y), rows ordered by y;
//  - space-like edge (qubit a, round t) has id t * n_qubits + a;
//    time-like edge (v, t)->(v, t+1 mod d) has id n_space_edges + vid.
class CodeLattice {
 public:
  // d must be even and >= 4; throws std::invalid_argument otherwise.
  static CodeLattice build(int d);

  int d() const { return d_; }
  std::uint32_t n_qubits() const { return n_qubits_; }
  std::uint32_t n_stab() const { return n_stab_; }
  int n_rounds() const { return d_; }
  std::uint32_t n_vertices() const { return n_vertices_; }
  std::uint32_t n_space_edges() const { return n_space_edges_; }
  std::uint32_t n_time_edges() const { return n_vertices_; }
  std::uint32_t n_edges() const { return n_space_edges_ + n_vertices_; }

  // --- vertex addressing -------------------------------------------------
  std::uint32_t vertex_address(const VertexId& v) const;
  VertexId address_vertex(std::uint32_t a) const;  // throws on a >= V
  std::uint32_t cell_rank(int x, int y) const;     // rank within one round
  bool is_stab_cell(int x, int y) const { return ((x + y) & 1) == 0; }

  // --- qubits ------------------------------------------------------------
  std::uint32_t qubit_id(int qx, int qy) const { return static_cast<std::uint32_t>(qy * d_ + qx); }
  std::pair<int, int> qubit_coord(std::uint32_t q) const { return {static_cast<int>(q) % d_, static_cast<int>(q) / d_}; }
  // The two X-plaquette cells containing a qubit, as per-round vertex ranks.
  std::array<std::uint32_t, 2> qubit_stabs(std::uint32_t q) const { return qubit_stabs_[q]; }

  // --- edges ---------------------------------------------------------------
  bool is_space_edge(std::uint32_t e) const { return e < n_space_edges_; }
  std::uint32_t space_edge_id(std::uint32_t qubit, int t) const {
    return static_cast<std::uint32_t>(t) * n_qubits_ + qubit;
  }
  std::uint32_t time_edge_id(std::uint32_t vid) const { return n_space_edges_ + vid; }
  std::uint32_t qubit_of_space_edge(std::uint32_t e) const { return e % n_qubits_; }
  int round_of_space_edge(std::uint32_t e) const { return static_cast<int>(e / n_qubits_); }
  // Both boundary vertices of any edge.
  std::array<std::uint32_t, 2> edge_endpoints(std::uint32_t e) const { return edge_endpoints_[e]; }
  // The 6 edges incident to a vertex (4 space-like, 2 time-like).
  const std::array<std::uint32_t, 6>& incident_edges(std::uint32_t vid) const { return incident_edges_[vid]; }
  // The 4 space neighbors (same round) of a vertex.
  const std::array<std::uint32_t, 4>& space_neighbors(std::uint32_t vid) const { return space_neighbors_[vid]; }
  std::uint32_t time_neighbor(std::uint32_t vid, int dir) const;  // dir = +1 or -1

  // --- metric --------------------------------------------------------------
  // Shortest-path distance on the decoding lattice with unit edge weights:
  // min over spatial wraps of max(|dx|, |dy|), plus min(|dt|, d - |dt|).
  int distance(const VertexId& u, const VertexId& v) const;
  int distance(std::uint32_t u, std::uint32_t v) const;

  // Vertices within taxicab distance r of `center` (center included).
  // Exact also when the ball wraps around the torus.
  std::vector<std::uint32_t> ball_vertices(std::uint32_t center, int r) const;

  // Signed displacement of c to the representative in [-d/2, d/2]; a tie at
  // exactly d/2 resolves to +d/2.
  int wrap_displacement(int delta) const;

 private:
  CodeLattice() = default;

  int d_ = 0;
  std::uint32_t n_qubits_ = 0;
  std::uint32_t n_stab_ = 0;
  std::uint32_t n_vertices_ = 0;
  std::uint32_t n_space_edges_ = 0;

  std::vector<std::uint32_t> cell_rank_;               // d*d, ~0u on odd cells
  std::vector<std::pair<int, int>> rank_cell_;         // n_stab
  std::vector<std::array<std::uint32_t, 2>> qubit_stabs_;      // per qubit, per-round ranks
  std::vector<std::array<std::uint32_t, 2>> edge_endpoints_;   // per edge
  std::vector<std::array<std::uint32_t, 6>> incident_edges_;   // per vertex
  std::vector<std::array<std::uint32_t, 4>> space_neighbors_;  // per vertex
};

}  // namespace tsdec

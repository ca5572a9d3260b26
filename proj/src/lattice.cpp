#include "tsdec/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tsdec/errors.hpp"

namespace tsdec {

namespace {
int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

CodeLattice CodeLattice::build(int d) {
  if (d < 4 || d % 2 != 0) {
    throw std::invalid_argument("code distance must be an even integer >= 4, got " + std::to_string(d));
  }
  CodeLattice lat;
  lat.d_ = d;
  lat.n_qubits_ = static_cast<std::uint32_t>(d * d);
  lat.n_stab_ = static_cast<std::uint32_t>(d * d / 2);
  lat.n_vertices_ = lat.n_stab_ * static_cast<std::uint32_t>(d);
  lat.n_space_edges_ = lat.n_qubits_ * static_cast<std::uint32_t>(d);

  // Rank even-parity cells row-major (y outer, x inner).
  lat.cell_rank_.assign(lat.n_qubits_, ~0u);
  lat.rank_cell_.reserve(lat.n_stab_);
  std::uint32_t rank = 0;
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) {
      if (((x + y) & 1) == 0) {
        lat.cell_rank_[static_cast<std::size_t>(y) * d + x] = rank++;
        lat.rank_cell_.emplace_back(x, y);
      }
    }
  }

  // Each qubit belongs to exactly two X-plaquettes.
  lat.qubit_stabs_.resize(lat.n_qubits_);
  for (int qy = 0; qy < d; ++qy) {
    for (int qx = 0; qx < d; ++qx) {
      std::uint32_t q = lat.qubit_id(qx, qy);
      std::uint32_t a, b;
      if (((qx + qy) & 1) == 0) {
        a = lat.cell_rank(qx, qy);
        b = lat.cell_rank(mod(qx - 1, d), mod(qy - 1, d));
      } else {
        a = lat.cell_rank(mod(qx - 1, d), qy);
        b = lat.cell_rank(qx, mod(qy - 1, d));
      }
      lat.qubit_stabs_[q] = {a, b};
    }
  }

  // Edge endpoint table.
  lat.edge_endpoints_.resize(lat.n_edges());
  for (int t = 0; t < d; ++t) {
    for (std::uint32_t q = 0; q < lat.n_qubits_; ++q) {
      auto [a, b] = lat.qubit_stabs_[q];
      std::uint32_t e = lat.space_edge_id(q, t);
      lat.edge_endpoints_[e] = {static_cast<std::uint32_t>(t) * lat.n_stab_ + a,
                                static_cast<std::uint32_t>(t) * lat.n_stab_ + b};
    }
  }
  for (std::uint32_t v = 0; v < lat.n_vertices_; ++v) {
    std::uint32_t tnext = (v + lat.n_stab_) % lat.n_vertices_;
    lat.edge_endpoints_[lat.time_edge_id(v)] = {v, tnext};
  }

  // Incidence and space adjacency.
  lat.incident_edges_.assign(lat.n_vertices_, {});
  std::vector<int> fill(lat.n_vertices_, 0);
  for (std::uint32_t e = 0; e < lat.n_edges(); ++e) {
    for (std::uint32_t v : lat.edge_endpoints_[e]) {
      lat.incident_edges_[v][static_cast<std::size_t>(fill[v]++)] = e;
    }
  }
  for (std::uint32_t v = 0; v < lat.n_vertices_; ++v) {
    if (fill[v] != 6) {
      throw InvariantViolation("decoding-lattice vertex degree is not 6");
    }
  }
  lat.space_neighbors_.assign(lat.n_vertices_, {});
  for (std::uint32_t v = 0; v < lat.n_vertices_; ++v) {
    auto [x, y] = lat.rank_cell_[v % lat.n_stab_];
    int t = static_cast<int>(v / lat.n_stab_);
    int i = 0;
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        std::uint32_t r = lat.cell_rank(mod(x + sx, d), mod(y + sy, d));
        lat.space_neighbors_[v][static_cast<std::size_t>(i++)] =
            static_cast<std::uint32_t>(t) * lat.n_stab_ + r;
      }
    }
  }
  return lat;
}

std::uint32_t CodeLattice::cell_rank(int x, int y) const {
  return cell_rank_[static_cast<std::size_t>(y) * d_ + x];
}

std::uint32_t CodeLattice::vertex_address(const VertexId& v) const {
  return static_cast<std::uint32_t>(v.t) * n_stab_ + cell_rank(v.x, v.y);
}

VertexId CodeLattice::address_vertex(std::uint32_t a) const {
  if (a >= n_vertices_) {
    throw std::out_of_range("vertex address " + std::to_string(a) + " out of range (V = " +
                            std::to_string(n_vertices_) + ")");
  }
  auto [x, y] = rank_cell_[a % n_stab_];
  return VertexId{x, y, static_cast<int>(a / n_stab_)};
}

std::uint32_t CodeLattice::time_neighbor(std::uint32_t vid, int dir) const {
  std::uint32_t step = dir > 0 ? n_stab_ : n_vertices_ - n_stab_;
  return (vid + step) % n_vertices_;
}

int CodeLattice::wrap_displacement(int delta) const {
  int r = mod(delta, d_);
  return r > d_ / 2 ? r - d_ : r;
}

int CodeLattice::distance(const VertexId& u, const VertexId& v) const {
  int dx = std::abs(wrap_displacement(v.x - u.x));
  int dy = std::abs(wrap_displacement(v.y - u.y));
  int dt = std::abs(wrap_displacement(v.t - u.t));
  return std::max(dx, dy) + dt;
}

int CodeLattice::distance(std::uint32_t u, std::uint32_t v) const {
  auto [ux, uy] = rank_cell_[u % n_stab_];
  auto [vx, vy] = rank_cell_[v % n_stab_];
  int dx = std::abs(wrap_displacement(vx - ux));
  int dy = std::abs(wrap_displacement(vy - uy));
  int dt = std::abs(wrap_displacement(static_cast<int>(v / n_stab_) - static_cast<int>(u / n_stab_)));
  return std::max(dx, dy) + dt;
}

std::vector<std::uint32_t> CodeLattice::ball_vertices(std::uint32_t center, int r) const {
  std::vector<std::uint32_t> out;
  if (2 * r + 1 <= d_) {
    // Offsets map to distinct vertices; enumerate them directly.
    auto [cx, cy] = rank_cell_[center % n_stab_];
    int ct = static_cast<int>(center / n_stab_);
    for (int dt = -r; dt <= r; ++dt) {
      int s = r - std::abs(dt);
      int t = mod(ct + dt, d_);
      for (int dx = -s; dx <= s; ++dx) {
        for (int dy = -s; dy <= s; ++dy) {
          if (((dx + dy) & 1) != 0) continue;
          std::uint32_t rank = cell_rank(mod(cx + dx, d_), mod(cy + dy, d_));
          out.push_back(static_cast<std::uint32_t>(t) * n_stab_ + rank);
        }
      }
    }
    return out;
  }
  // Ball wraps: fall back to scanning all vertices with the exact metric.
  for (std::uint32_t v = 0; v < n_vertices_; ++v) {
    if (distance(center, v) <= r) out.push_back(v);
  }
  return out;
}

}  // namespace tsdec

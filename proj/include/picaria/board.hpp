#pragma once

// The generalized Picaria board for k stones per player on an s-sided
// polygon: s corners, s side midpoints and one center node.
//
// Slide edges join each midpoint to its two corners, consecutive midpoints
// to each other, and the center to every other node. Win lines are the s
// outer sides (corner, midpoint, corner) and the s diameters through the
// center. For s = 4 this is exactly the 3x3 board with king-move adjacency
// and the eight Tic-tac-toe lines.
//
// Node indices are the wire-notation order: corner0, mid0, corner1, mid1, ...,
// center for s != 4, and row-major 3x3 order for s = 4.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "picaria/errors.hpp"

namespace picaria {

// Node masks are 32-bit, one bit reserved.
inline constexpr int kMaxNodes = 31;
inline constexpr int kMaxSides = (kMaxNodes - 1) / 2;

enum class Role : std::uint8_t { corner, midpoint, center };

struct Node {
  Role role;
  int index;  // position within its role, 0 for the center

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  int a;  // a < b
  int b;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Line = std::array<int, 3>;  // ascending node indices

// perm[i] is the image of node i.
using Permutation = std::vector<int>;

struct Symmetry {
  std::string name;
  Permutation perm;
  bool is_rotation;
};

class BoardSpec {
 public:
  int k() const noexcept { return k_; }
  int s() const noexcept { return s_; }
  int node_count() const noexcept { return 2 * s_ + 1; }
  int center() const noexcept { return center_; }
  bool has_grid() const noexcept { return s_ == 4; }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Line> lines() const noexcept { return lines_; }
  std::span<const Symmetry> symmetries() const noexcept { return symmetries_; }

  // Ascending.
  std::span<const int> neighbors(int node) const { return neighbors_.at(node); }
  std::uint32_t neighbor_mask(int node) const { return neighbor_masks_.at(node); }
  std::span<const std::uint32_t> line_masks() const noexcept { return line_masks_; }

  bool adjacent(int a, int b) const { return (neighbor_masks_.at(a) >> b) & 1u; }

  friend bool operator==(const BoardSpec& l, const BoardSpec& r) { return l.k_ == r.k_ && l.s_ == r.s_; }

  friend BoardSpec build_board(int k, int s);

 private:
  int k_ = 0;
  int s_ = 0;
  int center_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Line> lines_;
  std::vector<Symmetry> symmetries_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::uint32_t> neighbor_masks_;
  std::vector<std::uint32_t> line_masks_;
};

namespace detail {

inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

// Polygon labelling: corner i -> 2i, midpoint i -> 2i+1, center -> 2s.
// For s = 4 the wire order is row-major on the 3x3 grid instead.
inline std::vector<int> polygon_to_wire(int s) {
  if (s == 4) return {0, 1, 2, 5, 8, 7, 6, 3, 4};
  std::vector<int> ids(2 * s + 1);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

}  // namespace detail

inline BoardSpec build_board(int k, int s) {
  if (s < 3 || s > kMaxSides)
    throw ParameterError("sides must be in [3, " + std::to_string(kMaxSides) + "], got " + std::to_string(s));
  if (k < 3) throw ParameterError("stones per player must be at least 3, got " + std::to_string(k));
  if (2 * k >= 2 * s + 1)
    throw ParameterError("2k must be less than the node count 2s+1 (k=" + std::to_string(k) +
                         ", s=" + std::to_string(s) + ")");

  const int n = 2 * s + 1;
  const auto wire = detail::polygon_to_wire(s);
  auto corner = [&](int i) { return wire[2 * (((i % s) + s) % s)]; };
  auto mid = [&](int i) { return wire[2 * (((i % s) + s) % s) + 1]; };
  const int center = wire[2 * s];

  BoardSpec b;
  b.k_ = k;
  b.s_ = s;
  b.center_ = center;
  b.nodes_.resize(n);
  for (int i = 0; i < s; ++i) {
    b.nodes_[corner(i)] = {Role::corner, i};
    b.nodes_[mid(i)] = {Role::midpoint, i};
  }
  b.nodes_[center] = {Role::center, 0};

  std::set<Edge> edges;
  auto add_edge = [&](int u, int v) { edges.insert({std::min(u, v), std::max(u, v)}); };
  for (int i = 0; i < s; ++i) {
    add_edge(corner(i), mid(i));
    add_edge(mid(i), corner(i + 1));
    add_edge(mid(i), mid(i + 1));
    add_edge(center, corner(i));
    add_edge(center, mid(i));
  }
  b.edges_.assign(edges.begin(), edges.end());

  std::set<Line> lines;
  auto add_line = [&](int u, int v, int w) {
    Line l{u, v, w};
    std::sort(l.begin(), l.end());
    lines.insert(l);
  };
  for (int i = 0; i < s; ++i) add_line(corner(i), mid(i), corner(i + 1));
  if (s % 2 == 0) {
    for (int i = 0; i < s / 2; ++i) {
      add_line(corner(i), center, corner(i + s / 2));
      add_line(mid(i), center, mid(i + s / 2));
    }
  } else {
    // Midpoint i sits at angle (i + 1/2) turns/s; the opposite vertex is a corner.
    for (int i = 0; i < s; ++i) add_line(mid(i), center, corner(i + (s + 1) / 2));
  }
  b.lines_.assign(lines.begin(), lines.end());

  b.neighbors_.assign(n, {});
  b.neighbor_masks_.assign(n, 0);
  for (const auto& e : b.edges_) {
    b.neighbors_[e.a].push_back(e.b);
    b.neighbors_[e.b].push_back(e.a);
    b.neighbor_masks_[e.a] |= 1u << e.b;
    b.neighbor_masks_[e.b] |= 1u << e.a;
  }
  for (auto& nb : b.neighbors_) std::sort(nb.begin(), nb.end());
  for (const auto& l : b.lines_) b.line_masks_.push_back((1u << l[0]) | (1u << l[1]) | (1u << l[2]));

  // Generators: rotation by one side and the reflection through corner 0.
  Permutation rotate(n), reflect(n);
  for (int i = 0; i < s; ++i) {
    rotate[corner(i)] = corner(i + 1);
    rotate[mid(i)] = mid(i + 1);
    reflect[corner(i)] = corner(-i);
    reflect[mid(i)] = mid(-i - 1);
  }
  rotate[center] = center;
  reflect[center] = center;

  Permutation identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::set<Permutation> group{identity};
  std::vector<Permutation> frontier{identity};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier)
      for (const auto* gen : {&rotate, &reflect}) {
        auto h = detail::compose(*gen, g);
        if (group.insert(h).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }

  // Order: rotations by the step they move corner 0, then reflections by the
  // corner they send corner 0 to.
  struct Classified {
    bool rotation;
    int step;
    Permutation perm;
  };
  std::vector<Classified> classified;
  for (const auto& g : group) {
    const int c0 = b.nodes_[g[corner(0)]].index;
    const int c1 = b.nodes_[g[corner(1)]].index;
    const bool rotation = (c0 + 1) % s == c1;
    classified.push_back({rotation, c0, g});
  }
  std::sort(classified.begin(), classified.end(), [](const auto& l, const auto& r) {
    if (l.rotation != r.rotation) return l.rotation;
    return l.step < r.step;
  });

  auto fixes = [](const Permutation& g, int node) { return g[node] == node; };
  for (const auto& c : classified) {
    std::string name;
    if (c.rotation) {
      if (c.step == 0)
        name = "e";
      else if ((360 * c.step) % s == 0)
        name = "R" + std::to_string(360 * c.step / s);
      else
        name = "R" + std::to_string(c.step) + "/" + std::to_string(s);
    } else if (s == 4) {
      // Axis names as seen on the 3x3 grid; D1 is the anti-diagonal.
      if (fixes(c.perm, 3) && fixes(c.perm, 5))
        name = "H";
      else if (fixes(c.perm, 1) && fixes(c.perm, 7))
        name = "V";
      else if (fixes(c.perm, 2) && fixes(c.perm, 6))
        name = "D1";
      else
        name = "D2";
    } else {
      for (int i = 0; i < s && name.empty(); ++i) {
        if (fixes(c.perm, corner(i))) name = "F-c" + std::to_string(i);
      }
      for (int i = 0; i < s && name.empty(); ++i) {
        if (fixes(c.perm, mid(i))) name = "F-m" + std::to_string(i);
      }
    }
    b.symmetries_.push_back({std::move(name), c.perm, c.rotation});
  }
  if (s == 4) {
    const std::vector<std::string> order{"e", "R90", "R180", "R270", "H", "V", "D1", "D2"};
    std::sort(b.symmetries_.begin(), b.symmetries_.end(), [&](const Symmetry& l, const Symmetry& r) {
      return std::find(order.begin(), order.end(), l.name) < std::find(order.begin(), order.end(), r.name);
    });
  }
  return b;
}

// Bijection between node indices and (row, column) cells of the 3x3 grid.
class GridMapping {
 public:
  std::pair<int, int> cell_of(int node) const { return {node / 3, node % 3}; }
  int node_at(int row, int col) const {
    if (row < 0 || row > 2 || col < 0 || col > 2) throw ParameterError("grid cell out of range");
    return 3 * row + col;
  }
};

inline GridMapping grid_mapping(const BoardSpec& spec) {
  if (!spec.has_grid()) throw ParameterError("grid mapping exists only for the four-sided board");
  return {};
}

}  // namespace picaria

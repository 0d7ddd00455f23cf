#pragma once

// Hand-rolled generators and small brute-force oracles used across the suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "picaria/board.hpp"
#include "picaria/position.hpp"

namespace picaria::testkit {

// Random board satisfying every Position invariant, reachable or not.
inline Position random_valid_position(const BoardSpec& spec, std::mt19937_64& rng) {
  const int n = spec.node_count();
  const int k = spec.k();
  for (;;) {
    std::uniform_int_distribution<int> placed_dist(0, 2 * k);
    const int placed = placed_dist(rng);
    const int xs = (placed + 1) / 2;
    const int os = placed / 2;
    std::vector<int> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    Cells cells(n);
    for (int i = 0; i < xs; ++i) cells[nodes[i]] = Cell::x;
    for (int i = 0; i < os; ++i) cells[nodes[xs + i]] = Cell::o;
    Player mover;
    if (placed < 2 * k)
      mover = xs == os ? Player::x : Player::o;
    else
      mover = std::bernoulli_distribution(0.5)(rng) ? Player::x : Player::o;
    Position p(cells, mover);
    try {
      check_position(spec, p);
      return p;
    } catch (const InvalidPositionError&) {
      // double win; draw again
    }
  }
}

// Random position reached by legal play from the empty board.
inline Position random_playout(const BoardSpec& spec, std::mt19937_64& rng, int max_plies) {
  Position p = initial_position(spec);
  std::uniform_int_distribution<int> len(0, max_plies);
  const int plies = len(rng);
  for (int i = 0; i < plies && !is_terminal(spec, p); ++i) {
    const auto moves = legal_moves(spec, p);
    if (moves.empty()) break;
    p = apply_move(spec, p, moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
  }
  return p;
}

// The 3x3 board built directly from king moves and the eight Tic-tac-toe lines.
struct KingGraph {
  std::set<std::pair<int, int>> edges;
  std::set<std::vector<int>> lines;
};

inline KingGraph king_graph_3x3() {
  KingGraph g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          const int r2 = r + dr, c2 = c + dc;
          if ((dr || dc) && r2 >= 0 && r2 < 3 && c2 >= 0 && c2 < 3) {
            const int a = 3 * r + c, b = 3 * r2 + c2;
            g.edges.insert({std::min(a, b), std::max(a, b)});
          }
        }
  for (int i = 0; i < 3; ++i) {
    g.lines.insert({3 * i, 3 * i + 1, 3 * i + 2});
    g.lines.insert({i, i + 3, i + 6});
  }
  g.lines.insert({0, 4, 8});
  g.lines.insert({2, 4, 6});
  return g;
}

// Full boards (k of each) where both players hold a line, counted up to
// symmetry by brute force over every arrangement.
inline std::uint64_t brute_double_win_orbits(const BoardSpec& spec) {
  const int n = spec.node_count();
  const int k = spec.k();
  std::vector<Cell> cells(n, Cell::empty);
  for (int i = 0; i < k; ++i) cells[n - 2 * k + i] = Cell::x;
  for (int i = 0; i < k; ++i) cells[n - k + i] = Cell::o;
  auto holds = [&](const Cells& b, Cell c) {
    for (const auto& l : spec.lines())
      if (b[l[0]] == c && b[l[1]] == c && b[l[2]] == c) return true;
    return false;
  };
  std::set<Cells> reps;
  do {
    Cells b(n);
    for (int i = 0; i < n; ++i) b[i] = cells[i];
    if (!holds(b, Cell::x) || !holds(b, Cell::o)) continue;
    Cells best = b;
    for (const auto& g : spec.symmetries()) best = std::min(best, b.permuted(g.perm));
    reps.insert(best);
  } while (std::next_permutation(cells.begin(), cells.end()));
  return reps.size();
}

}  // namespace picaria::testkit

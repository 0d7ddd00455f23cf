#pragma once

// Positions, moves and the rules of play for both phases.
//
// A Position is a cell array plus the side to move. Phase is derived: the
// game is in placement while fewer than 2k stones are on the board, then
// stones slide along board edges. X always starts.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "picaria/board.hpp"
#include "picaria/errors.hpp"

namespace picaria {

enum class Cell : std::uint8_t { empty = 0, x = 1, o = 2 };
enum class Player : std::uint8_t { x = 1, o = 2 };
enum class Phase : std::uint8_t { placement, sliding };

constexpr Player opponent(Player p) noexcept { return p == Player::x ? Player::o : Player::x; }
constexpr Cell stone(Player p) noexcept { return static_cast<Cell>(p); }
constexpr char to_char(Player p) noexcept { return p == Player::x ? 'x' : 'o'; }
constexpr char to_char(Cell c) noexcept { return c == Cell::empty ? '.' : c == Cell::x ? 'x' : 'o'; }

// Fixed-capacity cell array. Ordering is lexicographic in node order with
// empty < x < o.
class Cells {
 public:
  Cells() = default;
  explicit Cells(int size) : size_(static_cast<std::uint8_t>(size)) {}

  int size() const noexcept { return size_; }
  Cell operator[](int i) const noexcept { return cells_[i]; }
  Cell& operator[](int i) noexcept { return cells_[i]; }
  const Cell* begin() const noexcept { return cells_.data(); }
  const Cell* end() const noexcept { return cells_.data() + size_; }

  int count(Cell c) const noexcept { return static_cast<int>(std::count(begin(), end(), c)); }

  std::uint32_t mask(Cell c) const noexcept {
    std::uint32_t m = 0;
    for (int i = 0; i < size_; ++i)
      if (cells_[i] == c) m |= 1u << i;
    return m;
  }

  // Image under a node permutation: result[g[i]] = cells[i].
  Cells permuted(const Permutation& g) const {
    Cells out(size_);
    for (int i = 0; i < size_; ++i) out.cells_[g[i]] = cells_[i];
    return out;
  }

  // Two bits per cell, node 0 most significant, so numeric order matches
  // the lexicographic order above.
  std::uint64_t packed() const noexcept {
    std::uint64_t key = 0;
    for (int i = 0; i < size_; ++i) key = (key << 2) | static_cast<std::uint64_t>(cells_[i]);
    return key;
  }

  static Cells unpack(std::uint64_t key, int size) {
    Cells out(size);
    for (int i = size - 1; i >= 0; --i) {
      out.cells_[i] = static_cast<Cell>(key & 3u);
      key >>= 2;
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < size_; ++i) s += to_char(cells_[i]);
    return s;
  }

  friend bool operator==(const Cells& l, const Cells& r) noexcept {
    return l.size_ == r.size_ && std::equal(l.begin(), l.end(), r.begin());
  }
  friend std::strong_ordering operator<=>(const Cells& l, const Cells& r) noexcept {
    if (auto c = l.size_ <=> r.size_; c != 0) return c;
    for (int i = 0; i < l.size_; ++i)
      if (auto c = l.cells_[i] <=> r.cells_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  std::array<Cell, kMaxNodes> cells_{};
  std::uint8_t size_ = 0;
};

class Position {
 public:
  Position() = default;
  // Unchecked; use check_position() or parse_notation() on untrusted input.
  Position(Cells cells, Player to_move) : cells_(cells), to_move_(to_move) {}

  const Cells& cells() const noexcept { return cells_; }
  Player to_move() const noexcept { return to_move_; }
  Cell operator[](int node) const noexcept { return cells_[node]; }

  int stones() const noexcept { return cells_.size() - cells_.count(Cell::empty); }

  // Cells then mover; x sorts before o.
  std::uint64_t key() const noexcept {
    return (cells_.packed() << 1) | (to_move_ == Player::o ? 1u : 0u);
  }
  static Position from_key(std::uint64_t key, int size) {
    return {Cells::unpack(key >> 1, size), (key & 1u) ? Player::o : Player::x};
  }

  friend bool operator==(const Position&, const Position&) = default;

 private:
  Cells cells_;
  Player to_move_ = Player::x;
};

enum class MoveKind : std::uint8_t { place, slide };

struct Move {
  MoveKind kind = MoveKind::place;
  int from = -1;  // -1 for placements
  int to = -1;

  static Move place(int node) { return {MoveKind::place, -1, node}; }
  static Move slide(int from, int to) { return {MoveKind::slide, from, to}; }

  Move mapped(const Permutation& g) const {
    return kind == MoveKind::place ? place(g[to]) : slide(g[from], g[to]);
  }

  std::string to_string() const {
    return kind == MoveKind::place ? "place " + std::to_string(to)
                                   : "slide " + std::to_string(from) + " " + std::to_string(to);
  }

  friend auto operator<=>(const Move&, const Move&) = default;
};

inline Phase phase(const BoardSpec& spec, const Position& p) noexcept {
  return p.stones() < 2 * spec.k() ? Phase::placement : Phase::sliding;
}

inline Position initial_position(const BoardSpec& spec) { return {Cells(spec.node_count()), Player::x}; }

namespace detail {

inline bool has_line(const BoardSpec& spec, std::uint32_t stones) {
  for (auto m : spec.line_masks())
    if ((stones & m) == m) return true;
  return false;
}

}  // namespace detail

// The player holding a complete line, if any. Boards where both players hold
// a line cannot arise in play and are rejected.
enum class Winner : std::uint8_t { none = 0, x = 1, o = 2 };

inline Winner winner(const BoardSpec& spec, const Position& p) {
  const bool x = detail::has_line(spec, p.cells().mask(Cell::x));
  const bool o = detail::has_line(spec, p.cells().mask(Cell::o));
  if (x && o) throw InvalidPositionError("both players hold a line: " + p.cells().to_string());
  return x ? Winner::x : o ? Winner::o : Winner::none;
}

inline bool is_terminal(const BoardSpec& spec, const Position& p) { return winner(spec, p) != Winner::none; }

// Throws InvalidPositionError when p breaks an invariant for this board.
inline void check_position(const BoardSpec& spec, const Position& p) {
  const auto& c = p.cells();
  if (c.size() != spec.node_count())
    throw InvalidPositionError("expected " + std::to_string(spec.node_count()) + " cells, got " +
                               std::to_string(c.size()));
  const int xs = c.count(Cell::x);
  const int os = c.count(Cell::o);
  if (xs > spec.k() || os > spec.k())
    throw InvalidPositionError("more than " + std::to_string(spec.k()) + " stones for one player");
  if (xs + os < 2 * spec.k()) {
    if (xs != os && xs != os + 1) throw InvalidPositionError("placement counts out of turn order");
    const Player expected = xs == os ? Player::x : Player::o;
    if (p.to_move() != expected) throw InvalidPositionError("wrong side to move during placement");
  }
  winner(spec, p);
}

// Placements in ascending node order, or slides ordered by (from, to). Empty
// only when the mover is blockaded.
inline std::vector<Move> legal_moves(const BoardSpec& spec, const Position& p) {
  if (is_terminal(spec, p)) throw TerminalPositionError("no moves in a finished game");
  std::vector<Move> moves;
  const int n = spec.node_count();
  if (phase(spec, p) == Phase::placement) {
    for (int i = 0; i < n; ++i)
      if (p[i] == Cell::empty) moves.push_back(Move::place(i));
    return moves;
  }
  const Cell mine = stone(p.to_move());
  for (int from = 0; from < n; ++from) {
    if (p[from] != mine) continue;
    for (int to : spec.neighbors(from))
      if (p[to] == Cell::empty) moves.push_back(Move::slide(from, to));
  }
  return moves;
}

inline bool is_legal(const BoardSpec& spec, const Position& p, const Move& m) {
  const int n = spec.node_count();
  if (m.to < 0 || m.to >= n || p[m.to] != Cell::empty) return false;
  if (is_terminal(spec, p)) return false;
  if (m.kind == MoveKind::place) return phase(spec, p) == Phase::placement;
  return phase(spec, p) == Phase::sliding && m.from >= 0 && m.from < n &&
         p[m.from] == stone(p.to_move()) && spec.adjacent(m.from, m.to);
}

// Skips the legality check; for hot loops over legal_moves() output.
inline Position apply_unchecked(const Position& p, const Move& m) {
  Cells c = p.cells();
  if (m.kind == MoveKind::slide) c[m.from] = Cell::empty;
  c[m.to] = stone(p.to_move());
  return {c, opponent(p.to_move())};
}

inline Position apply_move(const BoardSpec& spec, const Position& p, const Move& m) {
  if (!is_legal(spec, p, m))
    throw IllegalMoveError("illegal move '" + m.to_string() + "' for " + to_char(p.to_move()));
  return apply_unchecked(p, m);
}

inline Position transformed(const Position& p, const Permutation& g) {
  return {p.cells().permuted(g), p.to_move()};
}

struct Canonical {
  Position position;
  int symmetry;  // index into spec.symmetries() mapping the input onto position
};

// Orbit representative: the symmetry image with the smallest cell array.
inline Canonical canonicalize(const BoardSpec& spec, const Position& p) {
  const auto syms = spec.symmetries();
  Cells best = p.cells();
  int best_index = 0;
  for (int i = 1; i < static_cast<int>(syms.size()); ++i) {
    Cells img = p.cells().permuted(syms[i].perm);
    if (img < best) {
      best = img;
      best_index = i;
    }
  }
  return {{best, p.to_move()}, best_index};
}

inline std::uint64_t canonical_key(const BoardSpec& spec, const Position& p) {
  std::uint64_t best = ~std::uint64_t{0};
  const std::uint64_t turn = p.to_move() == Player::o ? 1u : 0u;
  for (const auto& g : spec.symmetries()) best = std::min(best, (p.cells().permuted(g.perm).packed() << 1) | turn);
  return best;
}

// Wire notation: one of '.', 'x', 'o' per node in node order, ':', mover.
inline std::string to_notation(const Position& p) { return p.cells().to_string() + ":" + to_char(p.to_move()); }

inline Position parse_notation(std::string_view text, const BoardSpec& spec) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon + 2 != text.size())
    throw NotationError("expected '<cells>:<x|o>', got '" + std::string(text) + "'");
  const auto board = text.substr(0, colon);
  if (static_cast<int>(board.size()) != spec.node_count())
    throw NotationError("expected " + std::to_string(spec.node_count()) + " cells, got " +
                        std::to_string(board.size()));
  Cells cells(spec.node_count());
  for (int i = 0; i < spec.node_count(); ++i) {
    switch (board[i]) {
      case '.': cells[i] = Cell::empty; break;
      case 'x': cells[i] = Cell::x; break;
      case 'o': cells[i] = Cell::o; break;
      default: throw NotationError(std::string("bad cell character '") + board[i] + "'");
    }
  }
  const char mover = text.back();
  if (mover != 'x' && mover != 'o') throw NotationError(std::string("bad mover '") + mover + "'");
  Position p(cells, mover == 'x' ? Player::x : Player::o);
  check_position(spec, p);
  return p;
}

}  // namespace picaria

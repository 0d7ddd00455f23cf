#pragma once

// Exact solution of the two-phase game graph by retrograde analysis.
//
// The reachable canonical positions are collected by a forward closure from
// the empty board. Finished games and blockaded movers are seeded as LOSS(0);
// values then propagate backwards in non-decreasing depth order. A parent of
// a LOSS(d) becomes WIN(d+1) the first time it is reached; a parent becomes
// LOSS(d+1) once its last undecided child is labelled WIN(d). Whatever is
// never labelled is a draw. Placement edges only point forward, so both
// phases share the one fixed point.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "picaria/board.hpp"
#include "picaria/errors.hpp"
#include "picaria/game_value.hpp"
#include "picaria/position.hpp"

namespace picaria {

struct ValueCounts {
  std::uint64_t win = 0;
  std::uint64_t loss = 0;
  std::uint64_t draw = 0;

  std::uint64_t total() const noexcept { return win + loss + draw; }
  friend bool operator==(const ValueCounts&, const ValueCounts&) = default;
};

// Canonical position key -> value, sorted by key. Immutable once built.
class SolveTable {
 public:
  SolveTable(BoardSpec spec, std::vector<std::pair<std::uint64_t, GameValue>> entries)
      : spec_(std::move(spec)) {
    std::sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    keys_.reserve(entries.size());
    values_.reserve(entries.size());
    for (const auto& [key, value] : entries) {
      if (!keys_.empty() && keys_.back() == key) throw Error("duplicate solve table key");
      keys_.push_back(key);
      values_.push_back(value);
      switch (value.outcome) {
        case Outcome::win: ++counts_.win; break;
        case Outcome::loss: ++counts_.loss; break;
        case Outcome::draw: ++counts_.draw; break;
      }
    }
  }

  const BoardSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return keys_.size(); }
  std::span<const std::uint64_t> keys() const noexcept { return keys_; }
  std::span<const GameValue> values() const noexcept { return values_; }
  const ValueCounts& counts() const noexcept { return counts_; }

  // Lookup by canonical key; nullptr when absent.
  const GameValue* find(std::uint64_t canonical) const noexcept {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), canonical);
    if (it == keys_.end() || *it != canonical) return nullptr;
    return &values_[static_cast<std::size_t>(it - keys_.begin())];
  }

  friend bool operator==(const SolveTable& l, const SolveTable& r) {
    return l.spec_ == r.spec_ && l.keys_ == r.keys_ && l.values_ == r.values_;
  }

 private:
  BoardSpec spec_;
  std::vector<std::uint64_t> keys_;
  std::vector<GameValue> values_;
  ValueCounts counts_;
};

namespace detail {

// Forward closure over canonical positions, children stored in CSR form.
struct CanonicalGraph {
  std::vector<std::uint64_t> keys;
  std::vector<std::uint32_t> child_begin;  // size keys.size() + 1
  std::vector<std::uint32_t> children;
  std::vector<bool> terminal;
};

inline CanonicalGraph explore_canonical(const BoardSpec& spec) {
  CanonicalGraph g;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto intern = [&](std::uint64_t key) {
    auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(g.keys.size()));
    if (inserted) g.keys.push_back(key);
    return it->second;
  };
  intern(canonical_key(spec, initial_position(spec)));
  g.child_begin.push_back(0);
  const int n = spec.node_count();
  std::vector<std::uint32_t> kids;
  for (std::size_t i = 0; i < g.keys.size(); ++i) {
    const Position p = Position::from_key(g.keys[i], n);
    const bool done = is_terminal(spec, p);
    g.terminal.push_back(done);
    if (!done) {
      kids.clear();
      for (const auto& m : legal_moves(spec, p)) kids.push_back(intern(canonical_key(spec, apply_unchecked(p, m))));
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      g.children.insert(g.children.end(), kids.begin(), kids.end());
    }
    g.child_begin.push_back(static_cast<std::uint32_t>(g.children.size()));
  }
  return g;
}

}  // namespace detail

inline SolveTable solve(const BoardSpec& spec) {
  const auto g = detail::explore_canonical(spec);
  const std::size_t n = g.keys.size();

  std::vector<std::uint32_t> parent_begin(n + 1, 0);
  for (auto c : g.children) ++parent_begin[c + 1];
  for (std::size_t i = 0; i < n; ++i) parent_begin[i + 1] += parent_begin[i];
  std::vector<std::uint32_t> parents(g.children.size());
  {
    auto fill = parent_begin;
    for (std::uint32_t p = 0; p < n; ++p)
      for (auto j = g.child_begin[p]; j < g.child_begin[p + 1]; ++j) parents[fill[g.children[j]]++] = p;
  }

  std::vector<std::optional<GameValue>> value(n);
  std::vector<std::uint32_t> undecided(n);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t i = 0; i < n; ++i) {
    undecided[i] = g.child_begin[i + 1] - g.child_begin[i];
    if (g.terminal[i] || undecided[i] == 0) {
      value[i] = GameValue::loss(0);
      queue.push_back(i);
    }
  }

  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    const GameValue cv = *value[c];
    for (auto j = parent_begin[c]; j < parent_begin[c + 1]; ++j) {
      const auto p = parents[j];
      if (value[p]) continue;
      if (cv.is_loss()) {
        value[p] = GameValue::win(cv.depth + 1);
        queue.push_back(p);
      } else if (--undecided[p] == 0) {
        value[p] = GameValue::loss(cv.depth + 1);
        queue.push_back(p);
      }
    }
  }

  std::vector<std::pair<std::uint64_t, GameValue>> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.emplace_back(g.keys[i], value[i].value_or(GameValue::draw()));
  return SolveTable(spec, std::move(entries));
}

inline GameValue value(const SolveTable& table, const Position& p) {
  if (const auto* v = table.find(canonical_key(table.spec(), p))) return *v;
  throw UnknownPositionError("position not reachable: " + to_notation(p));
}

struct RankedMove {
  Move move;
  GameValue after;  // value of the resulting position, for the opponent
};

// Best first for the mover: wins by ascending depth, draws, losses by
// descending depth. Ties keep legal_moves() order. Empty if blockaded.
inline std::vector<RankedMove> best_moves(const SolveTable& table, const Position& p) {
  const auto& spec = table.spec();
  std::vector<RankedMove> ranked;
  for (const auto& m : legal_moves(spec, p)) ranked.push_back({m, value(table, apply_unchecked(p, m))});
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedMove& l, const RankedMove& r) {
    return preference(l.after.from_parent()) > preference(r.after.from_parent());
  });
  return ranked;
}

// Checks one entry against the minimax recurrence over its children. Returns
// a description of the violation, or nullopt when the entry is consistent.
inline std::optional<std::string> consistency_violation(const SolveTable& table, std::size_t entry) {
  const auto& spec = table.spec();
  const Position p = Position::from_key(table.keys()[entry], spec.node_count());
  const GameValue v = table.values()[entry];
  const std::string at = to_notation(p) + " " + v.to_string() + ": ";
  if (v.is_win() && v.depth % 2 != 1) return at + "win depth must be odd";
  if (v.is_loss() && v.depth % 2 != 0) return at + "loss depth must be even";
  if (v.is_draw() && v.depth != 0) return at + "draw carries a depth";

  if (is_terminal(spec, p)) {
    if (v != GameValue::loss(0)) return at + "finished game must be LOSS(0)";
    return std::nullopt;
  }
  const auto moves = legal_moves(spec, p);
  if (moves.empty()) {
    if (v != GameValue::loss(0)) return at + "blockaded mover must be LOSS(0)";
    return std::nullopt;
  }

  std::optional<int> quickest_loss;
  std::optional<int> slowest_win;
  bool any_draw = false;
  bool all_win = true;
  for (const auto& m : moves) {
    const auto* cv = table.find(canonical_key(spec, apply_unchecked(p, m)));
    if (!cv) return at + "child missing after " + m.to_string();
    if (cv->is_loss()) quickest_loss = std::min<int>(quickest_loss.value_or(cv->depth), cv->depth);
    if (cv->is_win()) slowest_win = std::max<int>(slowest_win.value_or(cv->depth), cv->depth);
    if (cv->is_draw()) any_draw = true;
    all_win = all_win && cv->is_win();
  }
  switch (v.outcome) {
    case Outcome::win:
      if (!quickest_loss || *quickest_loss != v.depth - 1) return at + "no child at LOSS(depth-1) as the quickest loss";
      break;
    case Outcome::loss:
      if (!all_win || *slowest_win != v.depth - 1) return at + "children must all be wins, the slowest at depth-1";
      break;
    case Outcome::draw:
      if (quickest_loss || !any_draw) return at + "draw needs no losing child and a drawn child";
      break;
  }
  return std::nullopt;
}

struct ReachStats {
  std::uint64_t canonical_placement = 0;
  std::uint64_t canonical_sliding = 0;
  std::uint64_t raw_placement = 0;
  std::uint64_t raw_sliding = 0;
  std::uint64_t canonical_terminal = 0;
  // Every board with k stones each, no symmetry reduction, no turn flag.
  std::uint64_t sliding_boards_raw = 0;
  // Every valid sliding position (reachable or not) modulo symmetry, with
  // the turn flag. Absent when the board count exceeds the enumeration guard.
  std::optional<std::uint64_t> sliding_positions_canonical;
};

namespace detail {

inline std::uint64_t multinomial(int n, int a, int b) {
  // n! / (a! b! (n-a-b)!) as C(n, a) * C(n - a, b)
  auto choose = [](int m, int r) {
    std::uint64_t c = 1;
    for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(m - r + i) / static_cast<std::uint64_t>(i);
    return c;
  };
  return choose(n, a) * choose(n - a, b);
}

}  // namespace detail

inline std::vector<Position> reachable_positions(const BoardSpec& spec) {
  const auto g = detail::explore_canonical(spec);
  std::vector<Position> out;
  out.reserve(g.keys.size());
  for (auto key : g.keys) out.push_back(Position::from_key(key, spec.node_count()));
  std::sort(out.begin(), out.end(), [](const Position& l, const Position& r) { return l.key() < r.key(); });
  return out;
}

inline ReachStats reachable_states(const BoardSpec& spec, std::uint64_t enumeration_guard = 10'000'000) {
  ReachStats st;
  const int n = spec.node_count();
  const int k = spec.k();

  const auto g = detail::explore_canonical(spec);
  for (std::size_t i = 0; i < g.keys.size(); ++i) {
    const Position p = Position::from_key(g.keys[i], n);
    (phase(spec, p) == Phase::placement ? st.canonical_placement : st.canonical_sliding) += 1;
    if (g.terminal[i]) ++st.canonical_terminal;
  }

  // Raw closure, no symmetry reduction.
  std::unordered_map<std::uint64_t, bool> seen;
  std::vector<Position> stack{initial_position(spec)};
  seen.emplace(stack.back().key(), true);
  while (!stack.empty()) {
    const Position p = stack.back();
    stack.pop_back();
    (phase(spec, p) == Phase::placement ? st.raw_placement : st.raw_sliding) += 1;
    if (is_terminal(spec, p)) continue;
    for (const auto& m : legal_moves(spec, p)) {
      const Position c = apply_unchecked(p, m);
      if (seen.emplace(c.key(), true).second) stack.push_back(c);
    }
  }

  st.sliding_boards_raw = detail::multinomial(n, k, k);
  if (st.sliding_boards_raw <= enumeration_guard) {
    std::vector<Cell> cells(n, Cell::empty);
    for (int i = 0; i < k; ++i) cells[n - 2 * k + i] = Cell::x;
    for (int i = 0; i < k; ++i) cells[n - k + i] = Cell::o;
    std::uint64_t orbits = 0;
    do {
      Cells board(n);
      for (int i = 0; i < n; ++i) board[i] = cells[i];
      const bool both = detail::has_line(spec, board.mask(Cell::x)) && detail::has_line(spec, board.mask(Cell::o));
      if (both) continue;
      bool smallest = true;
      for (const auto& sym : spec.symmetries())
        if (board.permuted(sym.perm) < board) {
          smallest = false;
          break;
        }
      if (smallest) ++orbits;
    } while (std::next_permutation(cells.begin(), cells.end()));
    st.sliding_positions_canonical = 2 * orbits;
  }
  return st;
}

// Upper bound on raw (unreduced) positions for a (k, s) game, used to decide
// whether an instance is small enough to attempt.
inline std::uint64_t raw_state_bound(int k, int s) {
  const int n = 2 * s + 1;
  std::uint64_t total = 0;
  for (int placed = 0; placed < 2 * k; ++placed) total += detail::multinomial(n, (placed + 1) / 2, placed / 2);
  return total + 2 * detail::multinomial(n, k, k);
}

}  // namespace picaria

#pragma once

// Reference solver used to cross-check solve(). It shares nothing with the
// retrograde path beyond the rules: raw (unreduced) states, an ordered map
// for the state index, and synchronous value iteration until nothing
// changes. After round r exactly the positions of depth <= r are labelled,
// so the fixed point carries the same depths as the retrograde labelling.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "picaria/board.hpp"
#include "picaria/game_value.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

namespace picaria {

struct OracleResult {
  SolveTable table;  // keyed by canonical position
  std::uint64_t raw_states = 0;
  int rounds = 0;
};

inline OracleResult oracle_solve_detailed(const BoardSpec& spec) {
  std::map<std::uint64_t, std::size_t> index;
  std::vector<Position> states;
  std::vector<std::vector<std::size_t>> children;

  auto visit = [&](const Position& p) {
    auto [it, inserted] = index.emplace(p.key(), states.size());
    if (inserted) states.push_back(p);
    return it->second;
  };
  visit(initial_position(spec));
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<std::size_t> kids;
    const Position p = states[i];
    if (winner(spec, p) == Winner::none)
      for (const auto& m : legal_moves(spec, p)) kids.push_back(visit(apply_move(spec, p, m)));
    children.push_back(std::move(kids));
  }

  const std::size_t n = states.size();
  std::vector<std::optional<GameValue>> current(n), next(n);
  int rounds = 0;
  for (bool changed = true; changed; ++rounds) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<GameValue> v;
      if (winner(spec, states[i]) != Winner::none || children[i].empty()) {
        v = GameValue::loss(0);
      } else {
        std::optional<int> quickest_loss;
        bool all_win = true;
        int slowest_win = 0;
        for (auto c : children[i]) {
          const auto& cv = current[c];
          if (cv && cv->is_loss()) quickest_loss = quickest_loss ? std::min<int>(*quickest_loss, cv->depth) : cv->depth;
          if (cv && cv->is_win())
            slowest_win = std::max<int>(slowest_win, cv->depth);
          else
            all_win = false;
        }
        if (quickest_loss)
          v = GameValue::win(*quickest_loss + 1);
        else if (all_win)
          v = GameValue::loss(slowest_win + 1);
      }
      next[i] = v;
      if (v != current[i]) changed = true;
    }
    std::swap(current, next);
  }

  std::map<std::uint64_t, GameValue> by_canonical;
  for (std::size_t i = 0; i < n; ++i) {
    const GameValue v = current[i].value_or(GameValue::draw());
    const auto key = canonicalize(spec, states[i]).position.key();
    auto [it, inserted] = by_canonical.emplace(key, v);
    if (!inserted && it->second != v)
      throw Error("oracle: symmetric positions disagree at " + to_notation(states[i]));
  }
  std::vector<std::pair<std::uint64_t, GameValue>> entries(by_canonical.begin(), by_canonical.end());
  return {SolveTable(spec, std::move(entries)), n, rounds};
}

inline SolveTable oracle_solve(const BoardSpec& spec) { return oracle_solve_detailed(spec).table; }

}  // namespace picaria

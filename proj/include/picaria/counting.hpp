#pragma once

// Orbit counting for boards with a fixed stone profile under the board's
// dihedral group. Burnside: #orbits = (1/|G|) * sum over g of |Fix(g)|,
// where a board fixed by g is constant on every cycle of g.

#include <cstdint>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "picaria/board.hpp"
#include "picaria/errors.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

namespace picaria {

// Stones of each colour; the remaining nodes are empty.
struct Profile {
  int x = 0;
  int o = 0;
};

struct OrbitReport {
  int k = 0;
  int s = 0;
  Profile profile;
  int group_order = 0;
  std::vector<std::string> element_names;
  std::vector<std::uint64_t> fix_counts;
  std::uint64_t orbit_count_raw = 0;
  std::uint64_t excluded_orbits = 0;  // boards where both players hold a line
  std::uint64_t orbit_count = 0;
  std::uint64_t position_graph_size = 0;  // orbit_count with the turn flag

  std::uint64_t fix_sum() const {
    std::uint64_t sum = 0;
    for (auto f : fix_counts) sum += f;
    return sum;
  }
};

inline std::vector<int> cycle_lengths(const Permutation& g) {
  std::vector<int> lengths;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(g[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

// Boards with the given profile left unchanged by g: colourings of g's
// cycles, one colour per cycle, whose totals match the profile.
inline std::uint64_t fixed_boards(const Permutation& g, Profile profile) {
  const int n = static_cast<int>(g.size());
  const int empties = n - profile.x - profile.o;
  if (profile.x < 0 || profile.o < 0 || empties < 0) return 0;
  // ways[x][o]: colourings of the cycles seen so far using x crosses and o noughts
  std::vector<std::vector<std::uint64_t>> ways(profile.x + 1, std::vector<std::uint64_t>(profile.o + 1, 0));
  ways[0][0] = 1;
  int covered = 0;
  for (int len : cycle_lengths(g)) {
    auto next = std::vector<std::vector<std::uint64_t>>(profile.x + 1, std::vector<std::uint64_t>(profile.o + 1, 0));
    for (int x = 0; x <= profile.x; ++x)
      for (int o = 0; o <= profile.o; ++o) {
        const auto w = ways[x][o];
        if (w == 0) continue;
        if (covered - x - o + len <= empties) next[x][o] += w;
        if (x + len <= profile.x) next[x + len][o] += w;
        if (o + len <= profile.o) next[x][o + len] += w;
      }
    ways = std::move(next);
    covered += len;
  }
  return ways[profile.x][profile.o];
}

struct DoubleWinReport {
  std::uint64_t orbits = 0;
  std::vector<Cells> representatives;  // canonical, ascending
};

// Boards with the profile on which both players hold a complete line.
inline DoubleWinReport count_double_win_orbits(const BoardSpec& spec, Profile profile) {
  DoubleWinReport report;
  const int n = spec.node_count();
  if (profile.x < 3 || profile.o < 3 || profile.x + profile.o > n) return report;

  std::set<Cells> canonical;
  const auto lines = spec.lines();
  for (const auto& lx : lines)
    for (const auto& lo : lines) {
      Cells base(n);
      bool overlap = false;
      for (int v : lx) base[v] = Cell::x;
      for (int v : lo) {
        if (base[v] != Cell::empty) overlap = true;
        base[v] = Cell::o;
      }
      if (overlap) continue;
      // Fill the remaining stones over the free nodes in every way.
      std::vector<int> free;
      for (int i = 0; i < n; ++i)
        if (base[i] == Cell::empty) free.push_back(i);
      std::vector<Cell> fill(free.size(), Cell::empty);
      const int xs = profile.x - 3;
      const int os = profile.o - 3;
      for (int i = 0; i < xs; ++i) fill[fill.size() - xs - os + i] = Cell::x;
      for (int i = 0; i < os; ++i) fill[fill.size() - os + i] = Cell::o;
      do {
        Cells board = base;
        for (std::size_t i = 0; i < free.size(); ++i) board[free[i]] = fill[i];
        Cells best = board;
        for (const auto& g : spec.symmetries()) best = std::min(best, board.permuted(g.perm));
        canonical.insert(best);
      } while (std::next_permutation(fill.begin(), fill.end()));
    }
  report.orbits = canonical.size();
  report.representatives.assign(canonical.begin(), canonical.end());
  return report;
}

inline DoubleWinReport count_double_win_orbits(const BoardSpec& spec) {
  return count_double_win_orbits(spec, {spec.k(), spec.k()});
}

inline OrbitReport burnside_orbits(const BoardSpec& spec, Profile profile) {
  const int n = spec.node_count();
  if (profile.x < 0 || profile.o < 0 || profile.x + profile.o > n)
    throw ParameterError("profile does not fit on " + std::to_string(n) + " nodes");
  OrbitReport r;
  r.k = spec.k();
  r.s = spec.s();
  r.profile = profile;
  r.group_order = static_cast<int>(spec.symmetries().size());
  for (const auto& g : spec.symmetries()) {
    r.element_names.push_back(g.name);
    r.fix_counts.push_back(fixed_boards(g.perm, profile));
  }
  const auto sum = r.fix_sum();
  if (sum % static_cast<std::uint64_t>(r.group_order) != 0) throw Error("fixed-point sum not divisible by |G|");
  r.orbit_count_raw = sum / static_cast<std::uint64_t>(r.group_order);
  r.excluded_orbits = count_double_win_orbits(spec, profile).orbits;
  r.orbit_count = r.orbit_count_raw - r.excluded_orbits;
  r.position_graph_size = 2 * r.orbit_count;
  return r;
}

inline OrbitReport burnside_orbits(const BoardSpec& spec) { return burnside_orbits(spec, {spec.k(), spec.k()}); }

// Brute force: walk every board with the profile and count the ones that are
// the smallest member of their orbit.
inline std::uint64_t enumerate_orbits(const BoardSpec& spec, Profile profile, std::uint64_t guard = 10'000'000) {
  const int n = spec.node_count();
  if (profile.x < 0 || profile.o < 0 || profile.x + profile.o > n)
    throw ParameterError("profile does not fit on " + std::to_string(n) + " nodes");
  const auto boards = detail::multinomial(n, profile.x, profile.o);
  if (boards > guard)
    throw SizeGuardError(std::to_string(boards) + " boards exceeds the enumeration guard of " + std::to_string(guard));
  std::vector<Cell> cells(n, Cell::empty);
  for (int i = 0; i < profile.x; ++i) cells[n - profile.x - profile.o + i] = Cell::x;
  for (int i = 0; i < profile.o; ++i) cells[n - profile.o + i] = Cell::o;
  std::uint64_t orbits = 0;
  do {
    Cells board(n);
    for (int i = 0; i < n; ++i) board[i] = cells[i];
    bool smallest = true;
    for (const auto& g : spec.symmetries())
      if (board.permuted(g.perm) < board) {
        smallest = false;
        break;
      }
    orbits += smallest ? 1 : 0;
  } while (std::next_permutation(cells.begin(), cells.end()));
  return orbits;
}

inline std::string to_text(const OrbitReport& r) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(22) << label << value << '\n';
  };
  row("board", "k=" + std::to_string(r.k) + " s=" + std::to_string(r.s));
  row("profile", "x=" + std::to_string(r.profile.x) + " o=" + std::to_string(r.profile.o) +
                     " empty=" + std::to_string(2 * r.s + 1 - r.profile.x - r.profile.o));
  row("group order", std::to_string(r.group_order));
  for (std::size_t i = 0; i < r.fix_counts.size(); ++i)
    row("Fix(" + r.element_names[i] + ")", std::to_string(r.fix_counts[i]));
  row("sum Fix", std::to_string(r.fix_sum()));
  row("orbits", std::to_string(r.orbit_count_raw));
  row("double-win orbits", std::to_string(r.excluded_orbits));
  row("orbits (valid)", std::to_string(r.orbit_count));
  row("position graph", std::to_string(r.position_graph_size));
  return out.str();
}

}  // namespace picaria

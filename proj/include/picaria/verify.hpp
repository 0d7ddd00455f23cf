#pragma once

// Replayable proof fixtures: a start position, a move sequence, and claims
// about positions along the way that are checked against a solve table.
//
// Fixture text format ('#' starts a comment, blank lines are ignored):
//
//   fixture <name>
//   anchor <free text naming the argument the line comes from>
//   start <notation>
//   [x|o] place <node>
//   [x|o] slide <from> <to>
//   expect <start|end|N> value-is <W|L|D>
//   expect <start|end|N> value-is-not <W|L|D>
//   expect <start|end|N> returns-to-start
//   expect <start|end|N> terminal-win-by <x|o>
//   expect <start|end|N> depth-at-most <plies>
//   end
//
// N names the position after N moves. The optional player prefix on a move
// line must match the side to move when the line is replayed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "picaria/builtin_fixtures_data.hpp"
#include "picaria/errors.hpp"
#include "picaria/game_value.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

namespace picaria {

enum class ClaimKind { value_is, value_is_not, returns_to_start, terminal_win_by, depth_at_most };

struct Claim {
  ClaimKind kind = ClaimKind::value_is;
  std::optional<int> at;  // moves replayed before the check; nullopt = all of them
  Outcome outcome = Outcome::draw;
  Player player = Player::x;
  int depth = 0;

  std::string to_string() const {
    std::string where = at ? (*at == 0 ? "start" : std::to_string(*at)) : "end";
    switch (kind) {
      case ClaimKind::value_is: return where + " value-is " + outcome_char(outcome);
      case ClaimKind::value_is_not: return where + " value-is-not " + outcome_char(outcome);
      case ClaimKind::returns_to_start: return where + " returns-to-start";
      case ClaimKind::terminal_win_by: return where + " terminal-win-by " + to_char(player);
      case ClaimKind::depth_at_most: return where + " depth-at-most " + std::to_string(depth);
    }
    return where;
  }
};

struct FixtureMove {
  std::optional<Player> player;
  Move move;
};

struct ProofFixture {
  std::string name;
  std::string anchor;
  std::string start;
  std::vector<FixtureMove> moves;
  std::vector<Claim> claims;
  int line = 0;  // where the record starts in its source text
};

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw FixtureError("line " + std::to_string(line) + ": expected a number, got '" + s + "'");
}

inline Outcome parse_outcome(const std::string& s, int line) {
  if (s == "W") return Outcome::win;
  if (s == "L") return Outcome::loss;
  if (s == "D") return Outcome::draw;
  throw FixtureError("line " + std::to_string(line) + ": expected W, L or D, got '" + s + "'");
}

inline Player parse_player(const std::string& s, int line) {
  if (s == "x") return Player::x;
  if (s == "o") return Player::o;
  throw FixtureError("line " + std::to_string(line) + ": expected x or o, got '" + s + "'");
}

}  // namespace detail

inline std::vector<ProofFixture> parse_fixtures(std::string_view text) {
  std::vector<ProofFixture> out;
  std::optional<ProofFixture> cur;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string_view line = std::string_view(raw).substr(0, hash);
    auto w = detail::split_words(line);
    if (w.empty()) continue;
    auto fail = [&](const std::string& why) -> FixtureError {
      return FixtureError("line " + std::to_string(lineno) + ": " + why);
    };

    if (w[0] == "fixture") {
      if (cur) throw fail("fixture '" + cur->name + "' is missing 'end'");
      if (w.size() != 2) throw fail("expected 'fixture <name>'");
      cur = ProofFixture{};
      cur->name = w[1];
      cur->line = lineno;
      continue;
    }
    if (!cur) throw fail("'" + w[0] + "' outside a fixture record");

    if (w[0] == "end") {
      if (cur->start.empty()) throw fail("fixture '" + cur->name + "' has no start position");
      out.push_back(std::move(*cur));
      cur.reset();
    } else if (w[0] == "anchor") {
      const auto pos = line.find("anchor") + 6;
      auto rest = std::string(line.substr(pos));
      rest.erase(0, rest.find_first_not_of(" \t"));
      rest.erase(rest.find_last_not_of(" \t\r") + 1);
      cur->anchor = rest;
    } else if (w[0] == "start") {
      if (w.size() != 2) throw fail("expected 'start <notation>'");
      cur->start = w[1];
    } else if (w[0] == "expect") {
      if (w.size() < 3) throw fail("expected 'expect <at> <kind> [arg]'");
      Claim c;
      if (w[1] == "start")
        c.at = 0;
      else if (w[1] != "end")
        c.at = detail::parse_int(w[1], lineno);
      const auto& kind = w[2];
      const bool needs_arg = kind != "returns-to-start";
      if (w.size() != (needs_arg ? 4u : 3u)) throw fail("wrong number of words for '" + kind + "'");
      if (kind == "value-is") {
        c.kind = ClaimKind::value_is;
        c.outcome = detail::parse_outcome(w[3], lineno);
      } else if (kind == "value-is-not") {
        c.kind = ClaimKind::value_is_not;
        c.outcome = detail::parse_outcome(w[3], lineno);
      } else if (kind == "returns-to-start") {
        c.kind = ClaimKind::returns_to_start;
      } else if (kind == "terminal-win-by") {
        c.kind = ClaimKind::terminal_win_by;
        c.player = detail::parse_player(w[3], lineno);
      } else if (kind == "depth-at-most") {
        c.kind = ClaimKind::depth_at_most;
        c.depth = detail::parse_int(w[3], lineno);
      } else {
        throw fail("unknown claim '" + kind + "'");
      }
      cur->claims.push_back(c);
    } else {
      FixtureMove fm;
      std::size_t i = 0;
      if (w[0] == "x" || w[0] == "o") {
        fm.player = detail::parse_player(w[0], lineno);
        i = 1;
      }
      if (i < w.size() && w[i] == "place" && w.size() == i + 2) {
        fm.move = Move::place(detail::parse_int(w[i + 1], lineno));
      } else if (i < w.size() && w[i] == "slide" && w.size() == i + 3) {
        fm.move = Move::slide(detail::parse_int(w[i + 1], lineno), detail::parse_int(w[i + 2], lineno));
      } else {
        throw fail("unrecognised line '" + std::string(line) + "'");
      }
      cur->moves.push_back(fm);
    }
  }
  if (cur) throw FixtureError("fixture '" + cur->name + "' is missing 'end'");
  return out;
}

inline std::vector<ProofFixture> builtin_fixtures() { return parse_fixtures(detail::kBuiltinFixtureText); }

struct ClaimResult {
  Claim claim;
  bool passed = false;
  std::string detail;
};

struct ReplayReport {
  std::string name;
  std::string anchor;
  std::vector<ClaimResult> claims;

  bool passed() const {
    return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.passed; });
  }
};

// Replays the fixture on the table's board and checks every claim. Throws
// FixtureError when the fixture itself cannot be replayed.
inline ReplayReport replay(const SolveTable& table, const ProofFixture& f) {
  const auto& spec = table.spec();
  auto authoring = [&](const std::string& why) { return FixtureError("fixture '" + f.name + "': " + why); };

  std::vector<Position> line;
  try {
    line.push_back(parse_notation(f.start, spec));
  } catch (const Error& e) {
    throw authoring(std::string("bad start: ") + e.what());
  }
  for (std::size_t i = 0; i < f.moves.size(); ++i) {
    const auto& fm = f.moves[i];
    const Position& p = line.back();
    if (fm.player && *fm.player != p.to_move())
      throw authoring("move " + std::to_string(i + 1) + " is marked for " + to_char(*fm.player) + " but " +
                      to_char(p.to_move()) + " is to move");
    try {
      line.push_back(apply_move(spec, p, fm.move));
    } catch (const Error& e) {
      throw authoring("move " + std::to_string(i + 1) + " (" + fm.move.to_string() + ") from " + to_notation(p) +
                      ": " + e.what());
    }
  }

  ReplayReport report{f.name, f.anchor, {}};
  for (const auto& c : f.claims) {
    const int at = c.at.value_or(static_cast<int>(f.moves.size()));
    if (at < 0 || at >= static_cast<int>(line.size()))
      throw authoring("claim '" + c.to_string() + "' refers past the end of the line");
    const Position& p = line[static_cast<std::size_t>(at)];
    ClaimResult r{c, false, {}};

    // Value-based claims with the engine's choice as a counterexample.
    auto with_value = [&](auto&& check) {
      const auto* v = table.find(canonical_key(spec, p));
      if (!v) {
        r.detail = to_notation(p) + " is not in the table";
        return;
      }
      r.passed = check(*v);
      r.detail = to_notation(p) + " is " + v->to_string();
      if (!r.passed && !is_terminal(spec, p)) {
        const auto ranked = best_moves(table, p);
        if (!ranked.empty())
          r.detail += "; engine plays " + ranked.front().move.to_string() + " -> " + ranked.front().after.to_string();
      }
    };

    switch (c.kind) {
      case ClaimKind::value_is: with_value([&](GameValue v) { return v.outcome == c.outcome; }); break;
      case ClaimKind::value_is_not: with_value([&](GameValue v) { return v.outcome != c.outcome; }); break;
      case ClaimKind::depth_at_most:
        with_value([&](GameValue v) { return !v.is_draw() && v.depth <= c.depth; });
        break;
      case ClaimKind::returns_to_start: {
        const auto a = canonicalize(spec, line.front()).position;
        const auto b = canonicalize(spec, p).position;
        r.passed = a == b;
        r.detail = to_notation(p) + (r.passed ? " matches " : " differs from ") + to_notation(line.front()) +
                   " up to symmetry";
        break;
      }
      case ClaimKind::terminal_win_by: {
        const auto w = winner(spec, p);
        r.passed = w == static_cast<Winner>(c.player);
        r.detail = to_notation(p) + (w == Winner::none ? " has no line" : std::string(" won by ") +
                                                                             (w == Winner::x ? "x" : "o"));
        break;
      }
    }
    report.claims.push_back(std::move(r));
  }
  return report;
}

}  // namespace picaria

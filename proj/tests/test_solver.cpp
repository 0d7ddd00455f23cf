#include <gtest/gtest.h>

#include <random>

#include "picaria/board.hpp"
#include "picaria/oracle.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"
#include "support/generators.hpp"

using namespace picaria;

namespace {

const SolveTable& picaria_table() {
  static const SolveTable t = solve(build_board(3, 4));
  return t;
}

GameValue V(const std::string& text) {
  const auto& t = picaria_table();
  return value(t, parse_notation(text, t.spec()));
}

}  // namespace

TEST(Solver, RootIsDraw) { EXPECT_EQ(V(".........:x"), GameValue::draw()); }

TEST(Solver, NamedPositions) {
  EXPECT_EQ(V("..o.xoxox:x"), GameValue::win(3));
  EXPECT_FALSE(V("..ooxxx.o:x").is_win());
  EXPECT_FALSE(V("..xxooo.x:o").is_loss());
  EXPECT_TRUE(V(".x.oxox.o:o").is_loss());
  EXPECT_TRUE(V("xo.ox.xo.:x").is_loss());
  EXPECT_TRUE(V("xo.oox.x.:x").is_loss());
  EXPECT_EQ(V("xxxoo....:o"), GameValue::loss(0));
}

TEST(Solver, UnknownPosition) {
  // A finished game with the winner to move never arises in play.
  const auto& t = picaria_table();
  const Position p(parse_notation("xxxoo....:o", t.spec()).cells(), Player::x);
  EXPECT_THROW(value(t, p), UnknownPositionError);
}

TEST(Solver, BestMovesOrdering) {
  const auto& t = picaria_table();
  const auto& b = t.spec();
  const auto root = best_moves(t, initial_position(b));
  ASSERT_EQ(root.size(), 9u);
  EXPECT_TRUE(root.front().after.is_draw());

  const auto race = best_moves(t, parse_notation("..o.xoxox:x", b));
  ASSERT_FALSE(race.empty());
  EXPECT_TRUE(race.front().after.is_loss());
  EXPECT_EQ(race.front().after, GameValue::loss(2));

  for (const auto& r : best_moves(t, parse_notation("xo.oox.x.:x", b))) EXPECT_TRUE(r.after.is_win());

  for (std::size_t i = 0; i + 1 < root.size(); ++i)
    EXPECT_GE(preference(root[i].after.from_parent()), preference(root[i + 1].after.from_parent()));
  EXPECT_THROW(best_moves(t, parse_notation("xxxoo....:o", b)), TerminalPositionError);
}

TEST(Solver, BestMovesTieBreakKeepsGenerationOrder) {
  const auto& t = picaria_table();
  const auto ranked = best_moves(t, initial_position(t.spec()));
  for (std::size_t i = 0; i + 1 < ranked.size(); ++i)
    if (ranked[i].after == ranked[i + 1].after) EXPECT_LT(ranked[i].move, ranked[i + 1].move);
}

TEST(Solver, FamilyRootValues) {
  for (int s : {3, 5, 6, 7}) {
    const auto t = solve(build_board(3, s));
    const auto v = value(t, initial_position(t.spec()));
    EXPECT_TRUE(v.is_win()) << "s=" << s << " " << v.to_string();
  }
}

TEST(Solver, TableCountsAreConsistent) {
  const auto& t = picaria_table();
  EXPECT_EQ(t.counts().total(), t.size());
  EXPECT_EQ(t.size(), reachable_positions(t.spec()).size());
}

TEST(Solver, ReachableStatistics) {
  const auto b = build_board(3, 4);
  const auto st = reachable_states(b);
  EXPECT_EQ(st.sliding_boards_raw, 1680u);
  ASSERT_TRUE(st.sliding_positions_canonical.has_value());
  EXPECT_EQ(*st.sliding_positions_canonical, 450u);
  EXPECT_EQ(st.canonical_placement + st.canonical_sliding, picaria_table().size());
  EXPECT_LE(st.canonical_sliding, *st.sliding_positions_canonical);
  EXPECT_GT(st.raw_placement, st.canonical_placement);
  EXPECT_LE(st.raw_placement + st.raw_sliding, raw_state_bound(3, 4));
}

TEST(Solver, DoubleWinBoardsNeverReached) {
  const auto b = build_board(3, 4);
  for (const auto& p : reachable_positions(b)) {
    const bool x = detail::has_line(b, p.cells().mask(Cell::x));
    const bool o = detail::has_line(b, p.cells().mask(Cell::o));
    EXPECT_FALSE(x && o) << to_notation(p);
  }
}

TEST(Oracle, MatchesRetrogradeSolver) {
  for (int s : {3, 4, 5, 6}) {
    const auto b = build_board(3, s);
    const auto fast = solve(b);
    const auto slow = oracle_solve_detailed(b);
    EXPECT_EQ(fast.counts(), slow.table.counts()) << "s=" << s;
    EXPECT_TRUE(fast == slow.table) << "s=" << s;
    EXPECT_GE(slow.raw_states, fast.size());
  }
}

// Whole-table properties on the four-sided board.
TEST(SolverProperty, MinimaxConsistencyEverywhere) {
  const auto& t = picaria_table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto why = consistency_violation(t, i);
    EXPECT_FALSE(why.has_value()) << *why;
  }
}

TEST(SolverProperty, SymmetryInvariance) {
  const auto& t = picaria_table();
  const auto& b = t.spec();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto p = Position::from_key(t.keys()[i], b.node_count());
    for (const auto& g : b.symmetries()) EXPECT_EQ(value(t, transformed(p, g.perm)), t.values()[i]);
  }
}

TEST(SolverProperty, DepthParity) {
  for (const auto& v : picaria_table().values()) {
    if (v.is_win()) EXPECT_EQ(v.depth % 2, 1);
    if (v.is_loss()) EXPECT_EQ(v.depth % 2, 0);
    if (v.is_draw()) EXPECT_EQ(v.depth, 0);
  }
}

TEST(SolverProperty, NoBlockadeOnFourSidedBoard) {
  const auto b = build_board(3, 4);
  for (const auto& p : reachable_positions(b))
    if (!is_terminal(b, p)) EXPECT_FALSE(legal_moves(b, p).empty()) << to_notation(p);
}

TEST(SolverProperty, RandomPlayoutsAreInTable) {
  std::mt19937_64 rng(7);
  const auto& t = picaria_table();
  for (int i = 0; i < 500; ++i) {
    const auto p = testkit::random_playout(t.spec(), rng, 40);
    EXPECT_NE(t.find(canonical_key(t.spec(), p)), nullptr) << to_notation(p);
  }
}

TEST(SolverProperty, ConsistencyOnGeneralizedBoards) {
  for (int s : {3, 5}) {
    const auto t = solve(build_board(3, s));
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto why = consistency_violation(t, i);
      EXPECT_FALSE(why.has_value()) << *why;
    }
  }
}

TEST(SolverProperty, SolveIsDeterministic) {
  const auto b = build_board(3, 5);
  EXPECT_TRUE(solve(b) == solve(b));
}

TEST(GameValue, Basics) {
  EXPECT_EQ(GameValue::win(3).to_string(), "WIN(3)");
  EXPECT_EQ(GameValue::loss(0).to_string(), "LOSS(0)");
  EXPECT_EQ(GameValue::draw().to_string(), "DRAW");
  EXPECT_EQ(GameValue::loss(2).from_parent(), GameValue::win(3));
  EXPECT_EQ(GameValue::win(1).from_parent(), GameValue::loss(2));
  EXPECT_GT(preference(GameValue::win(1)), preference(GameValue::win(3)));
  EXPECT_GT(preference(GameValue::win(99)), preference(GameValue::draw()));
  EXPECT_GT(preference(GameValue::draw()), preference(GameValue::loss(40)));
  EXPECT_GT(preference(GameValue::loss(4)), preference(GameValue::loss(2)));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "picaria/board.hpp"
#include "support/generators.hpp"

using namespace picaria;

namespace {

std::set<std::pair<int, int>> edge_set(const BoardSpec& b) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : b.edges()) out.insert({e.a, e.b});
  return out;
}

std::set<Line> line_set(const BoardSpec& b) { return {b.lines().begin(), b.lines().end()}; }

Line image(const Line& l, const Permutation& g) {
  Line out{g[l[0]], g[l[1]], g[l[2]]};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Board, SizesAcrossTheFamily) {
  for (int s = 3; s <= kMaxSides; ++s) {
    const auto b = build_board(3, s);
    EXPECT_EQ(b.node_count(), 2 * s + 1);
    EXPECT_EQ(static_cast<int>(b.edges().size()), 5 * s) << "s=" << s;
    EXPECT_EQ(static_cast<int>(b.lines().size()), 2 * s) << "s=" << s;
    EXPECT_EQ(static_cast<int>(b.symmetries().size()), 2 * s) << "s=" << s;
  }
}

TEST(Board, ExampleCounts) {
  const auto b4 = build_board(3, 4);
  EXPECT_EQ(b4.node_count(), 9);
  EXPECT_EQ(b4.edges().size(), 20u);
  EXPECT_EQ(b4.lines().size(), 8u);
  EXPECT_EQ(b4.symmetries().size(), 8u);
  const auto b3 = build_board(3, 3);
  EXPECT_EQ(b3.node_count(), 7);
  EXPECT_EQ(b3.edges().size(), 15u);
  EXPECT_EQ(b3.lines().size(), 6u);
  const auto b7 = build_board(3, 7);
  EXPECT_EQ(b7.node_count(), 15);
  EXPECT_EQ(b7.edges().size(), 35u);
  EXPECT_EQ(b7.lines().size(), 14u);
  EXPECT_EQ(b7.symmetries().size(), 14u);
}

TEST(Board, RolesAndDegrees) {
  for (int s = 3; s <= 9; ++s) {
    const auto b = build_board(3, s);
    std::map<Role, int> roles;
    int degree_sum = 0;
    for (int i = 0; i < b.node_count(); ++i) {
      const auto role = b.nodes()[i].role;
      ++roles[role];
      const int deg = static_cast<int>(b.neighbors(i).size());
      degree_sum += deg;
      switch (role) {
        case Role::center: EXPECT_EQ(deg, 2 * s); break;
        case Role::corner: EXPECT_EQ(deg, 3); break;
        case Role::midpoint: EXPECT_EQ(deg, 5); break;
      }
    }
    EXPECT_EQ(roles[Role::corner], s);
    EXPECT_EQ(roles[Role::midpoint], s);
    EXPECT_EQ(roles[Role::center], 1);
    EXPECT_EQ(degree_sum, 10 * s);
    EXPECT_EQ(b.nodes()[b.center()].role, Role::center);
  }
}

TEST(Board, CornersAreNotAdjacent) {
  for (int s = 3; s <= 8; ++s) {
    const auto b = build_board(3, s);
    for (int a = 0; a < b.node_count(); ++a)
      for (int c = 0; c < b.node_count(); ++c)
        if (a != c && b.nodes()[a].role == Role::corner && b.nodes()[c].role == Role::corner)
          EXPECT_FALSE(b.adjacent(a, c));
  }
}

TEST(Board, LineShapes) {
  for (int s = 3; s <= 10; ++s) {
    const auto b = build_board(3, s);
    int sides = 0, corner_diam = 0, mid_diam = 0, mixed_diam = 0;
    for (const auto& l : b.lines()) {
      std::multiset<Role> r;
      for (int v : l) r.insert(b.nodes()[v].role);
      if (r.count(Role::center)) {
        if (r.count(Role::corner) == 2) ++corner_diam;
        else if (r.count(Role::midpoint) == 2) ++mid_diam;
        else ++mixed_diam;
      } else {
        EXPECT_EQ(r.count(Role::corner), 2u);
        EXPECT_EQ(r.count(Role::midpoint), 1u);
        ++sides;
      }
    }
    EXPECT_EQ(sides, s);
    if (s % 2 == 0) {
      EXPECT_EQ(corner_diam, s / 2);
      EXPECT_EQ(mid_diam, s / 2);
      EXPECT_EQ(mixed_diam, 0);
    } else {
      EXPECT_EQ(mixed_diam, s);
    }
  }
}

TEST(Board, SymmetryGroupClosureAndInvariance) {
  for (int s = 3; s <= 9; ++s) {
    const auto b = build_board(3, s);
    std::set<Permutation> group;
    for (const auto& g : b.symmetries()) group.insert(g.perm);
    ASSERT_EQ(group.size(), static_cast<std::size_t>(2 * s));
    const auto edges = edge_set(b);
    const auto lines = line_set(b);
    int rotations = 0;
    for (const auto& g : b.symmetries()) {
      rotations += g.is_rotation;
      for (const auto& h : b.symmetries()) EXPECT_TRUE(group.count(detail::compose(g.perm, h.perm)));
      Permutation inv(g.perm.size());
      for (std::size_t i = 0; i < inv.size(); ++i) inv[g.perm[i]] = static_cast<int>(i);
      EXPECT_TRUE(group.count(inv));
      for (const auto& [a, c] : edges)
        EXPECT_TRUE(edges.count({std::min(g.perm[a], g.perm[c]), std::max(g.perm[a], g.perm[c])}));
      for (const auto& l : lines) EXPECT_TRUE(lines.count(image(l, g.perm)));
    }
    EXPECT_EQ(rotations, s);
    EXPECT_EQ(b.symmetries()[0].name, "e");
  }
}

TEST(Board, FourSidedNamesAndOrder) {
  const auto b = build_board(3, 4);
  std::vector<std::string> names;
  for (const auto& g : b.symmetries()) names.push_back(g.name);
  EXPECT_EQ(names, (std::vector<std::string>{"e", "R90", "R180", "R270", "H", "V", "D1", "D2"}));
}

TEST(Board, FourSidedMatchesKingGraph) {
  const auto b = build_board(3, 4);
  const auto king = testkit::king_graph_3x3();
  EXPECT_EQ(edge_set(b), king.edges);
  std::set<std::vector<int>> lines;
  for (const auto& l : b.lines()) lines.insert({l.begin(), l.end()});
  EXPECT_EQ(lines, king.lines);
}

TEST(Board, GridMapping) {
  const auto b = build_board(3, 4);
  const auto grid = grid_mapping(b);
  EXPECT_EQ(grid.cell_of(b.center()), std::make_pair(1, 1));
  std::set<std::pair<int, int>> corners, mids;
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(grid.node_at(grid.cell_of(i).first, grid.cell_of(i).second), i);
    if (b.nodes()[i].role == Role::corner) corners.insert(grid.cell_of(i));
    if (b.nodes()[i].role == Role::midpoint) mids.insert(grid.cell_of(i));
  }
  EXPECT_EQ(corners, (std::set<std::pair<int, int>>{{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
  EXPECT_EQ(mids, (std::set<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}}));

  auto cells_of = [&](int node) {
    std::set<std::pair<int, int>> out;
    for (int v : b.neighbors(node)) out.insert(grid.cell_of(v));
    return out;
  };
  EXPECT_EQ(cells_of(grid.node_at(0, 0)), (std::set<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(cells_of(grid.node_at(1, 0)), (std::set<std::pair<int, int>>{{0, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}));
  EXPECT_THROW(grid.node_at(3, 0), ParameterError);
  EXPECT_THROW(grid_mapping(build_board(3, 5)), ParameterError);
}

TEST(Board, ParameterBounds) {
  EXPECT_NO_THROW(build_board(5, 5));
  EXPECT_THROW(build_board(6, 5), ParameterError);
  EXPECT_NO_THROW(build_board(4, 4));  // 8 stones on 9 nodes
  EXPECT_THROW(build_board(6, 4), ParameterError);
  EXPECT_THROW(build_board(3, 2), ParameterError);
  EXPECT_THROW(build_board(2, 4), ParameterError);
  EXPECT_THROW(build_board(3, kMaxSides + 1), ParameterError);
}

TEST(Board, OddSideDiameterPairsMidpointWithOppositeCorner) {
  const auto b = build_board(3, 5);
  // Node order corner0, mid0, corner1, ...: mid0 faces corner3.
  const Line expected{1, 6, 10};
  EXPECT_TRUE(line_set(b).count(expected));
}

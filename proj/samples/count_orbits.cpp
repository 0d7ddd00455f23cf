// Burnside orbit counts for the sliding-phase boards of each (3, s) game.

#include <iostream>

#include "picaria/counting.hpp"

int main() {
  for (int s = 3; s <= 7; ++s) {
    const auto r = picaria::burnside_orbits(picaria::build_board(3, s));
    std::cout << "s=" << s << "  |G|=" << r.group_order << "  orbits=" << r.orbit_count_raw
              << "  double-win=" << r.excluded_orbits << "  positions=" << r.position_graph_size << '\n';
  }
}

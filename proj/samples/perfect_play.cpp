// Solves Picaria and lets the engine play both sides for a few plies,
// printing the board and the value after each move.

#include <iostream>

#include "picaria/board.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

int main(int argc, char** argv) {
  using namespace picaria;
  const int plies = argc > 1 ? std::stoi(argv[1]) : 12;
  const auto spec = build_board(3, 4);
  const auto table = solve(spec);
  std::cout << table.size() << " positions, root " << value(table, initial_position(spec)).to_string() << "\n\n";

  Position p = initial_position(spec);
  for (int ply = 1; ply <= plies && !is_terminal(spec, p); ++ply) {
    const auto best = best_moves(table, p).front();
    std::cout << ply << ". " << to_char(p.to_move()) << ' ' << best.move.to_string() << '\n';
    p = apply_move(spec, p, best.move);
    const auto cells = p.cells().to_string();
    for (int row = 0; row < 3; ++row) std::cout << "   " << cells.substr(3 * row, 3) << '\n';
    std::cout << "   " << to_char(p.to_move()) << " to move: " << value(table, p).to_string() << '\n';
  }
}

#pragma once

#include <cstdint>
#include <string>

namespace picaria {

enum class Outcome : std::uint8_t { win, loss, draw };

constexpr char outcome_char(Outcome o) noexcept { return o == Outcome::win ? 'W' : o == Outcome::loss ? 'L' : 'D'; }

// Value for the side to move. WIN(d): the mover forces a win in d plies, the
// winner minimising and the loser maximising d. LOSS(0) is a finished game
// (or a blockaded mover). Win depths are odd, loss depths even.
struct GameValue {
  Outcome outcome = Outcome::draw;
  std::uint16_t depth = 0;  // 0 for draws

  static constexpr GameValue win(int d) { return {Outcome::win, static_cast<std::uint16_t>(d)}; }
  static constexpr GameValue loss(int d) { return {Outcome::loss, static_cast<std::uint16_t>(d)}; }
  static constexpr GameValue draw() { return {Outcome::draw, 0}; }

  bool is_win() const noexcept { return outcome == Outcome::win; }
  bool is_loss() const noexcept { return outcome == Outcome::loss; }
  bool is_draw() const noexcept { return outcome == Outcome::draw; }

  // The value of the parent reached by a move into this position.
  GameValue from_parent() const noexcept {
    switch (outcome) {
      case Outcome::loss: return win(depth + 1);
      case Outcome::win: return loss(depth + 1);
      default: return draw();
    }
  }

  std::string to_string() const {
    switch (outcome) {
      case Outcome::win: return "WIN(" + std::to_string(depth) + ")";
      case Outcome::loss: return "LOSS(" + std::to_string(depth) + ")";
      default: return "DRAW";
    }
  }

  friend bool operator==(const GameValue&, const GameValue&) = default;
};

// Total preference order for the mover: quick wins, then draws, then slow losses.
// Larger is better.
constexpr long preference(const GameValue& v) noexcept {
  switch (v.outcome) {
    case Outcome::win: return 100000L - v.depth;
    case Outcome::loss: return -100000L + v.depth;
    default: return 0;
  }
}

}  // namespace picaria

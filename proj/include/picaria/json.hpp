#pragma once

// Structured (JSON) renderings shared by the CLI and the HTTP service.

#include <json.hpp>

#include "picaria/board.hpp"
#include "picaria/counting.hpp"
#include "picaria/game_value.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

namespace picaria {

using json = nlohmann::json;

inline json to_json(const GameValue& v) {
  json j{{"value", v.is_win() ? "WIN" : v.is_loss() ? "LOSS" : "DRAW"}, {"text", v.to_string()}};
  if (!v.is_draw()) j["depth"] = v.depth;
  return j;
}

inline json grid_cell(int node) {
  const auto [r, c] = GridMapping{}.cell_of(node);
  return json::array({r, c});
}

inline json to_json(const BoardSpec& spec, const Move& m) {
  json j{{"type", m.kind == MoveKind::place ? "place" : "slide"}, {"to", m.to}};
  if (m.kind == MoveKind::slide) j["from"] = m.from;
  if (spec.has_grid()) {
    json g{{"to", grid_cell(m.to)}};
    if (m.kind == MoveKind::slide) g["from"] = grid_cell(m.from);
    j["grid"] = g;
  }
  return j;
}

// Reads {type, from?, to}. Throws IllegalMoveError on a malformed document.
inline Move move_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("to") || !j["type"].is_string() ||
      !j["to"].is_number_integer())
    throw IllegalMoveError("move needs 'type' and integer 'to'");
  const auto type = j["type"].get<std::string>();
  const int to = j["to"].get<int>();
  if (type == "place") return Move::place(to);
  if (type == "slide") {
    if (!j.contains("from") || !j["from"].is_number_integer()) throw IllegalMoveError("slide needs integer 'from'");
    return Move::slide(j["from"].get<int>(), to);
  }
  throw IllegalMoveError("move type must be 'place' or 'slide'");
}

inline json to_json(const ValueCounts& c) {
  return {{"win", c.win}, {"loss", c.loss}, {"draw", c.draw}, {"total", c.total()}};
}

inline json to_json(const OrbitReport& r) {
  json fix = json::array();
  for (std::size_t i = 0; i < r.fix_counts.size(); ++i)
    fix.push_back({{"element", r.element_names[i]}, {"fixed", r.fix_counts[i]}});
  return {{"k", r.k},
          {"s", r.s},
          {"profile", {{"x", r.profile.x}, {"o", r.profile.o}, {"empty", 2 * r.s + 1 - r.profile.x - r.profile.o}}},
          {"group_order", r.group_order},
          {"fix_counts", fix},
          {"fix_sum", r.fix_sum()},
          {"orbit_count_raw", r.orbit_count_raw},
          {"excluded_orbits", r.excluded_orbits},
          {"orbit_count", r.orbit_count},
          {"position_graph_size", r.position_graph_size}};
}

inline json to_json(const ReachStats& st) {
  json j{{"canonical_placement", st.canonical_placement},
         {"canonical_sliding", st.canonical_sliding},
         {"raw_placement", st.raw_placement},
         {"raw_sliding", st.raw_sliding},
         {"canonical_terminal", st.canonical_terminal},
         {"sliding_boards_raw", st.sliding_boards_raw}};
  j["sliding_positions_canonical"] =
      st.sliding_positions_canonical ? json(*st.sliding_positions_canonical) : json(nullptr);
  return j;
}

}  // namespace picaria

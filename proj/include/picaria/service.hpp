#pragma once

// Human-versus-engine game sessions over HTTP/JSON.
//
//   POST /sessions               {k, s, human: "x"|"o"}
//   GET  /sessions/{id}
//   GET  /sessions/{id}/moves    legal moves with their post-move values
//   POST /sessions/{id}/moves    {move: {type: "place"|"slide", from?, to}}
//   POST /sessions/{id}/reset
//   GET  /health
//
// Service holds the game logic and returns (status, body) pairs; mount()
// binds it to an httplib::Server. Solve tables are shared read-only between
// sessions, and each session serializes its own requests.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>

#include "picaria/board.hpp"
#include "picaria/errors.hpp"
#include "picaria/json.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

namespace picaria {

enum class SessionStatus { ongoing, won_by_x, won_by_o, drawn_by_repetition };

inline const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::ongoing: return "ongoing";
    case SessionStatus::won_by_x: return "won-by-x";
    case SessionStatus::won_by_o: return "won-by-o";
    case SessionStatus::drawn_by_repetition: return "drawn-by-repetition";
  }
  return "ongoing";
}

struct ServiceConfig {
  std::chrono::seconds idle_timeout{3600};
  std::optional<std::filesystem::path> session_log;  // append-only JSON lines
  std::uint64_t max_raw_states = 5'000'000;          // refuse boards larger than this
  // Where solve tables come from; defaults to solving in memory.
  std::function<std::shared_ptr<const SolveTable>(const BoardSpec&)> table_source;
};

struct Response {
  int status = 200;
  json body;
};

class Service {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Service(ServiceConfig config = {}) : config_(std::move(config)), rng_(std::random_device{}()) {
    if (!config_.table_source)
      config_.table_source = [](const BoardSpec& spec) { return std::make_shared<const SolveTable>(solve(spec)); };
  }

  Response health() const { return {200, {{"status", "ok"}}}; }

  Response create_session(const json& body) {
    expire_idle(Clock::now());
    int k = 3, s = 4;
    Player human = Player::x;
    try {
      if (!body.is_object() && !body.is_null()) return error(400, "request body must be a JSON object");
      if (body.is_object() && body.contains("k")) k = body.at("k").get<int>();
      if (body.is_object() && body.contains("s")) s = body.at("s").get<int>();
      if (body.is_object() && body.contains("human")) {
        const auto h = body.at("human").get<std::string>();
        if (h != "x" && h != "o" && h != "X" && h != "O") return error(400, "human must be 'x' or 'o'");
        human = (h == "x" || h == "X") ? Player::x : Player::o;
      }
    } catch (const json::exception& e) {
      return error(400, std::string("bad request body: ") + e.what());
    }

    std::shared_ptr<const SolveTable> table;
    try {
      table = table_for(k, s);
    } catch (const Error& e) {
      return error(400, e.what());
    }

    auto session = std::make_shared<Session>();
    session->table = std::move(table);
    session->human = human;
    session->touched = Clock::now();
    // Held until the session is fully set up so no request sees it half built.
    std::lock_guard lock(session->mutex);
    {
      std::lock_guard registry(sessions_mutex_);
      do {
        session->id = token();
      } while (sessions_.count(session->id));
      sessions_[session->id] = session;
    }
    restart(*session);
    log({{"event", "create"}, {"id", session->id}, {"k", k}, {"s", s}, {"human", std::string(1, to_char(human))}});
    json doc = state_document(*session);
    return {201, doc};
  }

  Response get_state(const std::string& id) {
    auto session = find(id);
    if (!session) return error(404, "unknown session " + id);
    std::lock_guard lock(session->mutex);
    session->touched = Clock::now();
    return {200, state_document(*session)};
  }

  Response list_moves(const std::string& id) {
    auto session = find(id);
    if (!session) return error(404, "unknown session " + id);
    std::lock_guard lock(session->mutex);
    session->touched = Clock::now();
    const auto& spec = session->table->spec();
    json moves = json::array();
    if (session->status == SessionStatus::ongoing) {
      // Listed in move-generation order; "rank" is the engine's preference.
      std::vector<std::pair<Move, json>> annotated;
      const auto ranked = best_moves(*session->table, session->position);
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        const GameValue mine = ranked[i].after.from_parent();
        json m = to_json(spec, ranked[i].move);
        m["value"] = to_json(mine);
        m["after"] = to_json(ranked[i].after);
        m["badge"] = badge(mine);
        m["rank"] = i;
        annotated.emplace_back(ranked[i].move, std::move(m));
      }
      std::sort(annotated.begin(), annotated.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
      for (auto& [m, doc] : annotated) moves.push_back(std::move(doc));
    }
    return {200,
            {{"id", session->id},
             {"notation", to_notation(session->position)},
             {"status", to_string(session->status)},
             {"to_move", std::string(1, to_char(session->position.to_move()))},
             {"moves", moves}}};
  }

  Response play_move(const std::string& id, const json& body) {
    auto session = find(id);
    if (!session) return error(404, "unknown session " + id);
    std::lock_guard lock(session->mutex);
    session->touched = Clock::now();
    if (session->status != SessionStatus::ongoing) return error(409, "game is over: " + std::string(to_string(session->status)));
    if (session->position.to_move() != session->human) return error(409, "not the human's turn");

    Move move;
    try {
      if (!body.is_object() || !body.contains("move")) throw IllegalMoveError("request needs a 'move' object");
      move = move_from_json(body.at("move"));
    } catch (const Error& e) {
      return error(400, e.what());
    }
    const auto& spec = session->table->spec();
    if (!is_legal(spec, session->position, move))
      return error(400, "illegal move '" + move.to_string() + "' in " + to_notation(session->position));

    json plies = json::array();
    plies.push_back(play(*session, move));
    if (session->status == SessionStatus::ongoing && session->position.to_move() != session->human)
      plies.push_back(play(*session, engine_move(*session)));

    json doc = state_document(*session);
    doc["plies"] = plies;
    return {200, doc};
  }

  Response reset(const std::string& id) {
    auto session = find(id);
    if (!session) return error(404, "unknown session " + id);
    std::lock_guard lock(session->mutex);
    session->touched = Clock::now();
    restart(*session);
    log({{"event", "reset"}, {"id", session->id}});
    return {200, state_document(*session)};
  }

  // Drops sessions idle for longer than the configured timeout.
  std::size_t expire_idle(Clock::time_point now) {
    std::lock_guard lock(sessions_mutex_);
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      bool idle = false;
      {
        // A session busy with a request is not idle.
        std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
        idle = session_lock.owns_lock() && now - it->second->touched > config_.idle_timeout;
      }
      if (idle) {
        it = sessions_.erase(it);
        ++dropped;
      } else {
        ++it;
      }
    }
    return dropped;
  }

  std::size_t session_count() const {
    std::lock_guard lock(sessions_mutex_);
    return sessions_.size();
  }

  void mount(httplib::Server& server) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
    auto send = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
    auto parse = [](const httplib::Request& req) {
      if (req.body.empty()) return json::object();
      return json::parse(req.body, nullptr, false);
    };
    server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Post("/sessions", [this, send, parse](const httplib::Request& req, httplib::Response& res) {
      send(res, create_session(parse(req)));
    });
    server.Get(R"(/sessions/([0-9a-f]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, get_state(req.matches[1]));
    });
    server.Get(R"(/sessions/([0-9a-f]+)/moves)", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, list_moves(req.matches[1]));
    });
    server.Post(R"(/sessions/([0-9a-f]+)/moves)",
                [this, send, parse](const httplib::Request& req, httplib::Response& res) {
                  send(res, play_move(req.matches[1], parse(req)));
                });
    server.Post(R"(/sessions/([0-9a-f]+)/reset)", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, reset(req.matches[1]));
    });
  }

 private:
  struct HistoryEntry {
    Player player;
    Move move;
    std::string notation;  // position after the move
  };

  struct Session {
    std::mutex mutex;
    std::string id;
    std::shared_ptr<const SolveTable> table;
    Position position;
    std::vector<HistoryEntry> history;
    std::map<std::uint64_t, int> seen;  // canonical key -> occurrences
    Player human = Player::x;
    SessionStatus status = SessionStatus::ongoing;
    Clock::time_point touched;
  };

  static Response error(int status, const std::string& message) { return {status, {{"error", message}}}; }

  static std::string badge(const GameValue& v) {
    return v.is_draw() ? "D" : std::string(1, outcome_char(v.outcome)) + std::to_string(v.depth);
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::shared_ptr<const SolveTable> table_for(int k, int s) {
    const auto spec = build_board(k, s);
    if (raw_state_bound(k, s) > config_.max_raw_states)
      throw SizeGuardError("board k=" + std::to_string(k) + " s=" + std::to_string(s) + " is too large to serve");
    std::lock_guard lock(tables_mutex_);
    auto& slot = tables_[{k, s}];
    if (!slot) slot = config_.table_source(spec);
    return slot;
  }

  std::string token() {
    std::uniform_int_distribution<std::uint64_t> dist;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(dist(rng_)));
    return buf;
  }

  void restart(Session& s) {
    s.position = initial_position(s.table->spec());
    s.history.clear();
    s.seen.clear();
    s.seen[canonical_key(s.table->spec(), s.position)] = 1;
    s.status = SessionStatus::ongoing;
    if (s.human != Player::x) play(s, engine_move(s));
  }

  static Move engine_move(const Session& s) { return best_moves(*s.table, s.position).front().move; }

  json play(Session& s, const Move& m) {
    const auto& spec = s.table->spec();
    const Player mover = s.position.to_move();
    s.position = apply_move(spec, s.position, m);
    s.history.push_back({mover, m, to_notation(s.position)});
    const int count = ++s.seen[canonical_key(spec, s.position)];

    const Winner w = winner(spec, s.position);
    if (w != Winner::none)
      s.status = w == Winner::x ? SessionStatus::won_by_x : SessionStatus::won_by_o;
    else if (legal_moves(spec, s.position).empty())
      s.status = s.position.to_move() == Player::x ? SessionStatus::won_by_o : SessionStatus::won_by_x;
    else if (count >= 3)
      s.status = SessionStatus::drawn_by_repetition;

    json ply{{"player", std::string(1, to_char(mover))},
             {"by", mover == s.human ? "human" : "engine"},
             {"move", to_json(spec, m)},
             {"notation", s.history.back().notation}};
    log({{"event", "move"}, {"id", s.id}, {"ply", ply}, {"status", to_string(s.status)}});
    return ply;
  }

  json state_document(const Session& s) const {
    const auto& spec = s.table->spec();
    const auto& p = s.position;
    json history = json::array();
    for (std::size_t i = 0; i < s.history.size(); ++i) {
      const auto& h = s.history[i];
      history.push_back({{"ply", i + 1},
                         {"player", std::string(1, to_char(h.player))},
                         {"move", to_json(spec, h.move)},
                         {"notation", h.notation}});
    }
    json doc{{"id", s.id},
             {"k", spec.k()},
             {"s", spec.s()},
             {"notation", to_notation(p)},
             {"cells", p.cells().to_string()},
             {"to_move", std::string(1, to_char(p.to_move()))},
             {"phase", phase(spec, p) == Phase::placement ? "placement" : "sliding"},
             {"status", to_string(s.status)},
             {"human", std::string(1, to_char(s.human))},
             {"human_to_move", s.status == SessionStatus::ongoing && p.to_move() == s.human},
             {"repetitions", s.seen.at(canonical_key(spec, p))},
             {"history", history}};
    if (spec.has_grid()) {
      const auto cells = p.cells().to_string();
      doc["grid"] = json::array({cells.substr(0, 3), cells.substr(3, 3), cells.substr(6, 3)});
    }
    return doc;
  }

  void log(const json& record) {
    if (!config_.session_log) return;
    std::lock_guard lock(log_mutex_);
    std::ofstream out(*config_.session_log, std::ios::app);
    out << record.dump() << '\n';
  }

  ServiceConfig config_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex tables_mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const SolveTable>> tables_;
  std::mutex log_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace picaria

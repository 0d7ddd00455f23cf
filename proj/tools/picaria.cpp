// picaria: solve, query, count, verify, sweep and serve from the command line.
//
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "picaria/board.hpp"
#include "picaria/counting.hpp"
#include "picaria/errors.hpp"
#include "picaria/json.hpp"
#include "picaria/position.hpp"
#include "picaria/service.hpp"
#include "picaria/solver.hpp"
#include "picaria/table_cache.hpp"
#include "picaria/verify.hpp"

namespace {

using namespace picaria;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  int k = 3;
  int s = 4;
  std::string cache;
  std::string format = "text";
  std::string position;
  bool enumerate = false;
  std::string profile;
  std::string fixtures;
  std::string k_range = "3";
  std::string s_range = "3..7";
  std::uint64_t guard = 5'000'000;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string session_log;
};

bool structured(const Options& o) { return o.format == "structured"; }

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

CachedTable table_for(const Options& o, const BoardSpec& spec) {
  auto cached = load_or_solve(spec, resolve_cache_dir(o.cache));
  if (!cached.note.empty()) std::cerr << "warning: " << cached.note << '\n';
  return cached;
}

GameValue root_value(const SolveTable& t) { return value(t, initial_position(t.spec())); }

int cmd_solve(const Options& o) {
  const auto spec = build_board(o.k, o.s);
  const auto t0 = std::chrono::steady_clock::now();
  const auto cached = table_for(o, spec);
  const double ms = millis_since(t0);
  const auto& t = cached.table;
  const auto root = root_value(t);
  if (structured(o)) {
    std::cout << json{{"k", o.k},
                      {"s", o.s},
                      {"nodes", spec.node_count()},
                      {"edges", spec.edges().size()},
                      {"lines", spec.lines().size()},
                      {"symmetries", spec.symmetries().size()},
                      {"positions", t.size()},
                      {"counts", to_json(t.counts())},
                      {"root", to_json(root)},
                      {"from_cache", cached.from_cache},
                      {"millis", ms}}
                     .dump(2)
              << '\n';
    return kOk;
  }
  std::cout << "board      k=" << o.k << " s=" << o.s << " (" << spec.node_count() << " nodes, " << spec.edges().size()
            << " edges, " << spec.lines().size() << " lines, " << spec.symmetries().size() << " symmetries)\n"
            << "positions  " << t.size() << " canonical\n"
            << "values     " << t.counts().win << " win, " << t.counts().loss << " loss, " << t.counts().draw
            << " draw\n"
            << "root       " << root.to_string() << '\n'
            << "time       " << fixed(ms, 1) << " ms" << (cached.from_cache ? " (from cache)" : "") << '\n';
  return kOk;
}

int cmd_value(const Options& o) {
  const auto spec = build_board(o.k, o.s);
  const auto p = parse_notation(o.position, spec);
  const auto cached = table_for(o, spec);
  const auto* v = cached.table.find(canonical_key(spec, p));
  if (!v) {
    std::cerr << "position " << o.position << " is not reachable from the empty board\n";
    return kUsage;
  }
  if (structured(o))
    std::cout << json{{"position", to_notation(p)}, {"value", to_json(*v)}}.dump(2) << '\n';
  else
    std::cout << v->to_string() << '\n';
  return kOk;
}

int cmd_best(const Options& o) {
  const auto spec = build_board(o.k, o.s);
  const auto p = parse_notation(o.position, spec);
  const auto cached = table_for(o, spec);
  if (!cached.table.find(canonical_key(spec, p))) {
    std::cerr << "position " << o.position << " is not reachable from the empty board\n";
    return kUsage;
  }
  const auto value_now = value(cached.table, p);
  const auto ranked = best_moves(cached.table, p);
  if (structured(o)) {
    json moves = json::array();
    for (const auto& r : ranked) {
      json m = to_json(spec, r.move);
      m["value"] = to_json(r.after.from_parent());
      m["after"] = to_json(r.after);
      moves.push_back(m);
    }
    std::cout << json{{"position", to_notation(p)}, {"value", to_json(value_now)}, {"moves", moves}}.dump(2) << '\n';
    return kOk;
  }
  const char mover = to_char(p.to_move());
  const char other = to_char(opponent(p.to_move()));
  std::cout << to_notation(p) << "  " << value_now.to_string() << " for " << mover << '\n';
  if (ranked.empty()) std::cout << "  (no legal moves: " << mover << " is blockaded)\n";
  for (const auto& r : ranked)
    std::cout << "  " << std::left << std::setw(12) << r.move.to_string() << std::setw(10)
              << r.after.from_parent().to_string() << "(" << other << " then faces " << r.after.to_string() << ")\n";
  return kOk;
}

Profile parse_profile(const std::string& text, const BoardSpec& spec) {
  if (text.empty()) return {spec.k(), spec.k()};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--profile", "expected X,O stone counts");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--profile", "expected X,O stone counts");
  }
}

int cmd_count(const Options& o) {
  const auto spec = build_board(o.k, o.s);
  const auto profile = parse_profile(o.profile, spec);
  const auto report = burnside_orbits(spec, profile);
  std::optional<std::uint64_t> enumerated;
  if (o.enumerate) enumerated = enumerate_orbits(spec, profile);
  const bool agree = !enumerated || *enumerated == report.orbit_count_raw;
  if (structured(o)) {
    json j = to_json(report);
    if (enumerated) {
      j["enumerated_orbits"] = *enumerated;
      j["agree"] = agree;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << to_text(report);
    if (enumerated) {
      std::cout << std::left << std::setw(22) << "orbits (enumerated)" << *enumerated << '\n'
                << std::setw(22) << "agree" << (agree ? "yes" : "NO") << '\n';
    }
  }
  return agree ? kOk : kFailed;
}

int cmd_verify(const Options& o) {
  std::vector<ProofFixture> fixtures;
  if (o.fixtures.empty()) {
    fixtures = builtin_fixtures();
  } else {
    std::ifstream in(o.fixtures);
    if (!in) {
      std::cerr << "cannot read " << o.fixtures << '\n';
      return kUsage;
    }
    std::stringstream text;
    text << in.rdbuf();
    fixtures = parse_fixtures(text.str());
  }
  const auto spec = build_board(o.k, o.s);
  const auto cached = table_for(o, spec);

  int failed = 0;
  json out = json::array();
  for (const auto& f : fixtures) {
    json row{{"name", f.name}, {"anchor", f.anchor}};
    json claims = json::array();
    bool ok = true;
    std::vector<std::string> lines;
    try {
      const auto report = replay(cached.table, f);
      ok = report.passed();
      for (const auto& c : report.claims) {
        claims.push_back({{"claim", c.claim.to_string()}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed) lines.push_back("claim '" + c.claim.to_string() + "' failed: " + c.detail);
      }
    } catch (const FixtureError& e) {
      ok = false;
      row["error"] = e.what();
      lines.push_back(std::string("cannot replay: ") + e.what());
    }
    row["passed"] = ok;
    row["claims"] = claims;
    out.push_back(row);
    if (!ok) ++failed;
    if (!structured(o)) {
      std::cout << (ok ? "PASS  " : "FAIL  ") << std::left << std::setw(34) << f.name << f.anchor << '\n';
      for (const auto& l : lines) std::cout << "      " << l << '\n';
    }
  }
  if (structured(o))
    std::cout << json{{"fixtures", out}, {"total", fixtures.size()}, {"failed", failed}}.dump(2) << '\n';
  else
    std::cout << fixtures.size() - failed << "/" << fixtures.size() << " fixtures pass\n";
  return failed == 0 ? kOk : kFailed;
}

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected N or A..B, got '" + text + "'");
  }
}

int cmd_sweep(const Options& o) {
  const auto [k_lo, k_hi] = parse_range(o.k_range, "-k");
  const auto [s_lo, s_hi] = parse_range(o.s_range, "-s");
  json rows = json::array();
  if (!structured(o))
    std::cout << std::left << std::setw(4) << "k" << std::setw(4) << "s" << std::setw(10) << "nodes" << std::setw(12)
              << "positions" << std::setw(10) << "root" << std::setw(12) << "time(ms)" << "note\n";
  for (int k = k_lo; k <= k_hi; ++k)
    for (int s = s_lo; s <= s_hi; ++s) {
      json row{{"k", k}, {"s", s}};
      std::string note;
      try {
        const auto spec = build_board(k, s);
        const auto bound = raw_state_bound(k, s);
        row["raw_state_bound"] = bound;
        if (bound > o.guard) {
          note = "skipped: raw state bound " + std::to_string(bound) + " exceeds guard";
        } else {
          const auto t0 = std::chrono::steady_clock::now();
          const auto cached = table_for(o, spec);
          const double ms = millis_since(t0);
          const auto root = root_value(cached.table);
          row["positions"] = cached.table.size();
          row["root"] = to_json(root);
          row["millis"] = ms;
          if (!structured(o))
            std::cout << std::left << std::setw(4) << k << std::setw(4) << s << std::setw(10) << spec.node_count()
                      << std::setw(12) << cached.table.size() << std::setw(10) << root.to_string() << std::setw(12)
                      << fixed(ms, 1) << (cached.from_cache ? "cached" : "") << '\n';
        }
      } catch (const ParameterError& e) {
        note = std::string("skipped: ") + e.what();
      }
      if (!note.empty()) {
        row["skipped"] = note;
        if (!structured(o))
          std::cout << std::left << std::setw(4) << k << std::setw(4) << s << std::setw(10) << "-" << std::setw(12)
                    << "-" << std::setw(10) << "-" << std::setw(12) << "-" << note << '\n';
      }
      rows.push_back(row);
    }
  if (structured(o)) std::cout << json{{"instances", rows}}.dump(2) << '\n';
  return kOk;
}

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

int cmd_serve(const Options& o) {
  ServiceConfig cfg;
  if (!o.session_log.empty()) cfg.session_log = o.session_log;
  const auto cache_dir = resolve_cache_dir(o.cache);
  cfg.table_source = [cache_dir](const BoardSpec& spec) {
    return std::make_shared<const SolveTable>(load_or_solve(spec, cache_dir).table);
  };
  Service service(cfg);
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(o.host, o.port)) {
    std::cerr << "cannot listen on " << o.host << ":" << o.port << '\n';
    return kUsage;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!g_stop && !done) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    // A signal can land before the listen loop is up; keep asking until it exits.
    while (!done) {
      server.stop();
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  std::cout << "listening on http://" << o.host << ":" << o.port << std::endl;
  server.listen_after_bind();
  done = true;
  watcher.join();
  std::cout << "stopped" << std::endl;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and verification lab for Picaria and its (k, s) relatives"};
  app.require_subcommand(1);
  Options o;

  auto board_flags = [&](CLI::App* sub) {
    sub->add_option("-k", o.k, "stones per player")->capture_default_str();
    sub->add_option("-s", o.s, "sides of the board")->capture_default_str();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--cache", o.cache, std::string("solve table cache directory (or $") + kCacheDirEnv + ")");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve a board and summarise the table");
  board_flags(solve_cmd);
  common(solve_cmd);

  auto* value_cmd = app.add_subcommand("value", "game value of a position for the side to move");
  board_flags(value_cmd);
  common(value_cmd);
  value_cmd->add_option("position", o.position, "wire notation, e.g. ..ooxxx.o:x")->required();

  auto* best_cmd = app.add_subcommand("best", "legal moves ranked best first");
  board_flags(best_cmd);
  common(best_cmd);
  best_cmd->add_option("position", o.position, "wire notation")->required();

  auto* count_cmd = app.add_subcommand("count", "Burnside orbit count of full boards");
  board_flags(count_cmd);
  common(count_cmd);
  count_cmd->add_flag("--enumerate", o.enumerate, "cross-check by brute-force enumeration");
  count_cmd->add_option("--profile", o.profile, "stone counts X,O (default k,k)");

  auto* verify_cmd = app.add_subcommand("verify", "replay the proof fixtures against the solver");
  board_flags(verify_cmd);
  common(verify_cmd);
  verify_cmd->add_option("--fixtures", o.fixtures, "fixture file (default: the built-in catalog)");

  auto* sweep_cmd = app.add_subcommand("sweep", "solve a range of (k, s) instances");
  sweep_cmd->add_option("-k", o.k_range, "stones per player: N or A..B")->capture_default_str();
  sweep_cmd->add_option("-s", o.s_range, "sides: N or A..B")->capture_default_str();
  sweep_cmd->add_option("--guard", o.guard, "skip instances with more raw states than this")->capture_default_str();
  common(sweep_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP game service");
  serve_cmd->add_option("--port", o.port, "listen port")->capture_default_str();
  serve_cmd->add_option("--host", o.host, "listen address")->capture_default_str();
  serve_cmd->add_option("--session-log", o.session_log, "append session events to this file");
  common(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(o);
    if (*value_cmd) return cmd_value(o);
    if (*best_cmd) return cmd_best(o);
    if (*count_cmd) return cmd_count(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*serve_cmd) return cmd_serve(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FixtureError& e) {
    std::cerr << "fixture error: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

#pragma once

// Solve-table file format, line oriented text:
//
//   picaria-solve-table
//   format 1
//   k <k>
//   s <s>
//   entries <count>
//   checksum <16 hex digits, FNV-1a 64 of the payload bytes>
//   <payload>
//
// The payload has one line per entry in ascending canonical-key order:
// "<cells> <mover> <W|L|D> <depth>\n", e.g. "..o.xoxox x W 3".

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "picaria/errors.hpp"
#include "picaria/game_value.hpp"
#include "picaria/position.hpp"
#include "picaria/solver.hpp"

namespace picaria {

inline constexpr std::string_view kTableMagic = "picaria-solve-table";
inline constexpr int kTableFormatVersion = 1;

inline std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace detail {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string table_payload(const SolveTable& table) {
  std::string out;
  const int n = table.spec().node_count();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Position p = Position::from_key(table.keys()[i], n);
    const GameValue v = table.values()[i];
    out += p.cells().to_string();
    out += ' ';
    out += to_char(p.to_move());
    out += ' ';
    out += outcome_char(v.outcome);
    out += ' ';
    out += std::to_string(v.depth);
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline void export_table(const SolveTable& table, std::ostream& out) {
  const auto payload = detail::table_payload(table);
  out << kTableMagic << '\n'
      << "format " << kTableFormatVersion << '\n'
      << "k " << table.spec().k() << '\n'
      << "s " << table.spec().s() << '\n'
      << "entries " << table.size() << '\n'
      << "checksum " << detail::hex64(fnv1a64(payload)) << '\n'
      << payload;
}

inline void export_table(const SolveTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  export_table(table, out);
  if (!out) throw Error("write failed: " + path.string());
}

// Reads a table written by export_table() and validates it against spec.
// A deterministic sample of at least 1000 entries (or all of them) is
// re-checked against the minimax recurrence.
inline SolveTable import_table(std::istream& in, const BoardSpec& spec) {
  using Kind = TableFormatError::Kind;
  auto header = [&](std::string_view field) {
    std::string line;
    if (!std::getline(in, line)) throw TableFormatError(Kind::malformed, "truncated header");
    if (line.rfind(std::string(field) + " ", 0) != 0)
      throw TableFormatError(Kind::malformed, "expected header field '" + std::string(field) + "'");
    return line.substr(field.size() + 1);
  };
  auto number = [](const std::string& s, std::string_view field) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw TableFormatError(Kind::malformed, "bad number in header field '" + std::string(field) + "'");
    }
  };

  std::string magic;
  if (!std::getline(in, magic) || magic != kTableMagic) throw TableFormatError(Kind::malformed, "not a solve table");
  const auto version = number(header("format"), "format");
  if (version != static_cast<unsigned>(kTableFormatVersion))
    throw TableFormatError(Kind::version, "unsupported table format " + std::to_string(version));
  const auto k = number(header("k"), "k");
  const auto s = number(header("s"), "s");
  if (k != static_cast<unsigned>(spec.k()) || s != static_cast<unsigned>(spec.s()))
    throw TableFormatError(Kind::spec_mismatch, "table is for k=" + std::to_string(k) + " s=" + std::to_string(s) +
                                                    ", expected k=" + std::to_string(spec.k()) +
                                                    " s=" + std::to_string(spec.s()));
  const auto count = number(header("entries"), "entries");
  const auto checksum = header("checksum");

  const std::string payload{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (detail::hex64(fnv1a64(payload)) != checksum) throw TableFormatError(Kind::checksum, "payload checksum mismatch");

  std::vector<std::pair<std::uint64_t, GameValue>> entries;
  entries.reserve(count);
  std::istringstream lines(payload);
  std::string line;
  const auto n = static_cast<std::size_t>(spec.node_count());
  while (std::getline(lines, line)) {
    std::istringstream f(line);
    std::string cells, mover, tag, depth;
    if (!(f >> cells >> mover >> tag >> depth) || cells.size() != n || mover.size() != 1 || tag.size() != 1)
      throw TableFormatError(Kind::malformed, "bad entry line: " + line);
    Position p;
    try {
      p = parse_notation(cells + ":" + mover, spec);
    } catch (const Error& e) {
      throw TableFormatError(Kind::malformed, "bad entry position: " + std::string(e.what()));
    }
    GameValue v;
    const auto d = static_cast<int>(number(depth, "depth"));
    switch (tag[0]) {
      case 'W': v = GameValue::win(d); break;
      case 'L': v = GameValue::loss(d); break;
      case 'D': v = GameValue::draw(); break;
      default: throw TableFormatError(Kind::malformed, "bad value tag: " + tag);
    }
    if (!entries.empty() && entries.back().first >= p.key())
      throw TableFormatError(Kind::malformed, "entries not in ascending key order");
    if (canonical_key(spec, p) != p.key()) throw TableFormatError(Kind::malformed, "non-canonical entry: " + line);
    entries.emplace_back(p.key(), v);
  }
  if (entries.size() != count) throw TableFormatError(Kind::malformed, "entry count mismatch");

  SolveTable table(spec, std::move(entries));
  std::vector<std::size_t> sample(table.size());
  for (std::size_t i = 0; i < sample.size(); ++i) sample[i] = i;
  constexpr std::size_t kSample = 1000;
  if (sample.size() > kSample) {
    std::mt19937_64 rng(0x5eedu);
    std::shuffle(sample.begin(), sample.end(), rng);
    sample.resize(kSample);
  }
  for (auto i : sample)
    if (auto why = consistency_violation(table, i)) throw TableFormatError(Kind::inconsistent, *why);
  return table;
}

inline SolveTable import_table(const std::filesystem::path& path, const BoardSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return import_table(in, spec);
}

}  // namespace picaria

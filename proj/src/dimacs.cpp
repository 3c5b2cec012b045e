#include "eflow/dimacs.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace eflow {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view field, const char* what, int line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError(std::string(what) + " is not an integer: '" + std::string(field) + "'",
                     line);
  return value;
}

}  // namespace

Graph parse_dimacs(std::string_view text) {
  int n = -1;
  std::int64_t declared_arcs = -1;
  int s = -1, t = -1;
  std::vector<EdgeSpec> edges;

  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;

    auto fields = split_fields(line);
    if (fields.empty() || fields[0] == "c") {
      if (end == text.size()) break;
      continue;
    }

    if (fields[0] == "p") {
      if (n >= 0) throw ParseError("duplicate problem line", line_number);
      if (fields.size() != 4 || fields[1] != "max")
        throw ParseError("problem line must read 'p max <n> <m>'", line_number);
      std::int64_t nn = parse_int(fields[2], "vertex count", line_number);
      declared_arcs = parse_int(fields[3], "arc count", line_number);
      if (nn < 2) throw ParseError("vertex count must be at least 2", line_number);
      n = static_cast<int>(nn);
    } else if (fields[0] == "n") {
      if (n < 0) throw ParseError("node designator before problem line", line_number);
      if (fields.size() != 3) throw ParseError("node line must read 'n <id> s|t'", line_number);
      std::int64_t id = parse_int(fields[1], "node id", line_number);
      if (id < 1 || id > n) throw ParseError("node id out of range", line_number);
      if (fields[2] == "s")
        s = static_cast<int>(id - 1);
      else if (fields[2] == "t")
        t = static_cast<int>(id - 1);
      else
        throw ParseError("node designator must be 's' or 't'", line_number);
    } else if (fields[0] == "a") {
      if (n < 0) throw ParseError("arc line before problem line", line_number);
      if (fields.size() != 4) throw ParseError("arc line must read 'a <u> <v> <cap>'", line_number);
      std::int64_t u = parse_int(fields[1], "arc tail", line_number);
      std::int64_t v = parse_int(fields[2], "arc head", line_number);
      std::int64_t cap = parse_int(fields[3], "arc capacity", line_number);
      if (u < 1 || u > n || v < 1 || v > n)
        throw ParseError("arc endpoint out of range", line_number);
      if (u == v) throw ParseError("self-loop arcs are not allowed", line_number);
      if (cap < 1) throw ParseError("arc capacity must be a positive integer", line_number);
      edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), cap});
    } else {
      throw ParseError("unknown line type '" + std::string(fields[0]) + "'", line_number);
    }
    if (end == text.size()) break;
  }

  if (n < 0) throw ParseError("missing problem line", line_number);
  if (s < 0) throw ParseError("missing source designator", line_number);
  if (t < 0) throw ParseError("missing sink designator", line_number);
  if (declared_arcs >= 0 && declared_arcs != static_cast<std::int64_t>(edges.size()))
    throw ParseError("arc count mismatch: declared " + std::to_string(declared_arcs) +
                         ", found " + std::to_string(edges.size()),
                     line_number);
  try {
    return Graph(n, std::move(edges), s, t);
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what(), line_number);
  }
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p max " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  out << "n " << g.source() + 1 << " s\n";
  out << "n " << g.sink() + 1 << " t\n";
  for (const EdgeSpec& e : g.edges())
    out << "a " << e.tail + 1 << ' ' << e.head + 1 << ' ' << e.capacity << '\n';
  return out.str();
}

}  // namespace eflow

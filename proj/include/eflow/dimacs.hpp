#pragma once

#include <string>
#include <string_view>

#include "eflow/graph.hpp"

namespace eflow {

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& message, int line_number)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

// DIMACS max-flow format: `c` comment lines, one `p max <n> <m>` problem
// line, `n <id> s` / `n <id> t` node designators (1-based ids), and
// `a <u> <v> <cap>` arc lines read as undirected capacitated edges.
// Duplicate arcs stay as parallel edges.
Graph parse_dimacs(std::string_view text);

std::string to_dimacs(const Graph& g);

}  // namespace eflow

#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "cbn/digraph.hpp"

namespace cbn {

// Text edge lists: one "u v" pair per line (edge u -> v), '#' starts a
// comment running to the end of the line, and an optional "n <count>" header fixes the vertex count
// (otherwise it is one more than the largest index). Throws GraphError with
// the offending line number.
Digraph parse_edge_list(std::istream& in);
Digraph parse_edge_list(std::string_view text);
Digraph read_edge_list_file(const std::string& path);

// "n <count>" header followed by edges in (from, to) order.
std::string format_edge_list(const Digraph& g);

} // namespace cbn

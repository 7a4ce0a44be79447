#pragma once
#include <iosfwd>
#include <string>

#include "ntst/instance.hpp"

namespace ntst {

/// Text format, one directive per line:
///   c <comment>            ignored
///   p ntst <n> <m>         exactly once, before any other directive
///   e <u> <v> [w]          1-based endpoints; optional positive weight
///                          (integer, fraction a/b, or decimal)
///   nt <v>                 marks a vertex that must be internal
/// Edges are numbered by their position among the e lines, starting at 1.
Instance parseInstance(std::istream& in);
Instance parseInstanceFile(const std::string& path);
std::string renderInstance(const Instance& inst);
void writeInstanceFile(const std::string& path, const Instance& inst);

/// Whitespace-separated 1-based edge ids; c-comment lines allowed.
EdgeSet parseEdgeList(std::istream& in, int numEdges);
EdgeSet parseEdgeListFile(const std::string& path, int numEdges);
std::string renderEdgeList(const EdgeSet& edges);

}  // namespace ntst

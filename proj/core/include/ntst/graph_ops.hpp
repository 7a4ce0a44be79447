#pragma once
#include <vector>

#include "ntst/instance.hpp"

namespace ntst {

bool isConnected(const MultiGraph& g);

/// True iff `t` is a spanning tree of inst.graph in which every marked vertex
/// has degree >= 2. Unknown edge ids raise InputError.
bool isAdmissibleSpanningTree(const Instance& inst, const EdgeSet& t);

/// Completes the acyclic edge set `f` to a spanning tree greedily (ascending
/// edge ids). Cyclic `f` raises PreconditionError; a disconnected graph raises
/// InputError. Deterministic.
EdgeSet extendForestToSpanningTree(const MultiGraph& g, const EdgeSet& f);

/// Result of a graph rewrite. vertexMap/edgeMap send old ids to new ids; -1
/// marks removed items. New ids are dense and follow old-id order, so rewrites
/// are deterministic and traces compose.
struct RewriteResult {
  MultiGraph graph;
  std::vector<int> vertexMap;
  std::vector<int> edgeMap;
};

/// Subgraph induced by keep[v] != 0; drops all other vertices and their edges.
RewriteResult inducedSubgraph(const MultiGraph& g, const std::vector<char>& keep);

/// Contracts every edge in `f` (merging endpoint classes), drops the `f` edges
/// themselves, and removes any self-loop this produces. Parallel edges are
/// retained. Surviving edges keep their relative order.
RewriteResult contractEdges(const MultiGraph& g, const EdgeSet& f);

/// Number of spanning trees that contain every edge of the forest `f`
/// (statistics helper for contraction tests): not exported; see counting.

}  // namespace ntst

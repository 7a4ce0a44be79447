#pragma once

#include <cstdint>
#include <vector>

namespace ntst {

// Dinic maximum flow on a directed graph with integer capacities.
//
// Vertices are 0..n-1.  Edges are added one at a time; each addEdge returns an
// id that can be used to query the flow over that edge after run().
class MaxFlow {
 public:
  explicit MaxFlow(int n);

  // Adds a directed edge from `from` to `to` with the given capacity and
  // returns its id.
  int addEdge(int from, int to, std::int64_t capacity);

  // Computes the maximum flow from s to t and returns its value.  May be
  // called only once per instance.
  std::int64_t run(int s, int t);

  // Flow routed over the edge with the given id (valid after run()).
  std::int64_t flowOn(int edgeId) const;

  // Vertices reachable from s in the residual graph (valid after run()).
  // Complements the source side of a minimum cut.
  std::vector<char> minCutSourceSide(int s) const;

  int numVertices() const { return static_cast<int>(head_.size()); }

 private:
  struct Arc {
    int to;
    std::int64_t cap;  // residual capacity
    int next;          // next arc id in the adjacency list, -1 at the end
  };

  bool buildLevels(int s, int t);
  std::int64_t augment(int v, int t, std::int64_t limit);

  std::vector<Arc> arcs_;      // arc 2i is the forward edge i, 2i+1 its reverse
  std::vector<int> head_;      // per-vertex adjacency list head
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<std::int64_t> originalCap_;
  bool ran_ = false;
};

// A directed edge with a lower and an upper capacity bound.
struct BoundedEdge {
  int from = 0;
  int to = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

// Feasibility of a circulation with per-edge lower and upper bounds.
//
// Returns true iff there is a circulation respecting every bound, and if
// `flowOut` is non-null stores the per-edge flow of one such circulation.
// Uses the standard reduction: route the mandatory lower bounds through a
// super source/sink and check that they saturate.
bool boundedCirculationFeasible(int n, const std::vector<BoundedEdge>& edges,
                                std::vector<std::int64_t>* flowOut = nullptr);

}  // namespace ntst

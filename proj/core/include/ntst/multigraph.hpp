#pragma once
#include <utility>
#include <vector>

#include "ntst/errors.hpp"

namespace ntst {

/// Undirected multigraph on dense vertex ids 0..n-1. Parallel edges are
/// permitted and keep distinct ids; self-loops are rejected. Edge ids are
/// dense 0..m-1 in insertion order. Values are immutable after construction
/// (graph rewrites build new graphs and return renaming maps).
class MultiGraph {
 public:
  struct Edge {
    int a = -1, b = -1;
    bool operator==(const Edge& o) const = default;
  };

  MultiGraph() = default;
  explicit MultiGraph(int n) : inc_(n >= 0 ? n : throw InputError("negative vertex count")) {}
  MultiGraph(int n, const std::vector<std::pair<int, int>>& es) : MultiGraph(n) {
    for (auto& [a, b] : es) addEdge(a, b);
  }

  int numVertices() const { return (int)inc_.size(); }
  int numEdges() const { return (int)edges_.size(); }

  /// Build-phase only; returns the new edge id.
  int addEdge(int a, int b) {
    checkVertex(a); checkVertex(b);
    if (a == b) throw InputError("self-loops are not allowed");
    int id = (int)edges_.size();
    edges_.push_back({a, b});
    inc_[a].push_back(id);
    inc_[b].push_back(id);
    return id;
  }

  const Edge& edge(int e) const {
    checkEdge(e);
    return edges_[e];
  }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incidentEdges(int v) const {
    checkVertex(v);
    return inc_[v];
  }
  int degree(int v) const { return (int)incidentEdges(v).size(); }
  int otherEnd(int e, int v) const {
    const Edge& ed = edge(e);
    if (ed.a == v) return ed.b;
    if (ed.b == v) return ed.a;
    throw InputError("vertex not an endpoint of edge");
  }
  bool hasVertex(int v) const { return v >= 0 && v < numVertices(); }
  bool hasEdge(int e) const { return e >= 0 && e < numEdges(); }

  bool operator==(const MultiGraph& o) const {
    return inc_.size() == o.inc_.size() && edges_ == o.edges_;
  }

 private:
  void checkVertex(int v) const {
    if (!hasVertex(v)) throw InputError("vertex id out of range");
  }
  void checkEdge(int e) const {
    if (!hasEdge(e)) throw InputError("edge id out of range");
  }
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> inc_;
};

}  // namespace ntst

#pragma once
#include <optional>
#include <vector>

#include "ntst/graph_ops.hpp"
#include "ntst/instance.hpp"

namespace ntst::testing {

inline MultiGraph pathGraph(int n) {
  MultiGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.addEdge(i, i + 1);
  return g;
}

inline MultiGraph cycleGraph(int n) {
  MultiGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  return g;
}

inline MultiGraph completeGraph(int n) {
  MultiGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.addEdge(i, j);
  return g;
}

inline Instance makeInst(MultiGraph g, const std::vector<int>& ntIds,
                         std::optional<std::vector<Weight>> w = std::nullopt) {
  std::vector<char> nt(g.numVertices(), 0);
  for (int v : ntIds) nt[v] = 1;
  return Instance(std::move(g), std::move(nt), std::move(w));
}

/// True iff `t` has n-1 edges that connect all of g acyclically.
inline bool spansAsTree(const MultiGraph& g, const EdgeSet& t) {
  int n = g.numVertices();
  if ((int)t.size() != n - 1) return false;
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int comps = n;
  for (int e : t) {
    int a = find(g.edge(e).a), b = find(g.edge(e).b);
    if (a == b) return false;
    parent[a] = b;
    --comps;
  }
  return comps == 1;
}

/// Every spanning tree, by explicit subset enumeration (small m only).
inline std::vector<EdgeSet> allSpanningTrees(const MultiGraph& g) {
  std::vector<EdgeSet> out;
  int n = g.numVertices(), m = g.numEdges();
  if (n == 0) return out;
  if (n == 1) {
    out.push_back({});
    return out;
  }
  if (m < n - 1) return out;
  std::vector<int> pick(n - 1);
  for (int i = 0; i < n - 1; ++i) pick[i] = i;
  while (true) {
    EdgeSet t(pick.begin(), pick.end());
    if (spansAsTree(g, t)) out.push_back(t);
    int i = n - 2;
    while (i >= 0 && pick[i] == m - (n - 1) + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

inline int treeDegree(const MultiGraph& g, const EdgeSet& t, int v) {
  int d = 0;
  for (int e : t)
    if (g.edge(e).a == v || g.edge(e).b == v) ++d;
  return d;
}

}  // namespace ntst::testing

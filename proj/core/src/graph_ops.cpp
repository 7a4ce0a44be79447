#include "ntst/graph_ops.hpp"

#include <queue>

#include "ntst/dsu.hpp"

namespace ntst {

bool isConnected(const MultiGraph& g) {
  int n = g.numVertices();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : g.incidentEdges(v)) {
      int u = g.otherEnd(e, v);
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        q.push(u);
      }
    }
  }
  return reached == n;
}

bool isAdmissibleSpanningTree(const Instance& inst, const EdgeSet& t) {
  const MultiGraph& g = inst.graph;
  int n = g.numVertices();
  std::vector<int> deg(n, 0);
  Dsu dsu(n);
  std::vector<char> used(g.numEdges(), 0);
  for (int e : t) {
    if (!g.hasEdge(e)) throw InputError("tree refers to an unknown edge id");
    if (used[e]) return false;  // duplicate edge
    used[e] = 1;
    const auto& ed = g.edge(e);
    if (!dsu.unite(ed.a, ed.b)) return false;  // cycle
    ++deg[ed.a];
    ++deg[ed.b];
  }
  if ((int)t.size() != n - 1) return false;  // with acyclicity, implies spanning
  for (int v = 0; v < n; ++v)
    if (inst.isNt(v) && deg[v] < 2) return false;
  return true;
}

EdgeSet extendForestToSpanningTree(const MultiGraph& g, const EdgeSet& f) {
  int n = g.numVertices();
  Dsu dsu(n);
  EdgeSet tree;
  for (int e : f) {
    const auto& ed = g.edge(e);
    if (!dsu.unite(ed.a, ed.b)) throw PreconditionError("edge set to extend is not a forest");
    tree.push_back(e);
  }
  for (int e = 0; e < g.numEdges() && (int)tree.size() < n - 1; ++e) {
    const auto& ed = g.edge(e);
    if (dsu.unite(ed.a, ed.b)) tree.push_back(e);
  }
  if ((int)tree.size() != n - 1) throw InputError("graph is not connected");
  return normalizedEdgeSet(std::move(tree));
}

RewriteResult inducedSubgraph(const MultiGraph& g, const std::vector<char>& keep) {
  if ((int)keep.size() != g.numVertices()) throw InputError("keep mask size mismatch");
  RewriteResult r;
  r.vertexMap.assign(g.numVertices(), -1);
  int nn = 0;
  for (int v = 0; v < g.numVertices(); ++v)
    if (keep[v]) r.vertexMap[v] = nn++;
  r.graph = MultiGraph(nn);
  r.edgeMap.assign(g.numEdges(), -1);
  for (int e = 0; e < g.numEdges(); ++e) {
    const auto& ed = g.edge(e);
    if (keep[ed.a] && keep[ed.b])
      r.edgeMap[e] = r.graph.addEdge(r.vertexMap[ed.a], r.vertexMap[ed.b]);
  }
  return r;
}

RewriteResult contractEdges(const MultiGraph& g, const EdgeSet& f) {
  Dsu dsu(g.numVertices());
  std::vector<char> contracted(g.numEdges(), 0);
  for (int e : f) {
    const auto& ed = g.edge(e);
    contracted[e] = 1;
    dsu.unite(ed.a, ed.b);
  }
  RewriteResult r;
  r.vertexMap.assign(g.numVertices(), -1);
  int nn = 0;
  std::vector<int> repOf(g.numVertices(), -1);  // dsu root -> new id
  for (int v = 0; v < g.numVertices(); ++v) {
    int root = dsu.find(v);
    if (repOf[root] < 0) repOf[root] = nn++;
    r.vertexMap[v] = repOf[root];
  }
  r.graph = MultiGraph(nn);
  r.edgeMap.assign(g.numEdges(), -1);
  for (int e = 0; e < g.numEdges(); ++e) {
    if (contracted[e]) continue;
    const auto& ed = g.edge(e);
    int a = r.vertexMap[ed.a], b = r.vertexMap[ed.b];
    if (a == b) continue;  // self-loop produced by contraction: dropped
    r.edgeMap[e] = r.graph.addEdge(a, b);
  }
  return r;
}

}  // namespace ntst

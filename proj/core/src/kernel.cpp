#include "ntst/kernel.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "ntst/dsu.hpp"
#include "ntst/errors.hpp"
#include "ntst/graph_ops.hpp"
#include "ntst/maxflow.hpp"

namespace ntst {

const char* stepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::MarkInfeasible: return "mark-infeasible";
    case StepKind::CanonicalFeasible: return "canonical-feasible";
    case StepKind::ClosedNeighborhood: return "closed-neighbourhood";
    case StepKind::TwoExpansion: return "two-expansion";
    case StepKind::DeleteEdges: return "delete-edges";
    case StepKind::CollapseParallel: return "collapse-parallel";
    case StepKind::RemovePendant: return "remove-pendant";
    case StepKind::RemovePendantRelax: return "remove-pendant-relax";
    case StepKind::ContractNtPair: return "contract-marked-pair";
    case StepKind::ContractBridge: return "contract-bridge";
    case StepKind::ContractPathPair: return "contract-path-pair";
  }
  return "unknown";
}

namespace {

Instance canonicalInfeasible() {
  return Instance(MultiGraph(1), std::vector<char>{1});
}

Instance canonicalFeasible() {
  return Instance(MultiGraph(1), std::vector<char>{0});
}

std::vector<int> invertMap(const std::vector<int>& oldToNew, int newSize) {
  std::vector<int> out((size_t)newSize, -1);
  for (int i = 0; i < (int)oldToNew.size(); ++i)
    if (oldToNew[i] >= 0) out[(size_t)oldToNew[i]] = i;
  return out;
}

TraceStep markInfeasibleStep(const Instance& cur, std::string rule) {
  TraceStep st;
  st.kind = StepKind::MarkInfeasible;
  st.rule = std::move(rule);
  st.before = cur;
  st.after = canonicalInfeasible();
  st.vertexToBefore = {-1};
  return st;
}

TraceStep canonicalFeasibleStep(const Instance& cur) {
  TraceStep st;
  st.kind = StepKind::CanonicalFeasible;
  st.rule = "no internal-degree demands remain; any spanning tree works";
  st.before = cur;
  st.after = canonicalFeasible();
  st.vertexToBefore = {-1};
  return st;
}

std::optional<TraceStep> infeasiblePrecheck(const Instance& cur) {
  if (!isConnected(cur.graph))
    return markInfeasibleStep(cur, "the graph is disconnected");
  int n = cur.numVertices(), k = cur.numNt();
  if (k > std::max(n - 2, 0))
    return markInfeasibleStep(cur, "every tree has at least two leaves, so at most n-2 vertices can be internal");
  for (int v = 0; v < n; ++v)
    if (cur.isNt(v) && cur.graph.degree(v) <= 1)
      return markInfeasibleStep(cur, "a marked vertex of degree at most one cannot become internal");
  return std::nullopt;
}

/// Smallest edge id joining u and v.
int minEdgeBetween(const MultiGraph& g, int u, int v) {
  for (int e : g.incidentEdges(u))
    if (g.otherEnd(e, u) == v) return e;
  throw InternalError("expected an edge between two vertices");
}

/// Removes the listed edges, keeping vertices and edge order.
TraceStep dropEdgesStep(const Instance& cur, StepKind kind, std::string rule, EdgeSet ids) {
  TraceStep st;
  st.kind = kind;
  st.rule = std::move(rule);
  st.before = cur;
  st.deletedEdges = normalizedEdgeSet(std::move(ids));
  const MultiGraph& g = cur.graph;
  std::vector<char> drop(g.numEdges(), 0);
  for (int e : st.deletedEdges) drop[(size_t)e] = 1;
  MultiGraph h(g.numVertices());
  for (int e = 0; e < g.numEdges(); ++e) {
    if (drop[(size_t)e]) continue;
    const MultiGraph::Edge& ed = g.edge(e);
    h.addEdge(ed.a, ed.b);
    st.edgeToBefore.push_back(e);
  }
  st.vertexToBefore.resize(g.numVertices());
  for (int v = 0; v < g.numVertices(); ++v) st.vertexToBefore[(size_t)v] = v;
  st.after = Instance(std::move(h), cur.nt);
  return st;
}

TraceStep removePendantStep(const Instance& cur, int leaf, int neighbour, bool relax) {
  TraceStep st;
  st.kind = relax ? StepKind::RemovePendantRelax : StepKind::RemovePendant;
  st.rule = relax ? "a pendant free vertex hangs off a marked vertex; drop it and unmark the neighbour"
                  : "a pendant free vertex is always attached the same way; drop it";
  st.before = cur;
  st.xs = {neighbour};
  st.ys = {leaf};
  st.deletedEdges = {cur.graph.incidentEdges(leaf)[0]};
  std::vector<char> keep(cur.numVertices(), 1);
  keep[(size_t)leaf] = 0;
  RewriteResult rr = inducedSubgraph(cur.graph, keep);
  std::vector<char> nt(rr.graph.numVertices(), 0);
  for (int v = 0; v < cur.numVertices(); ++v)
    if (rr.vertexMap[v] >= 0) nt[(size_t)rr.vertexMap[v]] = cur.nt[(size_t)v];
  if (relax) nt[(size_t)rr.vertexMap[neighbour]] = 0;
  st.vertexToBefore = invertMap(rr.vertexMap, rr.graph.numVertices());
  st.edgeToBefore = invertMap(rr.edgeMap, rr.graph.numEdges());
  st.after = Instance(rr.graph, std::move(nt));
  return st;
}

TraceStep contractStep(const Instance& cur, StepKind kind, std::string rule, int edgeId) {
  TraceStep st;
  st.kind = kind;
  st.rule = std::move(rule);
  st.before = cur;
  st.contractedEdges = {edgeId};
  RewriteResult rr = contractEdges(cur.graph, st.contractedEdges);
  std::vector<char> nt(rr.graph.numVertices(), 0);
  for (int v = 0; v < cur.numVertices(); ++v)
    if (cur.nt[(size_t)v]) nt[(size_t)rr.vertexMap[v]] = 1;  // merged vertex keeps any mark
  internalCheck(rr.graph.numEdges() == cur.numEdges() - 1,
                "contracting a reduction edge must drop exactly that edge");
  st.vertexToBefore = invertMap(rr.vertexMap, rr.graph.numVertices());
  st.edgeToBefore = invertMap(rr.edgeMap, rr.graph.numEdges());
  st.after = Instance(rr.graph, std::move(nt));
  return st;
}

/// Deletes the expansion targets, pins the expanded vertices to the root, and
/// unmarks them.
TraceStep applyExpansion(const Instance& cur, const Expansion& exp, int root) {
  TraceStep st;
  st.kind = StepKind::TwoExpansion;
  st.rule = "two-expansion: delete the expansion targets and pin the expanded vertices to the root";
  st.before = cur;
  st.rootBefore = root;
  st.xs = exp.x;
  st.ys = exp.y;
  const MultiGraph& g = cur.graph;
  for (size_t i = 0; i < exp.x.size(); ++i)
    for (int y : exp.pairs[i]) st.matchingEdges.push_back(minEdgeBetween(g, exp.x[i], y));
  st.matchingEdges = normalizedEdgeSet(std::move(st.matchingEdges));
  std::vector<char> keep(cur.numVertices(), 1);
  for (int y : exp.y) keep[(size_t)y] = 0;
  RewriteResult rr = inducedSubgraph(g, keep);
  MultiGraph h = rr.graph;
  st.edgeToBefore = invertMap(rr.edgeMap, h.numEdges());
  st.rootAfter = rr.vertexMap[root];
  for (int x : exp.x) {
    h.addEdge(rr.vertexMap[x], st.rootAfter);
    st.edgeToBefore.push_back(-1);
  }
  std::vector<char> nt(h.numVertices(), 0);
  for (int v = 0; v < cur.numVertices(); ++v)
    if (rr.vertexMap[v] >= 0) nt[(size_t)rr.vertexMap[v]] = cur.nt[(size_t)v];
  for (int x : exp.x) nt[(size_t)rr.vertexMap[x]] = 0;
  st.vertexToBefore = invertMap(rr.vertexMap, h.numVertices());
  st.after = Instance(std::move(h), std::move(nt));
  return st;
}

}  // namespace

void checkTwoExpansion(const MultiGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                       const Expansion& e) {
  internalCheck(!e.x.empty(), "expansion must be nonempty");
  internalCheck(e.pairs.size() == e.x.size(), "expansion pairs must align with its x side");
  internalCheck(e.y.size() == 2 * e.x.size(), "expansion must own two targets per x vertex");
  std::vector<char> inA(g.numVertices(), 0), inB(g.numVertices(), 0), inX(g.numVertices(), 0),
      inY(g.numVertices(), 0);
  for (int v : a) inA[(size_t)v] = 1;
  for (int v : b) inB[(size_t)v] = 1;
  for (int v : e.x) {
    internalCheck(inA[(size_t)v] && !inX[(size_t)v], "expansion x side must be a subset of a");
    inX[(size_t)v] = 1;
  }
  for (int v : e.y) {
    internalCheck(inB[(size_t)v] && !inY[(size_t)v], "expansion y side must be a subset of b");
    inY[(size_t)v] = 1;
  }
  std::vector<int> fromPairs;
  for (size_t i = 0; i < e.x.size(); ++i) {
    internalCheck(e.pairs[i][0] != e.pairs[i][1], "expansion targets must be private");
    for (int y : e.pairs[i]) {
      internalCheck(inY[(size_t)y], "expansion pair targets must lie in y");
      bool adjacent = false;
      for (int ed : g.incidentEdges(e.x[i]))
        if (g.otherEnd(ed, e.x[i]) == y) adjacent = true;
      internalCheck(adjacent, "expansion pair must be an edge");
      fromPairs.push_back(y);
    }
  }
  std::sort(fromPairs.begin(), fromPairs.end());
  std::vector<int> ys = e.y;
  std::sort(ys.begin(), ys.end());
  internalCheck(fromPairs == ys, "expansion targets must be exactly the matched vertices");
  for (int y : e.y)
    for (int ed : g.incidentEdges(y)) {
      int w = g.otherEnd(ed, y);
      internalCheck(!inA[(size_t)w] || inX[(size_t)w],
                    "expansion targets may only neighbour the expanded set on the a side");
    }
}

std::optional<Expansion> findTwoExpansion(const MultiGraph& g, const std::vector<int>& a,
                                          const std::vector<int>& b) {
  if (a.empty() || b.size() < 2 * a.size()) return std::nullopt;
  int n = g.numVertices();
  std::vector<int> aPos(n, -1), bPos(n, -1);
  for (int i = 0; i < (int)a.size(); ++i) {
    require(g.hasVertex(a[i]) && aPos[(size_t)a[i]] < 0, "expansion a side must be distinct vertices");
    aPos[(size_t)a[i]] = i;
  }
  for (int j = 0; j < (int)b.size(); ++j) {
    require(g.hasVertex(b[j]) && bPos[(size_t)b[j]] < 0 && aPos[(size_t)b[j]] < 0,
            "expansion sides must be disjoint vertex sets");
    bPos[(size_t)b[j]] = j;
  }
  std::vector<std::vector<int>> nbr(a.size());
  for (int i = 0; i < (int)a.size(); ++i) {
    for (int e : g.incidentEdges(a[i])) {
      int j = bPos[(size_t)g.otherEnd(e, a[i])];
      if (j >= 0) nbr[(size_t)i].push_back(j);
    }
    std::sort(nbr[(size_t)i].begin(), nbr[(size_t)i].end());
    nbr[(size_t)i].erase(std::unique(nbr[(size_t)i].begin(), nbr[(size_t)i].end()),
                         nbr[(size_t)i].end());
  }
  std::vector<char> bTouched(b.size(), 0);
  for (const std::vector<int>& row : nbr)
    for (int j : row) bTouched[(size_t)j] = 1;
  for (char t : bTouched)
    if (!t) return std::nullopt;

  int source = 0, sink = 1 + (int)a.size() + (int)b.size();
  MaxFlow mf(sink + 1);
  std::int64_t big = 2 * (std::int64_t)a.size() + 1;
  for (int i = 0; i < (int)a.size(); ++i) mf.addEdge(source, 1 + i, 2);
  std::vector<std::pair<int, int>> pairArcs;
  std::vector<int> pairArcIds;
  for (int i = 0; i < (int)a.size(); ++i)
    for (int j : nbr[(size_t)i]) {
      pairArcIds.push_back(mf.addEdge(1 + i, 1 + (int)a.size() + j, big));
      pairArcs.push_back({i, j});
    }
  for (int j = 0; j < (int)b.size(); ++j) mf.addEdge(1 + (int)a.size() + j, sink, 1);
  std::int64_t flow = mf.run(source, sink);
  internalCheck(flow <= 2 * (std::int64_t)a.size(), "expansion flow exceeded its bound");
  if (flow == 2 * (std::int64_t)a.size()) {
    Expansion ex;
    ex.x = a;
    ex.pairs.assign(a.size(), {-1, -1});
    for (size_t t = 0; t < pairArcs.size(); ++t) {
      if (mf.flowOn(pairArcIds[t]) <= 0) continue;
      auto [i, j] = pairArcs[t];
      std::array<int, 2>& slot = ex.pairs[(size_t)i];
      internalCheck(slot[1] < 0, "each expanded vertex owns exactly two targets");
      slot[slot[0] < 0 ? 0 : 1] = b[(size_t)j];
      ex.y.push_back(b[(size_t)j]);
    }
    std::sort(ex.y.begin(), ex.y.end());
    checkTwoExpansion(g, a, b, ex);
    return ex;
  }
  std::vector<char> srcSide = mf.minCutSourceSide(source);
  std::vector<int> a2, b2;
  for (int i = 0; i < (int)a.size(); ++i)
    if (!srcSide[(size_t)(1 + i)]) a2.push_back(a[i]);
  for (int j = 0; j < (int)b.size(); ++j)
    if (!srcSide[(size_t)(1 + (int)a.size() + j)]) b2.push_back(b[j]);
  internalCheck(!a2.empty() && a2.size() < a.size() && b2.size() >= 2 * a2.size(),
                "deficient side of the expansion cut is malformed");
  return findTwoExpansion(g, a2, b2);
}

TraceStep closedNeighborhoodReduce(const Instance& inst) {
  require(inst.numNt() > 0, "closed-neighbourhood restriction needs a marked vertex");
  require(isConnected(inst.graph), "closed-neighbourhood restriction needs a connected graph");
  const MultiGraph& g = inst.graph;
  int n = g.numVertices();
  std::vector<char> keep(n, 0);
  for (int v = 0; v < n; ++v)
    if (inst.isNt(v)) {
      keep[(size_t)v] = 1;
      for (int e : g.incidentEdges(v)) keep[(size_t)g.otherEnd(e, v)] = 1;
    }
  std::vector<int> boundary;
  for (int v = 0; v < n; ++v)
    if (keep[(size_t)v] && !inst.isNt(v)) boundary.push_back(v);
  RewriteResult rr = inducedSubgraph(g, keep);
  int root = rr.graph.numVertices();
  MultiGraph h(root + 1);
  for (const MultiGraph::Edge& e : rr.graph.edges()) h.addEdge(e.a, e.b);
  TraceStep st;
  st.kind = StepKind::ClosedNeighborhood;
  st.rule = "restrict to the closed neighbourhood of the marked set; a fresh root stands in for the rest";
  st.before = inst;
  st.edgeToBefore = invertMap(rr.edgeMap, rr.graph.numEdges());
  for (int x : boundary) {
    h.addEdge(rr.vertexMap[x], root);
    st.edgeToBefore.push_back(-1);
  }
  std::vector<char> nt(h.numVertices(), 0);
  for (int v = 0; v < n; ++v)
    if (rr.vertexMap[v] >= 0) nt[(size_t)rr.vertexMap[v]] = inst.nt[(size_t)v];
  st.vertexToBefore = invertMap(rr.vertexMap, root);
  st.vertexToBefore.push_back(-1);
  st.rootAfter = root;
  st.after = Instance(std::move(h), std::move(nt));
  return st;
}

KernelResult kernelizeK(const Instance& input) {
  require(input.hasUnitWeights(), "kernelization handles unweighted instances only");
  KernelResult res;
  res.kernel = "k";
  Instance cur = stripWeights(input);
  auto push = [&](TraceStep st) {
    res.steps.push_back(std::move(st));
    cur = res.steps.back().after;
  };
  if (auto bad = infeasiblePrecheck(cur)) {
    push(std::move(*bad));
    res.verdict = KernelVerdict::Infeasible;
    res.reduced = cur;
    return res;
  }
  for (int guard = 0;; ++guard) {
    internalCheck(guard <= input.numNt() + 2, "3k kernel failed to converge");
    if (cur.numNt() == 0) {
      internalCheck(isConnected(cur.graph), "reduction must preserve connectivity");
      if (!(cur == canonicalFeasible())) push(canonicalFeasibleStep(cur));
      break;
    }
    TraceStep cnr = closedNeighborhoodReduce(cur);
    if (!(cnr.after == cur)) push(std::move(cnr));
    int n = cur.numVertices(), k = cur.numNt();
    if (n <= 3 * k) break;
    std::vector<int> a = cur.ntList(), b;
    for (int v = 0; v + 1 < n; ++v)
      if (!cur.isNt(v)) b.push_back(v);
    auto exp = findTwoExpansion(cur.graph, a, b);
    internalCheck(exp.has_value(), "a 2-expansion must exist while the instance is large");
    push(applyExpansion(cur, *exp, n - 1));
  }
  if (cur.numNt() >= 1)
    internalCheck(cur.numVertices() <= 3 * cur.numNt(), "3k size bound violated");
  else
    internalCheck(cur.numVertices() == 1, "mark-free kernel must be the one-vertex instance");
  res.reduced = cur;
  res.verdict = res.steps.empty() ? KernelVerdict::Unchanged : KernelVerdict::Reduced;
  return res;
}

KernelResult kernelizeVC(const Instance& input) {
  require(input.hasUnitWeights(), "kernelization handles unweighted instances only");
  KernelResult res;
  res.kernel = "vc";
  Instance cur = stripWeights(input);
  std::vector<int> cover;  // current cover, root included, ids in `cur`
  bool coverReady = false;
  auto push = [&](TraceStep st) {
    if (coverReady) {
      std::vector<int> fwd((size_t)st.before.numVertices(), -1);
      for (int v = 0; v < (int)st.vertexToBefore.size(); ++v)
        if (st.vertexToBefore[(size_t)v] >= 0) fwd[(size_t)st.vertexToBefore[(size_t)v]] = v;
      std::vector<int> next;
      for (int v : cover)
        if (fwd[(size_t)v] >= 0) next.push_back(fwd[(size_t)v]);
      if (st.rootAfter >= 0) next.push_back(st.rootAfter);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      cover = std::move(next);
    }
    res.steps.push_back(std::move(st));
    cur = res.steps.back().after;
  };
  if (auto bad = infeasiblePrecheck(cur)) {
    push(std::move(*bad));
    res.verdict = KernelVerdict::Infeasible;
    res.reduced = cur;
    return res;
  }
  bool collapsed = false;
  for (int guard = 0;; ++guard) {
    internalCheck(guard <= input.numNt() + 2, "vertex-cover kernel failed to converge");
    if (cur.numNt() == 0) {
      internalCheck(isConnected(cur.graph), "reduction must preserve connectivity");
      if (!(cur == canonicalFeasible())) push(canonicalFeasibleStep(cur));
      collapsed = true;
      break;
    }
    TraceStep cnr = closedNeighborhoodReduce(cur);
    if (!(cnr.after == cur)) push(std::move(cnr));
    int n = cur.numVertices();
    int root = n - 1;
    {
      EdgeSet freeFree;
      for (int e = 0; e < cur.numEdges(); ++e) {
        const MultiGraph::Edge& ed = cur.graph.edge(e);
        if (ed.a != root && ed.b != root && !cur.isNt(ed.a) && !cur.isNt(ed.b))
          freeFree.push_back(e);
      }
      if (!freeFree.empty())
        push(dropEdgesStep(cur, StepKind::DeleteEdges,
                           "an edge between two free boundary vertices can be swapped for a root edge",
                           std::move(freeFree)));
    }
    if (!coverReady) {
      // Maximal matching on the rootless part, then prune redundant
      // endpoints in id order.
      std::vector<char> used((size_t)n, 0);
      std::vector<char> inS((size_t)n, 0);
      for (int e = 0; e < cur.numEdges(); ++e) {
        const MultiGraph::Edge& ed = cur.graph.edge(e);
        if (ed.a == root || ed.b == root) continue;
        if (!used[(size_t)ed.a] && !used[(size_t)ed.b]) {
          used[(size_t)ed.a] = used[(size_t)ed.b] = 1;
          inS[(size_t)ed.a] = inS[(size_t)ed.b] = 1;
        }
      }
      for (int v = 0; v < n; ++v) {
        if (!inS[(size_t)v]) continue;
        bool redundant = true;
        for (int e : cur.graph.incidentEdges(v)) {
          int w = cur.graph.otherEnd(e, v);
          if (w != root && !inS[(size_t)w]) {
            redundant = false;
            break;
          }
        }
        if (redundant) inS[(size_t)v] = 0;
      }
      cover.clear();
      for (int v = 0; v < n; ++v)
        if (inS[(size_t)v]) cover.push_back(v);
      cover.push_back(root);
      coverReady = true;
    }
    {
      std::vector<char> inCover((size_t)n, 0);
      for (int v : cover) inCover[(size_t)v] = 1;
      for (int e = 0; e < cur.numEdges(); ++e) {
        const MultiGraph::Edge& ed = cur.graph.edge(e);
        internalCheck(inCover[(size_t)ed.a] || inCover[(size_t)ed.b],
                      "the maintained vertex cover lost an edge");
      }
      std::vector<int> markedOutside, aSide, b2;
      for (int v = 0; v < n; ++v) {
        if (inCover[(size_t)v]) {
          if (cur.isNt(v)) aSide.push_back(v);
          continue;
        }
        if (cur.isNt(v)) {
          markedOutside.push_back(v);
        } else {
          bool nextToMarked = false;
          for (int e : cur.graph.incidentEdges(v))
            if (cur.isNt(cur.graph.otherEnd(e, v))) nextToMarked = true;
          if (nextToMarked) b2.push_back(v);
        }
      }
      if ((int)markedOutside.size() >= (int)cover.size()) {
        push(markInfeasibleStep(
            cur, "more marked vertices outside the cover than cover vertices to host their tree edges"));
        res.verdict = KernelVerdict::Infeasible;
        res.reduced = cur;
        return res;
      }
      if (!aSide.empty() && b2.size() >= 2 * aSide.size()) {
        auto exp = findTwoExpansion(cur.graph, aSide, b2);
        internalCheck(exp.has_value(), "a 2-expansion must exist when the cover condition holds");
        push(applyExpansion(cur, *exp, root));
        continue;
      }
    }
    break;
  }
  if (!collapsed) {
    int sExit = (int)cover.size() - 1;
    internalCheck(cur.numVertices() <= 4 * sExit + 2, "vertex-cover size bound violated");
    int root = cur.numVertices() - 1;
    bool sawRoot = false;
    for (int v : cover) {
      if (v == root)
        sawRoot = true;
      else
        res.vcCover.push_back(v);
    }
    internalCheck(sawRoot, "the maintained cover must contain the root");
  }
  res.reduced = cur;
  res.verdict = res.steps.empty() ? KernelVerdict::Unchanged : KernelVerdict::Reduced;
  return res;
}

namespace {

/// Duplicate members of parallel bundles (everything but the smallest id).
EdgeSet duplicateParallelEdges(const MultiGraph& g) {
  std::map<std::pair<int, int>, int> first;
  EdgeSet dup;
  for (int e = 0; e < g.numEdges(); ++e) {
    const MultiGraph::Edge& ed = g.edge(e);
    std::pair<int, int> key{std::min(ed.a, ed.b), std::max(ed.a, ed.b)};
    if (!first.emplace(key, e).second) dup.push_back(e);
  }
  return dup;
}

bool isBridge(const MultiGraph& g, int skip) {
  const MultiGraph::Edge& ed = g.edge(skip);
  std::vector<char> seen((size_t)g.numVertices(), 0);
  std::vector<int> stack{ed.a};
  seen[(size_t)ed.a] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.incidentEdges(v)) {
      if (e == skip) continue;
      int w = g.otherEnd(e, v);
      if (!seen[(size_t)w]) {
        seen[(size_t)w] = 1;
        stack.push_back(w);
      }
    }
  }
  return !seen[(size_t)ed.b];
}

/// The unique neighbour of the degree-2 vertex v other than `avoid`;
/// -1 when both edges lead to `avoid`.
int otherNeighbour(const MultiGraph& g, int v, int avoid) {
  for (int e : g.incidentEdges(v)) {
    int w = g.otherEnd(e, v);
    if (w != avoid) return w;
  }
  return -1;
}

}  // namespace

KernelResult kernelizeML(const Instance& input) {
  require(input.hasUnitWeights(), "kernelization handles unweighted instances only");
  KernelResult res;
  res.kernel = "ml";
  Instance cur = stripWeights(input);
  auto push = [&](TraceStep st) {
    res.steps.push_back(std::move(st));
    cur = res.steps.back().after;
  };
  if (auto bad = infeasiblePrecheck(cur)) {
    push(std::move(*bad));
    res.verdict = KernelVerdict::Infeasible;
    res.reduced = cur;
    return res;
  }
  int budget = 2 * (input.numVertices() + input.numEdges()) + 4;
  for (int guard = 0;; ++guard) {
    internalCheck(guard <= budget, "degree-rule kernel failed to converge");
    const MultiGraph& g = cur.graph;
    int n = cur.numVertices();
    // (a) a marked vertex that cannot reach degree two
    {
      bool dead = false;
      for (int v = 0; v < n && !dead; ++v)
        if (cur.isNt(v) && g.degree(v) <= 1) dead = true;
      if (dead) {
        push(markInfeasibleStep(cur, "a marked vertex of degree at most one cannot become internal"));
        res.verdict = KernelVerdict::Infeasible;
        res.reduced = cur;
        return res;
      }
    }
    // parallel bundles carry no extra spanning-tree structure
    {
      EdgeSet dup = duplicateParallelEdges(g);
      if (!dup.empty()) {
        push(dropEdgesStep(cur, StepKind::CollapseParallel,
                           "parallel edges are interchangeable in any spanning tree", std::move(dup)));
        continue;
      }
    }
    // (b)/(c) pendant free vertices
    {
      int leaf = -1;
      for (int v = 0; v < n && leaf < 0; ++v)
        if (g.degree(v) == 1) leaf = v;
      if (leaf >= 0) {
        internalCheck(!cur.isNt(leaf), "a marked pendant vertex must have been rejected already");
        int u = g.otherEnd(g.incidentEdges(leaf)[0], leaf);
        push(removePendantStep(cur, leaf, u, cur.isNt(u)));
        continue;
      }
    }
    // (d) adjacent degree-2 marked pair: both their edges are forced
    {
      int hit = -1;
      for (int e = 0; e < cur.numEdges() && hit < 0; ++e) {
        const MultiGraph::Edge& ed = g.edge(e);
        if (g.degree(ed.a) == 2 && g.degree(ed.b) == 2 && cur.isNt(ed.a) && cur.isNt(ed.b)) hit = e;
      }
      if (hit >= 0) {
        push(contractStep(cur, StepKind::ContractNtPair,
                          "two adjacent degree-2 marked vertices force all their edges; contract the pair",
                          hit));
        continue;
      }
    }
    // (e) adjacent degree-2 free pair: contract a bridge, otherwise drop the edge
    {
      int hit = -1;
      for (int e = 0; e < cur.numEdges() && hit < 0; ++e) {
        const MultiGraph::Edge& ed = g.edge(e);
        if (g.degree(ed.a) == 2 && g.degree(ed.b) == 2 && !cur.isNt(ed.a) && !cur.isNt(ed.b)) hit = e;
      }
      if (hit >= 0) {
        if (isBridge(g, hit)) {
          push(contractStep(cur, StepKind::ContractBridge,
                            "a bridge between two free degree-2 vertices sits in every spanning tree",
                            hit));
        } else {
          push(dropEdgesStep(cur, StepKind::DeleteEdges,
                             "a non-bridge edge between two free degree-2 vertices can be swapped away",
                             {hit}));
        }
        continue;
      }
    }
    // (f) four consecutive degree-2 vertices: contract at the marked end
    {
      bool fired = false;
      for (int e = 0; e < cur.numEdges() && !fired; ++e) {
        const MultiGraph::Edge& ed = g.edge(e);
        int q = ed.a, r = ed.b;
        if (g.degree(q) != 2 || g.degree(r) != 2) continue;
        int p = otherNeighbour(g, q, r), s = otherNeighbour(g, r, q);
        if (p < 0 || s < 0 || p == s || p == r || s == q) continue;
        if (g.degree(p) != 2 || g.degree(s) != 2) continue;
        if (cur.isNt(p)) {
          push(contractStep(cur, StepKind::ContractPathPair,
                            "head pair of a degree-2 run of four, marked end first",
                            minEdgeBetween(g, p, q)));
          fired = true;
        } else if (cur.isNt(s)) {
          push(contractStep(cur, StepKind::ContractPathPair,
                            "head pair of a degree-2 run of four, marked end first",
                            minEdgeBetween(g, s, r)));
          fired = true;
        }
      }
      if (fired) continue;
    }
    break;
  }
  {
    const MultiGraph& g = cur.graph;
    int n = cur.numVertices();
    for (int v = 0; v < n; ++v)
      internalCheck(n == 1 || g.degree(v) >= 2, "degree-rule kernel left a pendant vertex");
    for (int e = 0; e < cur.numEdges(); ++e) {
      const MultiGraph::Edge& ed = g.edge(e);
      internalCheck(!(g.degree(ed.a) == 2 && g.degree(ed.b) == 2 && cur.isNt(ed.a) == cur.isNt(ed.b)),
                    "degree-rule kernel left an adjacent same-kind degree-2 pair");
      if (g.degree(ed.a) == 2 && g.degree(ed.b) == 2) {
        int p = otherNeighbour(g, ed.a, ed.b), s = otherNeighbour(g, ed.b, ed.a);
        internalCheck(p < 0 || s < 0 || p == s || g.degree(p) != 2 || g.degree(s) != 2,
                      "degree-rule kernel left a degree-2 run of four");
      }
    }
  }
  res.reduced = cur;
  res.verdict = res.steps.empty() ? KernelVerdict::Unchanged : KernelVerdict::Reduced;
  return res;
}

namespace {

Instance reapplyStep(const TraceStep& st) {
  const Instance& cur = st.before;
  switch (st.kind) {
    case StepKind::MarkInfeasible:
      return canonicalInfeasible();
    case StepKind::CanonicalFeasible:
      return canonicalFeasible();
    case StepKind::ClosedNeighborhood:
      return closedNeighborhoodReduce(cur).after;
    case StepKind::TwoExpansion: {
      std::vector<char> keep((size_t)cur.numVertices(), 1);
      for (int y : st.ys) keep[(size_t)y] = 0;
      RewriteResult rr = inducedSubgraph(cur.graph, keep);
      MultiGraph h = rr.graph;
      for (int x : st.xs) h.addEdge(rr.vertexMap[x], rr.vertexMap[st.rootBefore]);
      std::vector<char> nt((size_t)h.numVertices(), 0);
      for (int v = 0; v < cur.numVertices(); ++v)
        if (rr.vertexMap[v] >= 0) nt[(size_t)rr.vertexMap[v]] = cur.nt[(size_t)v];
      for (int x : st.xs) nt[(size_t)rr.vertexMap[x]] = 0;
      return Instance(std::move(h), std::move(nt));
    }
    case StepKind::DeleteEdges:
    case StepKind::CollapseParallel: {
      std::vector<char> drop((size_t)cur.numEdges(), 0);
      for (int e : st.deletedEdges) drop[(size_t)e] = 1;
      MultiGraph h(cur.numVertices());
      for (int e = 0; e < cur.numEdges(); ++e)
        if (!drop[(size_t)e]) {
          const MultiGraph::Edge& ed = cur.graph.edge(e);
          h.addEdge(ed.a, ed.b);
        }
      return Instance(std::move(h), cur.nt);
    }
    case StepKind::RemovePendant:
    case StepKind::RemovePendantRelax: {
      std::vector<char> keep((size_t)cur.numVertices(), 1);
      keep[(size_t)st.ys[0]] = 0;
      RewriteResult rr = inducedSubgraph(cur.graph, keep);
      std::vector<char> nt((size_t)rr.graph.numVertices(), 0);
      for (int v = 0; v < cur.numVertices(); ++v)
        if (rr.vertexMap[v] >= 0) nt[(size_t)rr.vertexMap[v]] = cur.nt[(size_t)v];
      if (st.kind == StepKind::RemovePendantRelax) nt[(size_t)rr.vertexMap[st.xs[0]]] = 0;
      return Instance(rr.graph, std::move(nt));
    }
    case StepKind::ContractNtPair:
    case StepKind::ContractBridge:
    case StepKind::ContractPathPair: {
      RewriteResult rr = contractEdges(cur.graph, st.contractedEdges);
      std::vector<char> nt((size_t)rr.graph.numVertices(), 0);
      for (int v = 0; v < cur.numVertices(); ++v)
        if (cur.nt[(size_t)v]) nt[(size_t)rr.vertexMap[v]] = 1;
      return Instance(rr.graph, std::move(nt));
    }
  }
  throw InternalError("unknown reduction step kind");
}

EdgeSet liftStep(const TraceStep& st, const EdgeSet& treeAfter) {
  EdgeSet mapped;
  for (int e : treeAfter) {
    int o = st.edgeToBefore[(size_t)e];
    if (o >= 0) mapped.push_back(o);
  }
  switch (st.kind) {
    case StepKind::MarkInfeasible:
      throw InternalError("cannot lift a solution through an infeasibility step");
    case StepKind::CanonicalFeasible:
      return extendForestToSpanningTree(st.before.graph, {});
    case StepKind::ClosedNeighborhood:
      return extendForestToSpanningTree(st.before.graph, normalizedEdgeSet(std::move(mapped)));
    case StepKind::TwoExpansion: {
      for (int e : st.matchingEdges) mapped.push_back(e);
      return extendForestToSpanningTree(st.before.graph, normalizedEdgeSet(std::move(mapped)));
    }
    case StepKind::DeleteEdges:
    case StepKind::CollapseParallel:
      return normalizedEdgeSet(std::move(mapped));
    case StepKind::RemovePendant:
    case StepKind::RemovePendantRelax:
      mapped.push_back(st.deletedEdges[0]);
      return normalizedEdgeSet(std::move(mapped));
    case StepKind::ContractNtPair:
    case StepKind::ContractBridge:
    case StepKind::ContractPathPair:
      for (int e : st.contractedEdges) mapped.push_back(e);
      return normalizedEdgeSet(std::move(mapped));
  }
  throw InternalError("unknown reduction step kind");
}

}  // namespace

EdgeSet liftSolution(const KernelResult& result, const EdgeSet& reducedTree) {
  require(result.verdict != KernelVerdict::Infeasible,
          "an infeasible kernel has no solution to lift");
  EdgeSet tree = normalizedEdgeSet(reducedTree);
  require(isAdmissibleSpanningTree(result.reduced, tree),
          "the lifted tree must be an admissible spanning tree of the reduced instance");
  for (auto it = result.steps.rbegin(); it != result.steps.rend(); ++it) {
    tree = liftStep(*it, tree);
    internalCheck(isAdmissibleSpanningTree(it->before, tree),
                  "lifting must preserve admissibility step by step");
  }
  return tree;
}

bool replayTrace(const KernelResult& result) {
  for (size_t i = 0; i < result.steps.size(); ++i) {
    const TraceStep& st = result.steps[i];
    if (i > 0 && !(st.before == result.steps[i - 1].after)) return false;
    if (!(reapplyStep(st) == st.after)) return false;
  }
  if (!result.steps.empty() && !(result.steps.back().after == result.reduced)) return false;
  return true;
}

}  // namespace ntst

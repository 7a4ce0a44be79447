#pragma once
#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "ntst/multigraph.hpp"

namespace ntst {

/// Exact non-negative rational edge weight.
using Weight = mpq_class;

/// Set of edge ids, kept sorted and duplicate-free.
using EdgeSet = std::vector<int>;

inline EdgeSet normalizedEdgeSet(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

/// A problem instance: connected multigraph, the set of vertices that must be
/// internal (degree >= 2) in any acceptable spanning tree, and optional exact
/// edge weights. Absent weights mean the unweighted problem (unit weights).
struct Instance {
  MultiGraph graph;
  std::vector<char> nt;                          // size n; 1 = must be internal
  std::optional<std::vector<Weight>> weights;    // size m when present

  Instance() = default;
  Instance(MultiGraph g, std::vector<char> ntMask,
           std::optional<std::vector<Weight>> w = std::nullopt)
      : graph(std::move(g)), nt(std::move(ntMask)), weights(std::move(w)) {
    validate();
  }

  int numVertices() const { return graph.numVertices(); }
  int numEdges() const { return graph.numEdges(); }
  bool isNt(int v) const { return nt[v] != 0; }
  int numNt() const { return (int)std::count(nt.begin(), nt.end(), (char)1); }
  std::vector<int> ntList() const {
    std::vector<int> r;
    for (int v = 0; v < numVertices(); ++v)
      if (nt[v]) r.push_back(v);
    return r;
  }

  Weight edgeWeight(int e) const {
    graph.edge(e);  // range check
    return weights ? (*weights)[e] : Weight(1);
  }

  bool hasUnitWeights() const {
    if (!weights) return true;
    for (const Weight& w : *weights)
      if (w != 1) return false;
    return true;
  }

  void validate() const {
    if ((int)nt.size() != graph.numVertices())
      throw InputError("internal-vertex mask size does not match vertex count");
    if (weights) {
      if ((int)weights->size() != graph.numEdges())
        throw InputError("weight vector size does not match edge count");
      for (const Weight& w : *weights)
        if (w < 0) throw InputError("negative edge weight");
    }
  }

  bool operator==(const Instance& o) const {
    return graph == o.graph && nt == o.nt && weights == o.weights;
  }
};

inline Weight weightOf(const Instance& inst, const EdgeSet& es) {
  Weight s = 0;
  for (int e : es) s += inst.edgeWeight(e);
  return s;
}

/// Integer edge weights in 1..maxOut when the instance qualifies for the
/// counting pipeline; nullopt when some weight is non-integral or < 1.
inline std::optional<std::vector<long>> integralWeights(const Instance& inst) {
  std::vector<long> w(inst.numEdges(), 1);
  if (!inst.weights) return w;
  for (int e = 0; e < inst.numEdges(); ++e) {
    const Weight& q = (*inst.weights)[e];
    if (q.get_den() != 1 || q.get_num() < 1 || !q.get_num().fits_slong_p()) return std::nullopt;
    w[e] = q.get_num().get_si();
  }
  return w;
}

inline Instance stripWeights(const Instance& inst) {
  return Instance(inst.graph, inst.nt, std::nullopt);
}

}  // namespace ntst

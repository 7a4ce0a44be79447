#include "ntst/oracle.hpp"

#include <cstdlib>
#include <string>

#include "ntst/dsu.hpp"
#include "ntst/errors.hpp"
#include "ntst/graph_ops.hpp"

namespace ntst {

namespace {

class Enumerator {
 public:
  explicit Enumerator(const Instance& inst)
      : inst_(inst),
        g_(inst.graph),
        n_(g_.numVertices()),
        m_(g_.numEdges()),
        dsu_(n_),
        degree_(n_, 0),
        scratch_(n_, 0) {
    intWeights_ = integralWeights(inst);
    if (intWeights_) {
      long maxW = 1;
      for (long w : *intWeights_) maxW = std::max(maxW, w);
      out_.treesByWeight = WeightCounts((size_t)(n_ - 1) * (size_t)maxW + 1, 0);
      out_.admissibleByWeight = WeightCounts((size_t)(n_ - 1) * (size_t)maxW + 1, 0);
    }
  }

  OracleResult run() {
    recurse(0, 0);
    return std::move(out_);
  }

 private:
  void recurse(int idx, int chosenCount) {
    if (chosenCount == n_ - 1) {
      visitTree();
      return;
    }
    if (m_ - idx < n_ - 1 - chosenCount) return;
    if (!stillConnectable(idx)) return;
    const MultiGraph::Edge& e = g_.edge(idx);
    if (!dsu_.same(e.a, e.b)) {
      int mark = dsu_.checkpoint();
      dsu_.unite(e.a, e.b);
      chosen_.push_back(idx);
      degree_[e.a]++;
      degree_[e.b]++;
      weightAcc_ += inst_.edgeWeight(idx);
      if (intWeights_) intWeightAcc_ += (*intWeights_)[idx];
      recurse(idx + 1, chosenCount + 1);
      if (intWeights_) intWeightAcc_ -= (*intWeights_)[idx];
      weightAcc_ -= inst_.edgeWeight(idx);
      degree_[e.a]--;
      degree_[e.b]--;
      chosen_.pop_back();
      dsu_.rollback(mark);
    }
    recurse(idx + 1, chosenCount);
  }

  /// Can the components formed so far still be joined using edges idx..m-1?
  bool stillConnectable(int idx) {
    if (n_ == 1) return true;
    for (int v = 0; v < n_; ++v) scratch_[v] = dsu_.find(v);
    int comps = 0;
    for (int v = 0; v < n_; ++v)
      if (scratch_[v] == v) comps++;
    for (int e = idx; e < m_ && comps > 1; ++e) {
      int a = findScratch(dsu_.find(g_.edge(e).a));
      int b = findScratch(dsu_.find(g_.edge(e).b));
      if (a != b) {
        scratch_[a] = b;
        comps--;
      }
    }
    return comps == 1;
  }

  int findScratch(int v) {
    while (scratch_[v] != v) v = scratch_[v] = scratch_[scratch_[v]];
    return v;
  }

  void visitTree() {
    out_.treesEnumerated += 1;
    if (out_.treesByWeight) (*out_.treesByWeight)[(size_t)intWeightAcc_] += 1;
    for (int v = 0; v < n_; ++v)
      if (inst_.isNt(v) && degree_[v] < 2) return;
    out_.admissibleTrees += 1;
    if (out_.admissibleByWeight) (*out_.admissibleByWeight)[(size_t)intWeightAcc_] += 1;
    if (!out_.feasible || weightAcc_ < out_.weight) {
      out_.feasible = true;
      out_.weight = weightAcc_;
      out_.tree = chosen_;
    }
  }

  const Instance& inst_;
  const MultiGraph& g_;
  int n_, m_;
  RollbackDsu dsu_;
  std::vector<int> degree_;
  std::vector<int> scratch_;
  EdgeSet chosen_;
  Weight weightAcc_ = 0;
  long intWeightAcc_ = 0;
  std::optional<std::vector<long>> intWeights_;
  OracleResult out_;
};

}  // namespace

int bruteForceVertexCap() {
  if (const char* env = std::getenv("NTST_ORACLE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 25) return (int)v;
  }
  return 12;
}

OracleResult bruteForceSolve(const Instance& inst) {
  require(inst.numVertices() <= bruteForceVertexCap(),
          "instance exceeds the brute-force vertex cap (set NTST_ORACLE_CAP to raise it)");
  return Enumerator(inst).run();
}

bool hasHamiltonianCycle(const MultiGraph& g) {
  int n = g.numVertices();
  require(n <= 20, "Hamiltonian-cycle check supports at most 20 vertices");
  if (n < 3) return false;
  std::vector<uint32_t> adj(n, 0);
  for (const MultiGraph::Edge& e : g.edges()) {
    adj[e.a] |= 1u << e.b;
    adj[e.b] |= 1u << e.a;
  }
  // reach[mask] = set of possible path endpoints, over paths from vertex 0
  // covering exactly `mask` (which always contains vertex 0).
  std::vector<uint32_t> reach((size_t)1 << n, 0);
  reach[1] = 1;
  uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (uint32_t mask = 1; mask <= full; mask += 2) {
    uint32_t ends = reach[mask];
    if (!ends) continue;
    while (ends) {
      int last = __builtin_ctz(ends);
      ends &= ends - 1;
      uint32_t nxt = adj[last] & ~mask;
      while (nxt) {
        int v = __builtin_ctz(nxt);
        nxt &= nxt - 1;
        reach[mask | (1u << v)] |= 1u << v;
      }
    }
  }
  uint32_t closing = reach[full] & adj[0];
  return (closing & ~1u) != 0;
}

Instance falseTwinHamInstance(const MultiGraph& g, int twinOf) {
  int n = g.numVertices();
  require(n >= 3, "false-twin construction needs at least three vertices");
  require(g.hasVertex(twinOf), "twin vertex out of range");
  MultiGraph h(n + 1);
  for (const MultiGraph::Edge& e : g.edges()) h.addEdge(e.a, e.b);
  for (int e : g.incidentEdges(twinOf)) h.addEdge(g.otherEnd(e, twinOf), n);
  std::vector<char> nt(n + 1, 1);
  nt[twinOf] = 0;
  nt[n] = 0;
  return Instance(std::move(h), std::move(nt));
}

Instance randomInstance(Rng& rng, const RandomOptions& options) {
  require(options.minVertices >= 1 && options.minVertices <= options.maxVertices,
          "bad vertex range");
  int n = rng.range(options.minVertices, options.maxVertices);
  MultiGraph g(n);
  for (int v = 1; v < n; ++v) g.addEdge(rng.range(0, v - 1), v);
  int extra = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (options.maxExtraEdges >= 0 && extra >= options.maxExtraEdges) break;
      if (rng.chance(options.density)) {
        g.addEdge(u, v);
        extra++;
      }
    }
  }
  if (options.allowParallel && g.numEdges() > 0 && rng.chance(0.5)) {
    const MultiGraph::Edge& e = g.edge(rng.range(0, g.numEdges() - 1));
    g.addEdge(e.a, e.b);
  }
  std::vector<char> nt(n, 0);
  std::vector<int> marked;
  for (int v = 0; v < n; ++v)
    if (rng.chance(options.ntFraction)) {
      nt[v] = 1;
      marked.push_back(v);
    }
  while (options.maxNt >= 0 && (int)marked.size() > options.maxNt) {
    int at = rng.range(0, (int)marked.size() - 1);
    nt[marked[at]] = 0;
    marked.erase(marked.begin() + at);
  }
  std::optional<std::vector<Weight>> weights;
  // an edgeless instance carries no weights regardless of mode: an engaged
  // empty vector would be indistinguishable from "unweighted" in every
  // representation
  if (options.weightMode != WeightMode::Unit && g.numEdges() > 0) {
    require(options.maxWeight >= 1, "max weight must be at least 1");
    std::vector<Weight> w(g.numEdges());
    for (Weight& x : w) {
      if (options.weightMode == WeightMode::Integral) {
        x = Weight(rng.range(1, (int)options.maxWeight));
      } else {
        mpq_class q(rng.range(1, (int)(3 * options.maxWeight)), rng.range(1, 4));
        q.canonicalize();
        x = q;
      }
    }
    weights = std::move(w);
  }
  return Instance(std::move(g), std::move(nt), std::move(weights));
}

}  // namespace ntst

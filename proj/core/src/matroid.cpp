#include "ntst/matroid.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <exception>
#include <thread>

#include "ntst/dsu.hpp"
#include "ntst/errors.hpp"
#include "ntst/graph_ops.hpp"
#include "ntst/maxflow.hpp"

namespace ntst {

namespace {

void validatePartition(const PartitionMatroid& pm) {
  require(pm.lower.size() == pm.upper.size(), "per-block bound vectors must have equal size");
  require(pm.rank >= 0, "negative rank");
  for (int b : pm.blockOf)
    require(b >= 0 && b < pm.numBlocks(), "block index out of range");
  for (int i = 0; i < pm.numBlocks(); ++i) {
    require(pm.lower[i] >= 0, "negative lower bound");
    require(pm.upper[i] >= 0, "negative upper bound");
  }
}

void countPerBlock(const PartitionMatroid& pm, const std::vector<char>& chosen,
                   std::vector<long>& cnt) {
  cnt.assign(pm.numBlocks(), 0);
  for (int e = 0; e < pm.groundSize(); ++e)
    if (chosen[e]) cnt[pm.blockOf[e]]++;
}

}  // namespace

std::vector<long> PartitionMatroid::blockSizes() const {
  std::vector<long> sizes(numBlocks(), 0);
  for (int b : blockOf) sizes[b]++;
  return sizes;
}

bool PartitionMatroid::valid() const {
  validatePartition(*this);
  std::vector<char> none(groundSize(), 0);
  return partitionExtensionFeasible(*this, none);
}

bool partitionExtensionFeasible(const PartitionMatroid& pm, const std::vector<char>& chosen) {
  validatePartition(pm);
  require((int)chosen.size() == pm.groundSize(), "chosen mask size must match the ground set");
  std::vector<long> sizes = pm.blockSizes();
  std::vector<long> cnt;
  countPerBlock(pm, chosen, cnt);
  long size = 0, deficit = 0, slack = 0;
  for (int i = 0; i < pm.numBlocks(); ++i) {
    long cap = std::min(pm.upper[i], sizes[i]);
    if (cnt[i] > cap || pm.lower[i] > cap) return false;
    size += cnt[i];
    deficit += std::max(pm.lower[i] - cnt[i], 0L);
    slack += cap - cnt[i];
  }
  return size <= pm.rank && deficit <= pm.rank - size && pm.rank - size <= slack;
}

bool partitionExtensionFeasibleByFlow(const PartitionMatroid& pm, const std::vector<char>& chosen) {
  validatePartition(pm);
  require((int)chosen.size() == pm.groundSize(), "chosen mask size must match the ground set");
  std::vector<long> sizes = pm.blockSizes();
  std::vector<long> cnt;
  countPerBlock(pm, chosen, cnt);
  // Node 0 feeds every block node 2+i, which drains into node 1; the return
  // edge 1 -> 0 pins the total at rank.  Block i must carry between
  // max(lower, already chosen) and min(upper, block size) units.
  std::vector<BoundedEdge> edges;
  for (int i = 0; i < pm.numBlocks(); ++i) {
    long lo = std::max(pm.lower[i], cnt[i]);
    long hi = std::min(pm.upper[i], sizes[i]);
    if (lo > hi) return false;
    edges.push_back({0, 2 + i, lo, hi});
    edges.push_back({2 + i, 1, 0, hi});
  }
  edges.push_back({1, 0, pm.rank, pm.rank});
  return boundedCirculationFeasible(pm.numBlocks() + 2, edges);
}

bool graphicIndependent(const MultiGraph& g, const EdgeSet& edges) {
  Dsu dsu(g.numVertices());
  for (int e : edges) {
    const MultiGraph::Edge& ed = g.edge(e);
    if (!dsu.unite(ed.a, ed.b)) return false;
  }
  return true;
}

namespace {

/// One weighted-matroid-intersection run: grows a minimum-weight common
/// independent set one augmentation at a time along shortest (cost, arc
/// count) paths of the exchange digraph.
class Intersection {
 public:
  Intersection(const MultiGraph& g, const std::vector<Weight>& w, const PartitionMatroid& pm)
      : g_(g), w_(w), pm_(pm), n_(g.numVertices()), m_(g.numEdges()), inI_(m_, 0) {
    sizes_ = pm.blockSizes();
    cap_.resize(pm.numBlocks());
    for (int i = 0; i < pm.numBlocks(); ++i) cap_[i] = std::min(pm.upper[i], sizes_[i]);
    allEqual_ = true;
    for (int e = 1; e < m_; ++e)
      if (w_[e] != w_[0]) allEqual_ = false;
    refreshBlockState();
  }

  int size() const { return sizeI_; }
  const std::vector<char>& members() const { return inI_; }

  bool augmentOnce() {
    buildExchangeDigraph();
    int target = allEqual_ ? searchByArcs() : searchByCost();
    if (target < 0) return false;
    for (int v = target; v != -1; v = pred_[v]) inI_[v] = inI_[v] ? 0 : 1;
    refreshBlockState();
    internalCheck(partitionIndependent(), "augmentation left the partition matroid");
    EdgeSet cur;
    for (int e = 0; e < m_; ++e)
      if (inI_[e]) cur.push_back(e);
    internalCheck((int)cur.size() == sizeI_ && graphicIndependent(g_, cur),
                  "augmentation left the graphic matroid");
    return true;
  }

 private:
  void refreshBlockState() {
    countPerBlock(pm_, inI_, cnt_);
    sizeI_ = 0;
    deficit_ = 0;
    slack_ = 0;
    for (int i = 0; i < pm_.numBlocks(); ++i) {
      sizeI_ += (int)cnt_[i];
      deficit_ += std::max(pm_.lower[i] - cnt_[i], 0L);
      slack_ += cap_[i] - cnt_[i];
    }
  }

  bool partitionIndependent() const { return partitionExtensionFeasible(pm_, inI_); }

  /// I + z stays extendable to a base.
  bool canAdd(int z) const {
    int b = pm_.blockOf[z];
    if (sizeI_ + 1 > pm_.rank) return false;
    if (cnt_[b] + 1 > cap_[b]) return false;
    long deficitAfter = deficit_ - (cnt_[b] < pm_.lower[b] ? 1 : 0);
    long room = pm_.rank - sizeI_ - 1;
    return deficitAfter <= room && room <= slack_ - 1;
  }

  /// I - y + z stays extendable to a base.
  bool canSwap(int y, int z) const {
    int a = pm_.blockOf[y], b = pm_.blockOf[z];
    if (a == b) return true;
    if (cnt_[b] + 1 > cap_[b]) return false;
    long deficitAfter = deficit_ + (cnt_[a] <= pm_.lower[a] ? 1 : 0) -
                        (cnt_[b] < pm_.lower[b] ? 1 : 0);
    return deficitAfter <= pm_.rank - sizeI_;
  }

  /// BFS over the forest formed by the current common independent set;
  /// returns the edge ids of the a-b path, or false when a and b are in
  /// different components.
  bool forestPath(int a, int b, EdgeSet& pathEdges) {
    pathEdges.clear();
    if (a == b) return true;
    bfsParentEdge_.assign(n_, -1);
    bfsParentVertex_.assign(n_, -1);
    bfsSeen_.assign(n_, 0);
    std::deque<int> q{a};
    bfsSeen_[a] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (v == b) break;
      for (auto [to, e] : forestAdj_[v]) {
        if (!bfsSeen_[to]) {
          bfsSeen_[to] = 1;
          bfsParentEdge_[to] = e;
          bfsParentVertex_[to] = v;
          q.push_back(to);
        }
      }
    }
    if (!bfsSeen_[b]) return false;
    for (int v = b; v != a; v = bfsParentVertex_[v]) pathEdges.push_back(bfsParentEdge_[v]);
    return true;
  }

  void buildExchangeDigraph() {
    forestAdj_.assign(n_, {});
    std::vector<int> iMembers;
    for (int e = 0; e < m_; ++e)
      if (inI_[e]) {
        const MultiGraph::Edge& ed = g_.edge(e);
        forestAdj_[ed.a].push_back({ed.b, e});
        forestAdj_[ed.b].push_back({ed.a, e});
        iMembers.push_back(e);
      }
    arcFrom_.clear();
    arcTo_.clear();
    inX1_.assign(m_, 0);
    inX2_.assign(m_, 0);
    EdgeSet cycle;
    for (int z = 0; z < m_; ++z) {
      if (inI_[z]) continue;
      const MultiGraph::Edge& ed = g_.edge(z);
      if (forestPath(ed.a, ed.b, cycle)) {
        std::sort(cycle.begin(), cycle.end());
        for (int y : cycle) {
          arcFrom_.push_back(y);
          arcTo_.push_back(z);
        }
      } else {
        inX1_[z] = 1;
        for (int y : iMembers) {
          arcFrom_.push_back(y);
          arcTo_.push_back(z);
        }
      }
      if (canAdd(z)) inX2_[z] = 1;
      for (int y : iMembers)
        if (canSwap(y, z)) {
          arcFrom_.push_back(z);
          arcTo_.push_back(y);
        }
    }
    // CSR adjacency, stable in construction order.
    head_.assign(m_ + 1, 0);
    for (int u : arcFrom_) head_[u + 1]++;
    for (int u = 0; u < m_; ++u) head_[u + 1] += head_[u];
    adjTo_.assign(arcFrom_.size(), 0);
    std::vector<int> fill(head_.begin(), head_.end() - 1);
    for (size_t i = 0; i < arcFrom_.size(); ++i) adjTo_[(size_t)fill[arcFrom_[i]]++] = arcTo_[i];
    curCost_.resize(m_);
    for (int e = 0; e < m_; ++e) curCost_[e] = inI_[e] ? Weight(-w_[e]) : w_[e];
  }

  /// All weights equal: every source-to-target path has the same cost, so a
  /// plain BFS yields a fewest-arcs shortest path.
  int searchByArcs() {
    arcsLen_.assign(m_, -1);
    pred_.assign(m_, -1);
    std::deque<int> q;
    for (int z = 0; z < m_; ++z)
      if (inX1_[z]) {
        arcsLen_[z] = 1;
        q.push_back(z);
      }
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int i = head_[u]; i < head_[u + 1]; ++i) {
        int v = adjTo_[(size_t)i];
        if (arcsLen_[v] < 0) {
          arcsLen_[v] = arcsLen_[u] + 1;
          pred_[v] = u;
          q.push_back(v);
        }
      }
    }
    int best = -1;
    for (int z = 0; z < m_; ++z)
      if (inX2_[z] && arcsLen_[z] >= 0)
        if (best < 0 || arcsLen_[z] < arcsLen_[best]) best = z;
    return best;
  }

  /// Bellman-Ford with exact rational path cost and an arc-count tie-break.
  /// The lexicographic order rules out zero-cost cycles, and negative cycles
  /// cannot occur while the current set is extreme, so the relaxation must
  /// settle within one round per node.
  int searchByCost() {
    dist_.assign(m_, Weight(0));
    arcsLen_.assign(m_, -1);
    pred_.assign(m_, -1);
    for (int z = 0; z < m_; ++z)
      if (inX1_[z]) {
        dist_[z] = curCost_[z];
        arcsLen_[z] = 1;
      }
    for (int round = 0; ; ++round) {
      internalCheck(round <= m_ + 1, "exchange-digraph relaxation failed to settle");
      bool changed = false;
      for (int u = 0; u < m_; ++u) {
        if (arcsLen_[u] < 0) continue;
        for (int i = head_[u]; i < head_[u + 1]; ++i) {
          int v = adjTo_[(size_t)i];
          Weight cand = dist_[u] + curCost_[v];
          int candLen = arcsLen_[u] + 1;
          if (arcsLen_[v] < 0 || cand < dist_[v] ||
              (cand == dist_[v] && candLen < arcsLen_[v])) {
            dist_[v] = cand;
            arcsLen_[v] = candLen;
            pred_[v] = u;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    int best = -1;
    for (int z = 0; z < m_; ++z) {
      if (!inX2_[z] || arcsLen_[z] < 0) continue;
      if (best < 0 || dist_[z] < dist_[best] ||
          (dist_[z] == dist_[best] && arcsLen_[z] < arcsLen_[best]))
        best = z;
    }
    return best;
  }

  const MultiGraph& g_;
  const std::vector<Weight>& w_;
  const PartitionMatroid& pm_;
  int n_, m_;
  std::vector<char> inI_;
  int sizeI_ = 0;
  std::vector<long> sizes_, cap_, cnt_;
  long deficit_ = 0, slack_ = 0;
  bool allEqual_ = false;

  std::vector<std::vector<std::pair<int, int>>> forestAdj_;
  std::vector<int> bfsParentEdge_, bfsParentVertex_;
  std::vector<char> bfsSeen_;
  std::vector<int> arcFrom_, arcTo_, head_, adjTo_;
  std::vector<char> inX1_, inX2_;
  std::vector<Weight> curCost_, dist_;
  std::vector<int> arcsLen_, pred_;
};

}  // namespace

CommonBaseResult minWeightCommonBase(const MultiGraph& g, const std::vector<Weight>& weight,
                                     const PartitionMatroid& pm) {
  validatePartition(pm);
  require(pm.groundSize() == g.numEdges(), "ground set must be the edge set of the graph");
  require((int)weight.size() == g.numEdges(), "weight vector size must match the edge set");
  CommonBaseResult out;
  if (!pm.valid()) return out;
  {
    Dsu dsu(g.numVertices());
    int joins = 0;
    for (const MultiGraph::Edge& e : g.edges())
      if (dsu.unite(e.a, e.b)) joins++;
    if (pm.rank > joins) return out;
  }
  Intersection state(g, weight, pm);
  while (state.size() < pm.rank) {
    if (!state.augmentOnce()) return out;
    out.augmentations++;
  }
  for (int e = 0; e < g.numEdges(); ++e)
    if (state.members()[e]) {
      out.base.push_back(e);
      out.weight += weight[e];
    }
  std::vector<long> cnt;
  countPerBlock(pm, state.members(), cnt);
  for (int i = 0; i < pm.numBlocks(); ++i)
    internalCheck(pm.lower[i] <= cnt[i] && cnt[i] <= pm.upper[i],
                  "common base violates a block bound");
  internalCheck(graphicIndependent(g, out.base), "common base is not a forest");
  out.feasible = true;
  return out;
}

namespace {

std::vector<EdgeSet> enumerateForests(const MultiGraph& g, const EdgeSet& interior) {
  std::vector<EdgeSet> out;
  EdgeSet current;
  RollbackDsu dsu(g.numVertices());
  auto rec = [&](auto&& self, size_t idx) -> void {
    out.push_back(current);
    for (size_t i = idx; i < interior.size(); ++i) {
      const MultiGraph::Edge& e = g.edge(interior[i]);
      if (dsu.same(e.a, e.b)) continue;
      int mark = dsu.checkpoint();
      dsu.unite(e.a, e.b);
      current.push_back(interior[i]);
      self(self, i + 1);
      current.pop_back();
      dsu.rollback(mark);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const EdgeSet& a, const EdgeSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

struct BranchOutcome {
  bool found = false;
  Weight weight{};
  size_t branch = 0;
  EdgeSet tree;
};

/// Evaluates one interior forest F: deletes the other interior edges,
/// contracts F, and asks for a min-weight common base of the residual
/// graphic matroid and the per-vertex degree-demand partition matroid.
std::optional<std::pair<Weight, EdgeSet>> evaluateBranch(const Instance& inst,
                                                         const std::vector<char>& interior,
                                                         const std::vector<int>& ntPos,
                                                         const EdgeSet& forest) {
  const MultiGraph& g = inst.graph;
  const int n = g.numVertices(), m = g.numEdges();
  const int k = (int)inst.ntList().size();
  Dsu comp(n);
  std::vector<long> dF(n, 0);
  for (int e : forest) {
    const MultiGraph::Edge& ed = g.edge(e);
    comp.unite(ed.a, ed.b);
    dF[ed.a]++;
    dF[ed.b]++;
  }
  std::vector<int> newId(n, -1);
  int nv = 0;
  for (int v = 0; v < n; ++v) {
    int r = comp.find(v);
    if (newId[r] < 0) newId[r] = nv++;
  }
  MultiGraph h(nv);
  std::vector<int> toOriginal;
  std::vector<Weight> hw;
  for (int e = 0; e < m; ++e) {
    if (interior[e]) continue;
    const MultiGraph::Edge& ed = g.edge(e);
    int a = newId[comp.find(ed.a)], b = newId[comp.find(ed.b)];
    internalCheck(a != b, "non-interior edge collapsed under interior contraction");
    h.addEdge(a, b);
    toOriginal.push_back(e);
    hw.push_back(inst.edgeWeight(e));
  }
  if (!isConnected(h)) return std::nullopt;
  PartitionMatroid pm;
  pm.rank = nv - 1;
  pm.lower.assign(k + 1, 0);
  pm.upper.assign(k + 1, 0);
  pm.blockOf.resize(h.numEdges());
  for (int he = 0; he < h.numEdges(); ++he) {
    const MultiGraph::Edge& ed = g.edge(toOriginal[he]);
    int blk = k;
    if (ntPos[ed.a] >= 0)
      blk = ntPos[ed.a];
    else if (ntPos[ed.b] >= 0)
      blk = ntPos[ed.b];
    pm.blockOf[he] = blk;
    pm.upper[blk]++;  // no upper restriction: cap at block size
  }
  for (int v = 0; v < n; ++v)
    if (ntPos[v] >= 0) pm.lower[ntPos[v]] = std::max(0L, 2 - dF[v]);
  CommonBaseResult cb = minWeightCommonBase(h, hw, pm);
  if (!cb.feasible) return std::nullopt;
  Weight total = weightOf(inst, forest) + cb.weight;
  EdgeSet tree = forest;
  for (int he : cb.base) tree.push_back(toOriginal[he]);
  return std::make_pair(total, normalizedEdgeSet(tree));
}

}  // namespace

SolveResult solveByMatroidIntersection(const Instance& inst, const MatroidOptions& options) {
  auto start = std::chrono::steady_clock::now();
  SolveResult res;
  res.algorithm = "matroid";
  auto finish = [&]() -> SolveResult& {
    res.stats.wallMillis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return res;
  };
  const MultiGraph& g = inst.graph;
  const int n = g.numVertices(), m = g.numEdges(), k = inst.numNt();
  if (k > std::max(n - 2, 0)) return finish();
  for (int v = 0; v < n; ++v)
    if (inst.isNt(v) && g.degree(v) <= 1) return finish();
  if (!isConnected(g)) return finish();

  std::vector<char> interior(m, 0);
  EdgeSet interiorEdges;
  for (int e = 0; e < m; ++e) {
    const MultiGraph::Edge& ed = g.edge(e);
    if (inst.isNt(ed.a) && inst.isNt(ed.b)) {
      interior[e] = 1;
      interiorEdges.push_back(e);
    }
  }
  std::vector<int> ntPos(n, -1);
  {
    int i = 0;
    for (int v : inst.ntList()) ntPos[v] = i++;
  }
  std::vector<EdgeSet> forests = enumerateForests(g, interiorEdges);
  res.stats.branchesEvaluated = (unsigned long)forests.size();

  int threads = std::max(1, std::min(options.threads, 64));
  threads = std::min<int>(threads, (int)forests.size());
  std::vector<BranchOutcome> perThread((size_t)threads);
  std::vector<std::exception_ptr> errors((size_t)threads);
  auto worker = [&](int tid) {
    try {
      BranchOutcome& best = perThread[(size_t)tid];
      for (size_t bi = (size_t)tid; bi < forests.size(); bi += (size_t)threads) {
        auto got = evaluateBranch(inst, interior, ntPos, forests[bi]);
        if (!got) continue;
        if (!best.found || got->first < best.weight) {
          best.found = true;
          best.weight = got->first;
          best.branch = bi;
          best.tree = got->second;
        }
      }
    } catch (...) {
      errors[(size_t)tid] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (std::thread& th : pool) th.join();
  }
  for (std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);

  const BranchOutcome* best = nullptr;
  for (const BranchOutcome& cand : perThread) {
    if (!cand.found) continue;
    if (!best || cand.weight < best->weight ||
        (cand.weight == best->weight && cand.branch < best->branch))
      best = &cand;
  }
  if (!best) return finish();
  internalCheck(isAdmissibleSpanningTree(inst, best->tree),
                "matroid solver produced an inadmissible tree");
  internalCheck(weightOf(inst, best->tree) == best->weight,
                "matroid solver weight does not match its tree");
  res.feasible = true;
  res.weight = best->weight;
  res.tree = best->tree;
  return finish();
}

}  // namespace ntst

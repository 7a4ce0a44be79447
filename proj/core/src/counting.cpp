#include "ntst/counting.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "ntst/dsu.hpp"
#include "ntst/errors.hpp"
#include "ntst/graph_ops.hpp"
#include "ntst/modular.hpp"

namespace ntst {
namespace {

// Fraction-free (Bareiss) determinant of an integer matrix, row-major; the
// matrix is consumed.
mpz_class bareissDeterminant(std::vector<mpz_class>& m, int s) {
  if (s == 0) return 1;
  mpz_class prev = 1;
  bool negate = false;
  for (int c = 0; c + 1 < s; ++c) {
    int pivot = -1;
    for (int r = c; r < s; ++r) {
      if (m[static_cast<std::size_t>(r) * s + c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == -1) return 0;
    if (pivot != c) {
      for (int j = c; j < s; ++j)
        std::swap(m[static_cast<std::size_t>(pivot) * s + j],
                  m[static_cast<std::size_t>(c) * s + j]);
      negate = !negate;
    }
    for (int r = c + 1; r < s; ++r) {
      for (int j = c + 1; j < s; ++j) {
        mpz_class& x = m[static_cast<std::size_t>(r) * s + j];
        x = x * m[static_cast<std::size_t>(c) * s + c] -
            m[static_cast<std::size_t>(r) * s + c] *
                m[static_cast<std::size_t>(c) * s + j];
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      m[static_cast<std::size_t>(r) * s + c] = 0;
    }
    prev = m[static_cast<std::size_t>(c) * s + c];
  }
  mpz_class det = m[static_cast<std::size_t>(s - 1) * s + (s - 1)];
  if (negate) det = -det;
  return det;
}

// One inclusion-exclusion counting job: graph, integral weights, the list of
// required-internal vertices, and the forced/deleted edge constraints.
struct IeProblem {
  const MultiGraph* graph = nullptr;
  std::vector<long> weight;  // per edge, >= 1
  long maxWeight = 1;        // W = max edge weight
  std::vector<int> ntList;
  EdgeSet forced;  // ascending, no duplicates
  std::vector<char> forcedMask;
  std::vector<char> deletedMask;
  int threads = 1;
};

// Everything needed to evaluate one subset's term at an evaluation point:
// the Laplacian sparsity pattern of the contracted interior graph, the edge
// choices of each forced leaf, and the weight shift of contracted edges.
struct SubsetTask {
  bool negative = false;
  int size = 0;  // Laplacian minor dimension (one less than #components)
  std::vector<std::array<long, 3>> edges;      // (row, col, weight), in 0..size
  std::vector<std::vector<long>> leafChoices;  // per leaf: usable edge weights
  long shiftExponent = 0;  // total weight of contracted forced edges
};

// Builds the evaluation task for one leaf subset, or nullopt when the term is
// identically zero (interior disconnected, a leaf with nowhere to attach, or
// forced edges incompatible with the leaf set).
class TaskBuilder {
 public:
  explicit TaskBuilder(const IeProblem& prob)
      : prob_(prob),
        n_(prob.graph->numVertices()),
        ntIndex_(n_, -1),
        pinCount_(n_, 0),
        pinWeight_(n_, 0),
        compIndex_(n_, -1) {
    for (std::size_t i = 0; i < prob.ntList.size(); ++i)
      ntIndex_[prob.ntList[i]] = static_cast<int>(i);
  }

  std::optional<SubsetTask> build(std::uint64_t mask) {
    const MultiGraph& g = *prob_.graph;
    int m = g.numEdges();
    SubsetTask task;
    task.negative = (std::popcount(mask) % 2) == 1;

    // Classify the forced edges relative to the leaf set.
    std::fill(pinCount_.begin(), pinCount_.end(), 0);
    Dsu contract(n_);
    for (int e : prob_.forced) {
      int a = g.edge(e).a, b = g.edge(e).b;
      bool la = inSubset(mask, a), lb = inSubset(mask, b);
      if (la && lb) return std::nullopt;  // an edge between two leaves
      if (la || lb) {
        int x = la ? a : b;
        if (++pinCount_[x] > 1) return std::nullopt;  // leaf with two edges
        pinWeight_[x] = prob_.weight[e];
      } else {
        contract.unite(a, b);  // acyclic: checked before enumeration
        task.shiftExponent += prob_.weight[e];
      }
    }

    // The interior (everything outside the leaf set) must be connected.
    Dsu conn(n_);
    for (int e = 0; e < m; ++e) {
      if (prob_.deletedMask[e]) continue;
      int a = g.edge(e).a, b = g.edge(e).b;
      if (inSubset(mask, a) || inSubset(mask, b)) continue;
      conn.unite(a, b);
    }
    int refRoot = -1;
    for (int v = 0; v < n_; ++v) {
      if (inSubset(mask, v)) continue;
      if (refRoot == -1) {
        refRoot = conn.find(v);
      } else if (conn.find(v) != refRoot) {
        return std::nullopt;
      }
    }
    if (refRoot == -1) return std::nullopt;  // no interior vertex at all

    // Index the components of the forced-edge contraction, in vertex order.
    std::fill(compIndex_.begin(), compIndex_.end(), -1);
    int comps = 0;
    for (int v = 0; v < n_; ++v) {
      if (inSubset(mask, v)) continue;
      int r = contract.find(v);
      if (compIndex_[r] == -1) compIndex_[r] = comps++;
    }
    task.size = comps - 1;

    for (int e = 0; e < m; ++e) {
      if (prob_.deletedMask[e] || prob_.forcedMask[e]) continue;
      int a = g.edge(e).a, b = g.edge(e).b;
      if (inSubset(mask, a) || inSubset(mask, b)) continue;
      long ia = compIndex_[contract.find(a)];
      long ib = compIndex_[contract.find(b)];
      if (ia == ib) continue;  // self-loop after contraction
      task.edges.push_back({ia, ib, prob_.weight[e]});
    }

    // Attachment choices for every leaf: its forced edge when pinned, else
    // all surviving edges into the interior.
    for (std::size_t i = 0; i < prob_.ntList.size(); ++i) {
      if (((mask >> i) & 1) == 0) continue;
      int x = prob_.ntList[i];
      if (pinCount_[x] == 1) {
        task.leafChoices.push_back({pinWeight_[x]});
        continue;
      }
      std::vector<long> choices;
      for (int e : g.incidentEdges(x)) {
        if (prob_.deletedMask[e] || prob_.forcedMask[e]) continue;
        if (inSubset(mask, g.otherEnd(e, x))) continue;
        choices.push_back(prob_.weight[e]);
      }
      if (choices.empty()) return std::nullopt;  // leaf with nowhere to attach
      task.leafChoices.push_back(std::move(choices));
    }
    return task;
  }

 private:
  bool inSubset(std::uint64_t mask, int v) const {
    return ntIndex_[v] >= 0 && ((mask >> ntIndex_[v]) & 1) != 0;
  }

  const IeProblem& prob_;
  int n_;
  std::vector<int> ntIndex_;
  std::vector<int> pinCount_;
  std::vector<long> pinWeight_;
  std::vector<int> compIndex_;
};

struct ThreadState {
  TaskBuilder builder;
  // acc[prime][point]: signed sum of subset terms, in Montgomery form.
  std::vector<std::vector<std::uint64_t>> acc;
  std::vector<std::uint64_t> scratch;
  std::uint64_t subsets = 0;
};

void evaluateTask(const SubsetTask& task, const std::vector<Mont64>& monts,
                  const std::vector<std::vector<std::uint64_t>>& tpow,
                  int numPoints, long maxWeight, ThreadState& state) {
  int s = task.size;
  std::size_t stride = static_cast<std::size_t>(maxWeight) + 1;
  for (std::size_t pi = 0; pi < monts.size(); ++pi) {
    const Mont64& mont = monts[pi];
    std::uint64_t* acc = state.acc[pi].data();
    for (int i = 0; i < numPoints; ++i) {
      const std::uint64_t* row = tpow[pi].data() + i * stride;
      state.scratch.assign(static_cast<std::size_t>(s) * s, 0);
      for (const auto& ed : task.edges) {
        long iu = ed[0], iv = ed[1];
        std::uint64_t tw = row[ed[2]];
        if (iu < s) {
          std::uint64_t& d = state.scratch[iu * s + iu];
          d = mont.add(d, tw);
        }
        if (iv < s) {
          std::uint64_t& d = state.scratch[iv * s + iv];
          d = mont.add(d, tw);
        }
        if (iu < s && iv < s) {
          std::uint64_t& o1 = state.scratch[iu * s + iv];
          o1 = mont.sub(o1, tw);
          std::uint64_t& o2 = state.scratch[iv * s + iu];
          o2 = mont.sub(o2, tw);
        }
      }
      std::uint64_t term = detMod(state.scratch, s, mont);
      if (term == 0) continue;
      for (const auto& choices : task.leafChoices) {
        std::uint64_t sum = 0;
        for (long w : choices) sum = mont.add(sum, row[w]);
        term = mont.mul(term, sum);
      }
      if (task.shiftExponent > 0)
        term = mont.mul(
            term, mont.pow(row[1], static_cast<std::uint64_t>(task.shiftExponent)));
      acc[i] = task.negative ? mont.sub(acc[i], term) : mont.add(acc[i], term);
    }
  }
}

// Core of the counting solver.  counts[q] = number of spanning trees of total
// weight q that contain every forced edge, avoid every deleted edge, and keep
// every listed vertex internal.  Inclusion-exclusion over the subsets of
// listed vertices forced to be leaves; each term is (trees of the interior) x
// (attachment choices per leaf), counted by the matrix-tree theorem with
// edge entries t^weight, evaluated at integer points modulo word-size primes,
// interpolated, and recombined by the Chinese remainder theorem.  The final
// coefficients are bounded by the spanning-tree total, which sizes the prime
// set; every tree has weight between n-1 and (n-1)W, which bounds the number
// of evaluation points by (n-1)(W-1)+1.
WeightCounts ieCount(const IeProblem& prob, SolveStats* stats) {
  const MultiGraph& g = *prob.graph;
  int n = g.numVertices();
  int m = g.numEdges();
  int k = static_cast<int>(prob.ntList.size());
  long maxWeight = prob.maxWeight;
  std::size_t countsSize =
      n >= 2 ? static_cast<std::size_t>(n - 1) * maxWeight + 1 : 1;
  WeightCounts counts(countsSize, 0);
  auto bump = [&](const mpz_class& by) {
    if (stats != nullptr) stats->subsetsEvaluated += by;
  };

  // One- and two-vertex graphs are handled directly: their spanning trees
  // have no internal vertices at all.
  if (n == 1) {
    bump(1);
    if (prob.ntList.empty()) counts[0] = 1;
    return counts;
  }
  if (n == 2) {
    bump(1);
    if (!prob.ntList.empty()) return counts;  // both endpoints are tree leaves
    if (prob.forced.size() >= 2) return counts;
    if (prob.forced.size() == 1) {
      counts[prob.weight[prob.forced[0]]] += 1;
      return counts;
    }
    for (int e = 0; e < m; ++e)
      if (!prob.deletedMask[e]) counts[prob.weight[e]] += 1;
    return counts;
  }

  // Forced edges must form a forest; otherwise no tree contains them all.
  {
    Dsu check(n);
    for (int e : prob.forced)
      if (!check.unite(g.edge(e).a, g.edge(e).b)) return counts;
  }

  mpz_class bound = spanningTreeCount(g);
  if (bound == 0) return counts;  // disconnected graph

  require(k < 63,
          "inclusion-exclusion supports at most 62 required-internal vertices");
  long long pointsNeeded = static_cast<long long>(n - 1) * (maxWeight - 1) + 1;
  require(pointsNeeded <= (1LL << 22),
          "edge weight range too large for interpolation-based counting");
  int numPoints = static_cast<int>(pointsNeeded);

  int numPrimes = static_cast<int>(
      (mpz_sizeinbase(bound.get_mpz_t(), 2) + 3 + 60) / 61);
  std::vector<std::uint64_t> primes = modulusPrimes(numPrimes);
  std::vector<Mont64> monts;
  monts.reserve(primes.size());
  for (std::uint64_t p : primes) monts.push_back(Mont64::make(p));

  // tpow[prime][point * (W+1) + w] = (point+1)^w in Montgomery form.
  std::size_t stride = static_cast<std::size_t>(maxWeight) + 1;
  std::vector<std::vector<std::uint64_t>> tpow(primes.size());
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    tpow[pi].resize(static_cast<std::size_t>(numPoints) * stride);
    for (int i = 0; i < numPoints; ++i) {
      std::uint64_t* row = tpow[pi].data() + i * stride;
      std::uint64_t base = monts[pi].toM(static_cast<std::uint64_t>(i) + 1);
      row[0] = monts[pi].one;
      for (long w = 1; w <= maxWeight; ++w) row[w] = monts[pi].mul(row[w - 1], base);
    }
  }

  std::uint64_t totalMasks = std::uint64_t(1) << k;
  int threads = std::max(1, prob.threads);
  threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), totalMasks));

  std::vector<ThreadState> states;
  states.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    states.push_back(ThreadState{
        TaskBuilder(prob),
        std::vector<std::vector<std::uint64_t>>(
            primes.size(), std::vector<std::uint64_t>(numPoints, 0)),
        {},
        0});
  }

  auto runWorker = [&](int ti) {
    ThreadState& st = states[ti];
    for (std::uint64_t mask = static_cast<std::uint64_t>(ti); mask < totalMasks;
         mask += static_cast<std::uint64_t>(threads)) {
      ++st.subsets;
      std::optional<SubsetTask> task = st.builder.build(mask);
      if (!task) continue;
      evaluateTask(*task, monts, tpow, numPoints, maxWeight, st);
    }
  };
  if (threads == 1) {
    runWorker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(runWorker, t);
    runWorker(0);
    for (std::thread& th : pool) th.join();
  }

  std::uint64_t seenMasks = 0;
  for (const ThreadState& st : states) seenMasks += st.subsets;
  internalCheck(seenMasks == totalMasks,
                "every leaf subset must be enumerated exactly once");
  bump(mpz_class(static_cast<unsigned long>(seenMasks)));

  // Merge the per-thread accumulators (modular addition commutes, so the
  // result does not depend on the thread count).
  std::vector<std::vector<std::uint64_t>>& acc = states[0].acc;
  for (int t = 1; t < threads; ++t)
    for (std::size_t pi = 0; pi < primes.size(); ++pi)
      for (int i = 0; i < numPoints; ++i)
        acc[pi][i] = monts[pi].add(acc[pi][i], states[t].acc[pi][i]);

  // Every counted tree has weight at least n-1, so the accumulated polynomial
  // is divisible by t^(n-1); divide it out before interpolating to keep the
  // number of points at (n-1)(W-1)+1.
  std::vector<std::uint64_t> points(numPoints);
  for (int i = 0; i < numPoints; ++i) points[i] = static_cast<std::uint64_t>(i) + 1;
  std::vector<std::vector<std::uint64_t>> residues(
      numPoints, std::vector<std::uint64_t>(primes.size(), 0));
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    const Mont64& mont = monts[pi];
    std::vector<std::uint64_t> values(numPoints);
    for (int i = 0; i < numPoints; ++i) {
      std::uint64_t tM = tpow[pi][i * stride + 1];
      std::uint64_t scale =
          mont.pow(mont.inv(tM), static_cast<std::uint64_t>(n - 1));
      values[i] = mont.mul(acc[pi][i], scale);
    }
    std::vector<std::uint64_t> coeffs = interpolate(points, values, mont);
    for (int ci = 0; ci < numPoints; ++ci)
      residues[ci][pi] = mont.fromM(coeffs[ci]);
  }

  for (int ci = 0; ci < numPoints; ++ci) {
    mpz_class c = crtSigned(residues[ci], primes);
    internalCheck(c >= 0 && c <= bound,
                  "tree counts must lie between zero and the spanning-tree total");
    counts[static_cast<std::size_t>(n - 1) + ci] = c;
  }

  bool constrained = !prob.forced.empty() ||
                     std::count(prob.deletedMask.begin(), prob.deletedMask.end(),
                                static_cast<char>(1)) > 0;
  if (prob.ntList.empty() && !constrained) {
    mpz_class sum = 0;
    for (const mpz_class& c : counts) sum += c;
    internalCheck(sum == bound,
                  "weighted spanning tree counts must sum to the matrix-tree total");
  }
  return counts;
}

IeProblem makeProblem(const Instance& inst, const IeConstraints& constraints,
                      int threads) {
  std::optional<std::vector<long>> w = integralWeights(inst);
  if (!w.has_value())
    throw InputError("counting requires positive integral edge weights");
  IeProblem prob;
  prob.graph = &inst.graph;
  prob.weight = std::move(*w);
  for (long wi : prob.weight) prob.maxWeight = std::max(prob.maxWeight, wi);
  prob.ntList = inst.ntList();
  int m = inst.numEdges();
  prob.forcedMask.assign(m, 0);
  prob.deletedMask.assign(m, 0);
  for (int e : constraints.forced) {
    require(e >= 0 && e < m, "forced edge id out of range");
    prob.forcedMask[e] = 1;
  }
  for (int e : constraints.deleted) {
    require(e >= 0 && e < m, "deleted edge id out of range");
    require(!prob.forcedMask[e], "an edge cannot be both forced and deleted");
    prob.deletedMask[e] = 1;
  }
  for (int e = 0; e < m; ++e)
    if (prob.forcedMask[e]) prob.forced.push_back(e);
  prob.threads = std::max(1, threads);
  return prob;
}

}  // namespace

mpz_class spanningTreeCount(const MultiGraph& g) {
  int n = g.numVertices();
  if (n == 0) return 0;
  if (n == 1) return 1;
  int s = n - 1;  // Laplacian minor: drop the last vertex
  std::vector<mpz_class> lap(static_cast<std::size_t>(s) * s, 0);
  for (const MultiGraph::Edge& e : g.edges()) {
    if (e.a < s) lap[static_cast<std::size_t>(e.a) * s + e.a] += 1;
    if (e.b < s) lap[static_cast<std::size_t>(e.b) * s + e.b] += 1;
    if (e.a < s && e.b < s) {
      lap[static_cast<std::size_t>(e.a) * s + e.b] -= 1;
      lap[static_cast<std::size_t>(e.b) * s + e.a] -= 1;
    }
  }
  mpz_class det = bareissDeterminant(lap, s);
  internalCheck(det >= 0, "a spanning tree count cannot be negative");
  return det;
}

WeightCounts countSpanningTreesByWeight(const Instance& inst, int threads) {
  IeProblem prob = makeProblem(inst, IeConstraints{}, threads);
  prob.ntList.clear();  // count all spanning trees, ignoring the mask
  return ieCount(prob, nullptr);
}

WeightCounts countConstrainedMatchings(const Instance& inst,
                                       const std::vector<int>& x) {
  std::optional<std::vector<long>> w = integralWeights(inst);
  require(w.has_value(),
          "matching counts require positive integral edge weights");
  int n = inst.numVertices();
  std::vector<char> inX(n, 0);
  for (int v : x) {
    require(v >= 0 && v < n, "matching vertex out of range");
    require(!inX[v], "matching vertices must be distinct");
    inX[v] = 1;
  }
  long maxWeight = 1;
  for (long wi : *w) maxWeight = std::max(maxWeight, wi);
  std::size_t size = x.size() * static_cast<std::size_t>(maxWeight) + 1;
  WeightCounts dp(size, 0);
  dp[0] = 1;
  for (int v : x) {
    WeightCounts next(size, 0);
    for (int e : inst.graph.incidentEdges(v)) {
      if (inX[inst.graph.otherEnd(e, v)]) continue;
      std::size_t we = static_cast<std::size_t>((*w)[e]);
      for (std::size_t j = we; j < size; ++j)
        if (dp[j - we] != 0) next[j] += dp[j - we];
    }
    dp = std::move(next);
  }
  return dp;
}

WeightCounts countAdmissibleTreesByWeight(const Instance& inst,
                                          SolveStats* stats, int threads) {
  IeProblem prob = makeProblem(inst, IeConstraints{}, threads);
  return ieCount(prob, stats);
}

WeightCounts countAdmissibleTreesConstrained(const Instance& inst,
                                             const IeConstraints& constraints,
                                             SolveStats* stats, int threads) {
  IeProblem prob = makeProblem(inst, constraints, threads);
  return ieCount(prob, stats);
}

SolveResult solveByInclusionExclusion(const Instance& inst,
                                      const IeOptions& options) {
  auto start = std::chrono::steady_clock::now();
  SolveResult result;
  result.algorithm = "ie";
  WeightCounts counts =
      countAdmissibleTreesByWeight(inst, &result.stats, options.threads);
  long best = -1;
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (counts[q] != 0) {
      best = static_cast<long>(q);
      break;
    }
  }
  if (best >= 0) {
    result.feasible = true;
    result.weight = best;
    if (options.wantWitness) {
      // Self-reduction: walk the edges in id order; keep an edge if some
      // optimal tree extends the forced set with it, otherwise ban it.  The
      // constrained count stays positive throughout, so the forced edges end
      // up being exactly one optimal tree.
      int n = inst.numVertices();
      int m = inst.numEdges();
      IeConstraints current;
      for (int e = 0; e < m && static_cast<int>(current.forced.size()) < n - 1;
           ++e) {
        IeConstraints trial = current;
        trial.forced.push_back(e);
        WeightCounts withEdge = countAdmissibleTreesConstrained(
            inst, trial, &result.stats, options.threads);
        if (withEdge[best] != 0)
          current = std::move(trial);
        else
          current.deleted.push_back(e);
      }
      internalCheck(static_cast<int>(current.forced.size()) == n - 1,
                    "witness reconstruction must assemble a spanning tree");
      EdgeSet tree = normalizedEdgeSet(current.forced);
      internalCheck(isAdmissibleSpanningTree(inst, tree),
                    "reconstructed tree must be admissible");
      internalCheck(weightOf(inst, tree) == result.weight,
                    "reconstructed tree must attain the counted optimum");
      result.tree = std::move(tree);
    }
  }
  result.stats.wallMillis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return result;
}

}  // namespace ntst

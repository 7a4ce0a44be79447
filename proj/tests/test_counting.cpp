#include <gmpxx.h>

#include "doctest.h"
#include "helpers.hpp"
#include "ntst/counting.hpp"
#include "ntst/errors.hpp"
#include "ntst/oracle.hpp"
#include "ntst/rng.hpp"

using namespace ntst;
using namespace ntst::testing;

namespace {

mpz_class total(const WeightCounts& c) {
  mpz_class s = 0;
  for (const mpz_class& v : c) s += v;
  return s;
}

}  // namespace

TEST_CASE("spanningTreeCount fixed values") {
  CHECK(spanningTreeCount(MultiGraph(1)) == 1);
  CHECK(spanningTreeCount(MultiGraph(2)) == 0);  // disconnected
  CHECK(spanningTreeCount(pathGraph(4)) == 1);
  CHECK(spanningTreeCount(completeGraph(3)) == 3);
  CHECK(spanningTreeCount(completeGraph(4)) == 16);   // Cayley 4^2
  CHECK(spanningTreeCount(completeGraph(6)) == 1296); // Cayley 6^4
  CHECK(spanningTreeCount(cycleGraph(5)) == 5);
  MultiGraph par(2, {{0, 1}, {0, 1}});  // two parallel edges: two distinct trees
  CHECK(spanningTreeCount(par) == 2);
}

TEST_CASE("spanningTreeCount equals subset enumeration") {
  Rng rng(1001);
  for (int it = 0; it < 50; ++it) {
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 7;
    opt.allowParallel = true;
    Instance inst = randomInstance(rng, opt);
    CHECK(spanningTreeCount(inst.graph) ==
          mpz_class((long)allSpanningTrees(inst.graph).size()));
  }
}

TEST_CASE("countSpanningTreesByWeight") {
  // single edge of weight 5: exactly one tree, at weight 5
  {
    Instance p2 = makeInst(pathGraph(2), {}, std::vector<Weight>{Weight(5)});
    WeightCounts c = countSpanningTreesByWeight(p2);
    REQUIRE((int)c.size() >= 6);
    CHECK(c[5] == 1);
    CHECK(total(c) == 1);
  }
  // unit K3: three trees of weight 2
  {
    WeightCounts c = countSpanningTreesByWeight(makeInst(completeGraph(3), {}));
    CHECK(c[2] == 3);
    CHECK(total(c) == 3);
  }
  // unit K4: sixteen trees of weight 3
  {
    WeightCounts c = countSpanningTreesByWeight(makeInst(completeGraph(4), {}));
    CHECK(c[3] == 16);
    CHECK(total(c) == 16);
  }
  // P3 with weights 2 and 3: the unique tree sits at weight 5
  {
    Instance p3 = makeInst(pathGraph(3), {}, std::vector<Weight>{Weight(2), Weight(3)});
    WeightCounts c = countSpanningTreesByWeight(p3);
    CHECK(c[5] == 1);
    CHECK(total(c) == 1);
  }
  // rational weights are rejected as bad input
  {
    Instance bad = makeInst(pathGraph(2), {}, std::vector<Weight>{Weight(1, 3)});
    CHECK_THROWS_AS(countSpanningTreesByWeight(bad), InputError);
  }
}

TEST_CASE("weight histogram sums to the Kirchhoff count") {
  Rng rng(2002);
  for (int it = 0; it < 40; ++it) {
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 9;
    opt.weightMode = WeightMode::Integral;
    opt.maxWeight = 4;
    opt.allowParallel = true;
    Instance inst = randomInstance(rng, opt);
    WeightCounts c = countSpanningTreesByWeight(inst);
    CHECK(total(c) == spanningTreeCount(inst.graph));
    for (const mpz_class& v : c) CHECK(v >= 0);
  }
}

TEST_CASE("countConstrainedMatchings") {
  // x1 may pick x1-u (1) or x1-v (2); x2 must pick x2-u (1).
  {
    MultiGraph g(4);  // 0=x1 1=x2 2=u 3=v
    g.addEdge(0, 2);
    g.addEdge(0, 3);
    g.addEdge(1, 2);
    Instance inst =
        makeInst(g, {}, std::vector<Weight>{Weight(1), Weight(2), Weight(1)});
    WeightCounts row = countConstrainedMatchings(inst, {0, 1});
    REQUIRE((int)row.size() >= 4);
    CHECK(row[2] == 1);
    CHECK(row[3] == 1);
    CHECK(total(row) == 2);
  }
  // empty X: one empty selection of weight 0
  {
    WeightCounts row = countConstrainedMatchings(makeInst(completeGraph(3), {}), {});
    REQUIRE(!row.empty());
    CHECK(row[0] == 1);
    CHECK(total(row) == 1);
  }
  // a vertex of X with all neighbours inside X has no valid pick
  {
    MultiGraph g(3);
    g.addEdge(0, 1);  // both ends in X
    g.addEdge(1, 2);
    WeightCounts row = countConstrainedMatchings(makeInst(g, {}), {0, 1});
    CHECK(total(row) == 0);
  }
  // duplicate X vertices are rejected
  CHECK_THROWS_AS(countConstrainedMatchings(makeInst(completeGraph(3), {}), {0, 0}),
                  PreconditionError);
}

TEST_CASE("countAdmissibleTreesByWeight fixed values") {
  // K4, one marked vertex: 7 of the 16 trees keep it internal, all at weight 3
  {
    SolveStats stats;
    WeightCounts c = countAdmissibleTreesByWeight(makeInst(completeGraph(4), {0}), &stats);
    CHECK(c[3] == 7);
    CHECK(total(c) == 7);
    CHECK(stats.subsetsEvaluated == 2);  // 2^k with k = 1
  }
  // C4 with all vertices marked: every spanning tree is a path with 2 leaves
  {
    WeightCounts c = countAdmissibleTreesByWeight(makeInst(cycleGraph(4), {0, 1, 2, 3}));
    CHECK(total(c) == 0);
  }
  // no marks: histogram equals the plain spanning-tree histogram
  {
    Rng rng(3003);
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 8;
    opt.weightMode = WeightMode::Integral;
    opt.maxWeight = 3;
    for (int it = 0; it < 10; ++it) {
      Instance inst = randomInstance(rng, opt);
      Instance unmarked(inst.graph, std::vector<char>(inst.numVertices(), 0), inst.weights);
      WeightCounts a = countAdmissibleTreesByWeight(unmarked);
      WeightCounts b = countSpanningTreesByWeight(unmarked);
      a.resize(std::max(a.size(), b.size()), 0);
      b.resize(a.size(), 0);
      CHECK(a == b);
    }
  }
}

TEST_CASE("countAdmissibleTreesByWeight matches exhaustive enumeration") {
  Rng rng(4004);
  for (int it = 0; it < 60; ++it) {
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 7;
    opt.ntFraction = 0.5;
    opt.weightMode = it % 2 ? WeightMode::Integral : WeightMode::Unit;
    opt.maxWeight = 4;
    opt.allowParallel = (it % 3 == 0);
    Instance inst = randomInstance(rng, opt);
    OracleResult oracle = bruteForceSolve(inst);
    REQUIRE(oracle.admissibleByWeight.has_value());
    WeightCounts ie = countAdmissibleTreesByWeight(inst);
    WeightCounts want = *oracle.admissibleByWeight;
    ie.resize(std::max(ie.size(), want.size()), 0);
    want.resize(ie.size(), 0);
    CHECK(ie == want);
  }
}

TEST_CASE("constrained counting splits on an edge") {
  // trees through e  +  trees avoiding e  ==  all trees
  Rng rng(5005);
  for (int it = 0; it < 20; ++it) {
    RandomOptions opt;
    opt.minVertices = 3;
    opt.maxVertices = 7;
    opt.ntFraction = 0.4;
    Instance inst = randomInstance(rng, opt);
    if (inst.numEdges() == 0) continue;
    int e = rng.range(0, inst.numEdges() - 1);
    WeightCounts all = countAdmissibleTreesByWeight(inst);
    IeConstraints with, without;
    with.forced = {e};
    without.deleted = {e};
    WeightCounts viaE = countAdmissibleTreesConstrained(inst, with);
    WeightCounts sansE = countAdmissibleTreesConstrained(inst, without);
    size_t len = std::max({all.size(), viaE.size(), sansE.size()});
    all.resize(len, 0);
    viaE.resize(len, 0);
    sansE.resize(len, 0);
    for (size_t q = 0; q < len; ++q) CHECK(all[q] == viaE[q] + sansE[q]);
  }
  // forced and deleted lists must not intersect
  Instance tri = makeInst(completeGraph(3), {});
  IeConstraints badc;
  badc.forced = {0};
  badc.deleted = {0};
  CHECK_THROWS_AS(countAdmissibleTreesConstrained(tri, badc), PreconditionError);
}

TEST_CASE("multithreaded counting is deterministic") {
  Rng rng(6006);
  RandomOptions opt;
  opt.minVertices = 6;
  opt.maxVertices = 10;
  opt.ntFraction = 0.5;
  opt.weightMode = WeightMode::Integral;
  opt.maxWeight = 4;
  for (int it = 0; it < 6; ++it) {
    Instance inst = randomInstance(rng, opt);
    CHECK(countAdmissibleTreesByWeight(inst, nullptr, 1) ==
          countAdmissibleTreesByWeight(inst, nullptr, 4));
  }
}

TEST_CASE("solveByInclusionExclusion") {
  // K4, one marked vertex: optimum 3, witness verifies
  {
    Instance inst = makeInst(completeGraph(4), {0});
    IeOptions opt;
    opt.wantWitness = true;
    SolveResult r = solveByInclusionExclusion(inst, opt);
    CHECK(r.feasible);
    CHECK(r.weight == 3);
    CHECK(r.algorithm == "ie");
    REQUIRE(r.tree.has_value());
    CHECK(isAdmissibleSpanningTree(inst, *r.tree));
    CHECK(weightOf(inst, *r.tree) == 3);
  }
  // P3 with weights 2 and 3 and the middle marked: forced to take both edges
  {
    Instance inst = makeInst(pathGraph(3), {1}, std::vector<Weight>{Weight(2), Weight(3)});
    SolveResult r = solveByInclusionExclusion(inst);
    CHECK(r.feasible);
    CHECK(r.weight == 5);
  }
  // C5 with three consecutive marked vertices: drop one edge next to the run
  {
    Instance inst = makeInst(cycleGraph(5), {1, 2, 3});
    SolveResult r = solveByInclusionExclusion(inst);
    CHECK(r.feasible);
    CHECK(r.weight == 4);
  }
  // P3 with an endpoint marked: infeasible
  {
    SolveResult r = solveByInclusionExclusion(makeInst(pathGraph(3), {0}));
    CHECK_FALSE(r.feasible);
  }
  // tiny edge cases
  {
    SolveResult one = solveByInclusionExclusion(makeInst(MultiGraph(1), {}));
    CHECK(one.feasible);
    CHECK(one.weight == 0);
    SolveResult two = solveByInclusionExclusion(makeInst(pathGraph(2), {}));
    CHECK(two.feasible);
    CHECK(two.weight == 1);
    SolveResult twoBad = solveByInclusionExclusion(makeInst(pathGraph(2), {0}));
    CHECK_FALSE(twoBad.feasible);  // k exceeds n-2
  }
  // a pure count visits exactly 2^k subsets
  {
    Instance inst = makeInst(completeGraph(6), {0, 1, 2});
    SolveStats stats;
    countAdmissibleTreesByWeight(inst, &stats, 1);
    CHECK(stats.subsetsEvaluated == 8);
  }
}

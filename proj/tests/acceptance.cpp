// Acceptance gate: one criterion per invocation (argv[1] = 1..7), printing a
// single [PASS]/[FAIL] line and exiting 0/1.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "ntst/counting.hpp"
#include "ntst/graph_ops.hpp"
#include "ntst/io.hpp"
#include "ntst/kernel.hpp"
#include "ntst/matroid.hpp"
#include "ntst/oracle.hpp"
#include "ntst/rng.hpp"

using namespace ntst;
using Clock = std::chrono::steady_clock;

namespace {

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

MultiGraph petersen() {
  MultiGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.addEdge(i, (i + 1) % 5);
    g.addEdge(5 + i, 5 + (i + 2) % 5);
    g.addEdge(i, 5 + i);
  }
  return g;
}

MultiGraph cycle(int n) {
  MultiGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  return g;
}

Instance instWithNt(MultiGraph g, const std::vector<int>& ntIds,
                    std::optional<std::vector<Weight>> w = std::nullopt) {
  std::vector<char> nt(g.numVertices(), 0);
  for (int v : ntIds) nt[v] = 1;
  return Instance(std::move(g), std::move(nt), std::move(w));
}

// ---- criterion 1: matroid solver vs exhaustive oracle ---------------------

Criterion criterion1() {
  Criterion c;
  Rng rng(10001);
  for (int it = 0; it < 500 && c.ok; ++it) {
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 10;
    opt.maxExtraEdges = 6;
    opt.ntFraction = 0.45;
    opt.allowParallel = (it % 5 == 0);
    opt.weightMode = (it % 3 == 0)   ? WeightMode::Unit
                     : (it % 3 == 1) ? WeightMode::Integral
                                     : WeightMode::Rational;
    opt.maxWeight = 4;
    Instance inst = randomInstance(rng, opt);
    OracleResult truth = bruteForceSolve(inst);
    SolveResult got = solveByMatroidIntersection(inst);
    if (got.feasible != truth.feasible) {
      c.fail("feasibility mismatch at instance " + std::to_string(it));
      break;
    }
    if (got.feasible) {
      if (got.weight != truth.weight) {
        c.fail("optimum mismatch at instance " + std::to_string(it));
        break;
      }
      if (!got.tree || !isAdmissibleSpanningTree(inst, *got.tree) ||
          weightOf(inst, *got.tree) != got.weight)
        c.fail("bad witness at instance " + std::to_string(it));
    }
  }
  if (c.ok) c.detail = "500 instances, matroid == oracle on feasibility and optimum";
  return c;
}

// ---- criterion 2: counting vs exhaustive histograms ------------------------

bool histogramsEqual(WeightCounts a, WeightCounts b) {
  size_t len = std::max(a.size(), b.size());
  a.resize(len, 0);
  b.resize(len, 0);
  return a == b;
}

Criterion criterion2() {
  Criterion c;
  MultiGraph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  MultiGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  {
    WeightCounts k3c = countAdmissibleTreesByWeight(instWithNt(k3, {}));
    if (!(k3c.size() > 2 && k3c[2] == 3)) c.fail("triangle histogram is not {2:3}");
  }
  {
    WeightCounts k4c = countAdmissibleTreesByWeight(instWithNt(k4, {}));
    mpz_class tot = 0;
    for (const mpz_class& v : k4c) tot += v;
    if (tot != 16) c.fail("K4 histogram total is not 16");
  }
  {
    WeightCounts k4one = countAdmissibleTreesByWeight(instWithNt(k4, {0}));
    mpz_class tot = 0;
    for (const mpz_class& v : k4one) tot += v;
    if (!(k4one.size() > 3 && k4one[3] == 7 && tot == 7))
      c.fail("K4 single-mark histogram is not {3:7}");
  }
  Rng rng(20002);
  for (int it = 0; it < 300 && c.ok; ++it) {
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 7;
    opt.ntFraction = 0.5;
    opt.allowParallel = (it % 4 == 0);
    opt.weightMode = (it % 2 == 0) ? WeightMode::Integral : WeightMode::Unit;
    opt.maxWeight = 4;
    Instance inst = randomInstance(rng, opt);
    OracleResult truth = bruteForceSolve(inst);
    if (!truth.admissibleByWeight) {
      c.fail("oracle returned no histogram");
      break;
    }
    if (!histogramsEqual(countAdmissibleTreesByWeight(inst), *truth.admissibleByWeight))
      c.fail("histogram mismatch at instance " + std::to_string(it));
  }
  if (c.ok) c.detail = "300 instances + fixed checks, counting == oracle histograms";
  return c;
}

// ---- criterion 3: kernel soundness and size bounds -------------------------

bool mlPatternsAbsent(const Instance& red, std::string& why) {
  const MultiGraph& g = red.graph;
  int n = g.numVertices();
  if (n == 1) return true;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) <= 1) {
      why = "degree-one vertex survived";
      return false;
    }
  for (int e = 0; e < g.numEdges(); ++e)
    for (int f = e + 1; f < g.numEdges(); ++f) {
      auto a = g.edge(e), b = g.edge(f);
      if (std::minmax(a.a, a.b) == std::minmax(b.a, b.b)) {
        why = "parallel bundle survived";
        return false;
      }
    }
  auto deg2 = [&](int v) { return g.degree(v) == 2; };
  for (int e = 0; e < g.numEdges(); ++e) {
    auto ed = g.edge(e);
    if (deg2(ed.a) && deg2(ed.b)) {
      if (red.isNt(ed.a) && red.isNt(ed.b)) {
        why = "adjacent marked degree-two pair survived";
        return false;
      }
      if (!red.isNt(ed.a) && !red.isNt(ed.b)) {
        why = "adjacent free degree-two pair survived";
        return false;
      }
    }
  }
  // no path of four consecutive degree-two vertices
  for (int v = 0; v < n; ++v) {
    if (!deg2(v)) continue;
    for (int e : g.incidentEdges(v)) {
      int u = g.otherEnd(e, v);
      if (!deg2(u)) continue;
      // extend both ways
      for (int f : g.incidentEdges(u)) {
        int w = g.otherEnd(f, u);
        if (w == v || !deg2(w)) continue;
        for (int h : g.incidentEdges(w)) {
          int x = g.otherEnd(h, w);
          if (x == u || x == v || !deg2(x)) continue;
          why = "degree-two run of four survived";
          return false;
        }
      }
    }
  }
  return true;
}

Criterion criterion3() {
  Criterion c;
  Rng rng(30003);
  for (int it = 0; it < 300 && c.ok; ++it) {
    RandomOptions opt;
    opt.minVertices = 2;
    opt.maxVertices = 30;
    opt.maxExtraEdges = 8;
    opt.ntFraction = 0.3;
    opt.maxNt = 6;
    Instance inst = randomInstance(rng, opt);
    int kOrig = inst.numNt();
    std::optional<OracleResult> truth;
    if (inst.numVertices() <= 10) truth = bruteForceSolve(inst);
    for (const std::string& rule : {std::string("k"), std::string("vc"), std::string("ml")}) {
      KernelResult kr = rule == "k" ? kernelizeK(inst)
                        : rule == "vc" ? kernelizeVC(inst)
                                       : kernelizeML(inst);
      if (kr.verdict == KernelVerdict::Infeasible) {
        if (truth && truth->feasible) {
          c.fail(rule + " kernel declared a feasible instance infeasible (it " +
                 std::to_string(it) + ")");
          break;
        }
        continue;
      }
      if (!replayTrace(kr)) {
        c.fail(rule + " kernel trace failed to replay (it " + std::to_string(it) + ")");
        break;
      }
      const Instance& red = kr.reduced;
      if (rule == "k") {
        int kHat = red.numNt();
        bool sizeOk = kHat >= 1 ? red.numVertices() <= 3 * kHat : red.numVertices() == 1;
        if (!sizeOk || red.numVertices() > std::max(3 * kOrig, 3)) {
          c.fail("3k size bound violated (it " + std::to_string(it) + ")");
          break;
        }
      } else if (rule == "vc") {
        int s = (int)kr.vcCover.size();
        if (red.numVertices() > 4 * s + 2) {
          c.fail("4|S|+2 size bound violated (it " + std::to_string(it) + ")");
          break;
        }
        if (red.numVertices() > 1) {
          // the reported cover must cover every non-root edge
          int root = red.numVertices() - 1;
          std::vector<char> inS(red.numVertices(), 0);
          for (int v : kr.vcCover) inS[v] = 1;
          for (int e = 0; e < red.numEdges(); ++e) {
            auto ed = red.graph.edge(e);
            if (ed.a == root || ed.b == root) continue;
            if (!inS[ed.a] && !inS[ed.b]) {
              c.fail("reported cover misses an edge (it " + std::to_string(it) + ")");
              break;
            }
          }
          if (!c.ok) break;
        }
      } else {
        std::string why;
        if (!mlPatternsAbsent(red, why)) {
          c.fail("degree-rule kernel left a " + why + " (it " + std::to_string(it) + ")");
          break;
        }
      }
      SolveResult redSolved = solveByMatroidIntersection(red);
      if (truth && redSolved.feasible != truth->feasible) {
        c.fail(rule + " kernel changed the answer (it " + std::to_string(it) + ")");
        break;
      }
      if (redSolved.feasible) {
        EdgeSet lifted = liftSolution(kr, *redSolved.tree);
        if (!isAdmissibleSpanningTree(inst, lifted)) {
          c.fail(rule + " kernel lifted a bad witness (it " + std::to_string(it) + ")");
          break;
        }
      }
    }
  }
  if (c.ok) c.detail = "300 instances, all three kernels sound, bounded, and liftable";
  return c;
}

// ---- criterion 4: partition matroid axioms and closed form vs flow ---------

PartitionMatroid randomPm(Rng& rng) {
  PartitionMatroid pm;
  int ground = rng.range(1, 10);
  int blocks = rng.range(1, std::min(ground, 4));
  pm.blockOf.resize(ground);
  for (int e = 0; e < ground; ++e) pm.blockOf[e] = rng.range(0, blocks - 1);
  std::vector<long> size(blocks, 0);
  for (int b : pm.blockOf) ++size[b];
  pm.lower.resize(blocks);
  pm.upper.resize(blocks);
  for (int b = 0; b < blocks; ++b) {
    pm.lower[b] = rng.range(0, (int)size[b]);
    pm.upper[b] = rng.range((int)pm.lower[b], (int)size[b] + 1);
  }
  pm.rank = rng.range(0, ground);
  return pm;
}

bool pmIsBase(const PartitionMatroid& pm, unsigned mask) {
  long count = 0;
  std::vector<long> per(pm.numBlocks(), 0);
  for (int e = 0; e < pm.groundSize(); ++e)
    if (mask >> e & 1) {
      ++count;
      ++per[pm.blockOf[e]];
    }
  if (count != pm.rank) return false;
  for (int b = 0; b < pm.numBlocks(); ++b)
    if (per[b] < pm.lower[b] || per[b] > pm.upper[b]) return false;
  return true;
}

Criterion criterion4() {
  Criterion c;
  Rng rng(40004);
  int exchangesChecked = 0;
  for (int it = 0; it < 1000 && c.ok; ++it) {
    PartitionMatroid pm = randomPm(rng);
    std::vector<unsigned> bases;
    for (unsigned mask = 0; mask < (1u << pm.groundSize()); ++mask)
      if (pmIsBase(pm, mask)) bases.push_back(mask);
    if (bases.empty()) continue;
    for (int trial = 0; trial < 12 && c.ok; ++trial) {
      unsigned b1 = bases[rng.range(0, (int)bases.size() - 1)];
      unsigned b2 = bases[rng.range(0, (int)bases.size() - 1)];
      for (int x = 0; x < pm.groundSize() && c.ok; ++x) {
        if (!((b1 >> x & 1) && !(b2 >> x & 1))) continue;
        bool found = false;
        for (int y = 0; y < pm.groundSize() && !found; ++y)
          if ((b2 >> y & 1) && !(b1 >> y & 1) && pmIsBase(pm, (b1 & ~(1u << x)) | (1u << y)))
            found = true;
        ++exchangesChecked;
        if (!found) c.fail("base exchange failed at instance " + std::to_string(it));
      }
    }
  }
  if (exchangesChecked == 0) c.fail("no exchanges were exercised");
  Rng rng2(40005);
  for (int it = 0; it < 1000 && c.ok; ++it) {
    PartitionMatroid pm = randomPm(rng2);
    std::vector<char> chosen(pm.groundSize(), 0);
    for (auto& ch : chosen) ch = rng2.chance(0.4) ? 1 : 0;
    if (partitionExtensionFeasible(pm, chosen) != partitionExtensionFeasibleByFlow(pm, chosen))
      c.fail("closed form disagrees with flow at instance " + std::to_string(it));
  }
  if (c.ok)
    c.detail = "1000 exchange-axiom instances (" + std::to_string(exchangesChecked) +
               " exchanges) + 1000 closed-form == flow";
  return c;
}

// ---- criterion 5: Hamiltonicity special case --------------------------------

Criterion criterion5() {
  Criterion c;
  auto decideBoth = [&](const Instance& inst, bool expectFeasible, const std::string& name) {
    SolveResult mi = solveByMatroidIntersection(inst);
    SolveResult ie = solveByInclusionExclusion(inst);
    if (mi.feasible != expectFeasible)
      c.fail(name + ": matroid solver got the wrong answer");
    if (ie.feasible != expectFeasible)
      c.fail(name + ": inclusion-exclusion solver got the wrong answer");
  };
  for (int n : {5, 6, 8}) decideBoth(falseTwinHamInstance(cycle(n)), true, "C" + std::to_string(n));
  decideBoth(falseTwinHamInstance(petersen()), false, "Petersen");
  MultiGraph claw(4, {{0, 1}, {0, 2}, {0, 3}});
  decideBoth(falseTwinHamInstance(claw), false, "K_{1,3}");
  if (c.ok) c.detail = "cycles feasible, Petersen and the claw infeasible, via both solvers";
  return c;
}

// ---- criterion 6: scaling smoke test ----------------------------------------

Instance bigCountingInstance() {
  int n = 30;
  MultiGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  int chords[8][2] = {{0, 15}, {3, 20}, {6, 25}, {9, 22}, {12, 27}, {2, 17}, {5, 11}, {18, 28}};
  for (auto& ch : chords) g.addEdge(ch[0], ch[1]);
  std::vector<Weight> w;
  for (int e = 0; e < g.numEdges(); ++e) w.push_back(Weight(1 + e % 4));
  std::vector<char> nt(n, 0);
  for (int i = 0; i < 12; ++i) nt[(i * n) / 12] = 1;
  return Instance(std::move(g), std::move(nt), std::move(w));
}

Instance bigMatroidInstance() {
  int n = 60;
  MultiGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  int chords[6][2] = {{2, 32}, {8, 38}, {13, 43}, {19, 49}, {24, 54}, {4, 29}};
  for (auto& ch : chords) g.addEdge(ch[0], ch[1]);
  std::vector<char> nt(n, 0);
  for (int p = 0; p < 12; ++p) {
    nt[5 * p] = 1;
    nt[5 * p + 1] = 1;
  }
  return Instance(std::move(g), std::move(nt), std::nullopt);
}

Criterion criterion6() {
  Criterion c;
  {
    Instance inst = bigCountingInstance();
    if (inst.numNt() != 12) c.fail("counting instance is not k = 12");
    Clock::time_point t0 = Clock::now();
    IeOptions opt;
    opt.threads = 1;
    SolveResult r = solveByInclusionExclusion(inst, opt);
    double secs = secondsSince(t0);
    if (secs >= 60.0) c.fail("inclusion-exclusion run took too long");
    if (!r.feasible) c.fail("counting instance should be feasible");
    if (r.stats.subsetsEvaluated != (mpz_class(1) << 12))
      c.fail("subset counter is not 2^12");
  }
  {
    Instance inst = bigMatroidInstance();
    int ell = 0;
    for (int e = 0; e < inst.numEdges(); ++e) {
      auto ed = inst.graph.edge(e);
      if (inst.isNt(ed.a) && inst.isNt(ed.b)) ++ell;
    }
    if (ell != 12) c.fail("matroid instance is not ell = 12");
    Clock::time_point t0 = Clock::now();
    SolveResult r = solveByMatroidIntersection(inst);
    double secs = secondsSince(t0);
    if (secs >= 60.0) c.fail("matroid run took too long");
    if (!r.feasible) c.fail("matroid instance should be feasible");
    if (r.stats.branchesEvaluated > (mpz_class(1) << 12))
      c.fail("branch counter exceeds 2^12");
  }
  if (c.ok) c.detail = "n=30/k=12 count and n=60/ell=12 solve inside 60 s with bounded counters";
  return c;
}

// ---- criterion 7: bundled corpus cross-agreement ----------------------------

Criterion criterion7(const std::string& cli, const std::string& corpus) {
  Criterion c;
  if (cli.empty() || corpus.empty()) {
    c.fail("usage: acceptance 7 <cli-binary> <corpus-dir>");
    return c;
  }
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(corpus))
    if (entry.is_regular_file()) ++files;
  if (files != 100) {
    c.fail("corpus holds " + std::to_string(files) + " files, expected 100");
    return c;
  }
  std::string cmd = "\"" + cli + "\" bench \"" + corpus + "\" --suite cross > /dev/null";
  int rc = std::system(cmd.c_str());
  if (rc != 0) c.fail("bench cross suite exited with a failure");
  if (c.ok) c.detail = "bench cross suite agreed on all 100 corpus instances";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <criterion 1..7> [args]\n";
    return 2;
  }
  int which = std::atoi(argv[1]);
  Criterion c;
  std::string label;
  switch (which) {
    case 1:
      label = "matroid solver matches the exhaustive oracle";
      c = criterion1();
      break;
    case 2:
      label = "weight-histogram counting matches the exhaustive oracle";
      c = criterion2();
      break;
    case 3:
      label = "kernels are sound, size-bounded, and witness-lifting";
      c = criterion3();
      break;
    case 4:
      label = "partition matroid axioms hold; closed form equals flow";
      c = criterion4();
      break;
    case 5:
      label = "Hamiltonicity reduction decided correctly by both solvers";
      c = criterion5();
      break;
    case 6:
      label = "scaling smoke test with bounded work counters";
      c = criterion6();
      break;
    case 7:
      label = "cross-algorithm agreement on the bundled corpus";
      c = criterion7(argc > 2 ? argv[2] : "", argc > 3 ? argv[3] : "");
      break;
    default:
      std::cerr << "unknown criterion " << which << "\n";
      return 2;
  }
  std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << which << ": " << label;
  if (!c.detail.empty()) std::cout << " — " << c.detail;
  std::cout << std::endl;
  return c.ok ? 0 : 1;
}

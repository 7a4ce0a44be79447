#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ntst/counting.hpp"
#include "ntst/errors.hpp"
#include "ntst/graph_ops.hpp"
#include "ntst/io.hpp"
#include "ntst/kernel.hpp"
#include "ntst/matroid.hpp"
#include "ntst/oracle.hpp"
#include "ntst/rng.hpp"

using json = nlohmann::ordered_json;
using namespace ntst;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

int interiorEdgeCount(const Instance& inst) {
  int ell = 0;
  for (int e = 0; e < inst.numEdges(); ++e) {
    const MultiGraph::Edge& ed = inst.graph.edge(e);
    if (inst.isNt(ed.a) && inst.isNt(ed.b)) ++ell;
  }
  return ell;
}

std::string resolveAlgo(const std::string& algo, const Instance& inst) {
  if (algo != "auto") return algo;
  bool integral = integralWeights(inst).has_value();
  int ell = interiorEdgeCount(inst);
  int k = inst.numNt();
  if (!integral || ell <= 16 || ell < k) return "matroid";
  if (k <= 20) return "ie";
  return "matroid";
}

json treeJson(const Instance& inst, const EdgeSet& tree) {
  json arr = json::array();
  for (int e : tree) {
    const MultiGraph::Edge& ed = inst.graph.edge(e);
    arr.push_back({ed.a + 1, ed.b + 1, inst.edgeWeight(e).get_str()});
  }
  return arr;
}

json statsJson(const SolveStats& stats) {
  return {{"subsetsEvaluated", stats.subsetsEvaluated.get_str()},
          {"branchesEvaluated", stats.branchesEvaluated.get_str()},
          {"wallMillis", stats.wallMillis}};
}

SolveResult dispatchSolve(const Instance& inst, const std::string& algo, bool witness,
                          int threads) {
  if (algo == "matroid") {
    MatroidOptions opt;
    opt.threads = threads;
    return solveByMatroidIntersection(inst, opt);
  }
  if (algo == "ie") {
    IeOptions opt;
    opt.wantWitness = witness;
    opt.threads = threads;
    return solveByInclusionExclusion(inst, opt);
  }
  if (algo == "brute") {
    OracleResult br = bruteForceSolve(inst);
    SolveResult r;
    r.feasible = br.feasible;
    r.weight = br.weight;
    r.tree = br.tree;
    r.algorithm = "brute";
    return r;
  }
  throw InputError("unknown algorithm: " + algo);
}

int cmdSolve(const std::string& file, const std::string& algoFlag, const std::string& kernelFlag,
             bool witness, int threads) {
  Instance inst = parseInstanceFile(file);
  json doc;
  if (kernelFlag != "none") {
    if (!inst.hasUnitWeights())
      throw InputError("kernelization decides the unweighted problem; weighted input needs --kernel none");
    KernelResult kr = kernelFlag == "k" ? kernelizeK(inst)
                      : kernelFlag == "vc" ? kernelizeVC(inst)
                                           : kernelizeML(inst);
    doc["kernel"] = {{"rule", kr.kernel},
                     {"verdict", kr.verdict == KernelVerdict::Infeasible ? "infeasible"
                                 : kr.verdict == KernelVerdict::Reduced  ? "reduced"
                                                                         : "unchanged"},
                     {"verticesBefore", inst.numVertices()},
                     {"verticesAfter", kr.reduced.numVertices()},
                     {"steps", kr.steps.size()}};
    if (kr.verdict == KernelVerdict::Infeasible) {
      doc["status"] = "infeasible";
      doc["algorithm"] = "kernel";
      std::cout << doc.dump(2) << "\n";
      return kExitOk;
    }
    std::string algo = resolveAlgo(algoFlag, kr.reduced);
    SolveResult r = dispatchSolve(kr.reduced, algo, true, threads);
    doc["algorithm"] = r.algorithm;
    doc["stats"] = statsJson(r.stats);
    if (!r.feasible) {
      doc["status"] = "infeasible";
    } else {
      doc["status"] = "feasible";
      doc["weight"] = Weight(inst.numVertices() - 1).get_str();
      if (witness && r.tree) {
        EdgeSet lifted = liftSolution(kr, *r.tree);
        internalCheck(isAdmissibleSpanningTree(inst, lifted),
                      "lifted witness failed verification");
        doc["tree"] = treeJson(inst, lifted);
      }
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  std::string algo = resolveAlgo(algoFlag, inst);
  SolveResult r = dispatchSolve(inst, algo, witness, threads);
  doc["status"] = r.feasible ? "feasible" : "infeasible";
  doc["algorithm"] = r.algorithm;
  if (r.feasible) {
    doc["weight"] = r.weight.get_str();
    if (witness && r.tree) {
      internalCheck(isAdmissibleSpanningTree(inst, *r.tree), "witness failed verification");
      internalCheck(weightOf(inst, *r.tree) == r.weight, "witness weight mismatch");
      doc["tree"] = treeJson(inst, *r.tree);
    }
  }
  doc["stats"] = statsJson(r.stats);
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmdCount(const std::string& file, long maxWeight, int threads) {
  Instance inst = parseInstanceFile(file);
  std::optional<std::vector<long>> w = integralWeights(inst);
  if (!w) throw InputError("counting requires positive integral edge weights");
  if (maxWeight > 0)
    for (long wi : *w)
      if (wi > maxWeight)
        throw InputError("an edge weight exceeds --max-weight " + std::to_string(maxWeight));
  json doc;
  if (!isConnected(inst.graph)) {
    std::cerr << "input graph is disconnected: no spanning tree exists\n";
    doc["status"] = "infeasible";
    doc["algorithm"] = "ie";
    doc["counts"] = json::object();
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  SolveStats stats;
  WeightCounts counts = countAdmissibleTreesByWeight(inst, &stats, threads);
  json obj = json::object();
  std::optional<std::size_t> best;
  for (std::size_t q = 0; q < counts.size(); ++q)
    if (counts[q] > 0) {
      obj[std::to_string(q)] = counts[q].get_str();
      if (!best) best = q;
    }
  doc["status"] = best ? "feasible" : "infeasible";
  if (best) doc["weight"] = std::to_string(*best);
  doc["algorithm"] = "ie";
  doc["counts"] = obj;
  doc["stats"] = statsJson(stats);
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmdKernelize(const std::string& file, const std::string& rule, const std::string& outPath) {
  Instance inst = parseInstanceFile(file);
  if (!inst.hasUnitWeights())
    throw InputError("kernelization decides the unweighted problem; strip weights first");
  KernelResult kr = rule == "k" ? kernelizeK(inst)
                    : rule == "vc" ? kernelizeVC(inst)
                                   : kernelizeML(inst);
  json steps = json::array();
  for (const TraceStep& st : kr.steps)
    steps.push_back({{"kind", stepKindName(st.kind)},
                     {"rule", st.rule},
                     {"verticesAfter", st.after.numVertices()},
                     {"edgesAfter", st.after.numEdges()}});
  json doc;
  doc["status"] = kr.verdict == KernelVerdict::Infeasible ? "infeasible" : "unknown";
  doc["kernel"] = {{"rule", kr.kernel},
                   {"verdict", kr.verdict == KernelVerdict::Infeasible ? "infeasible"
                               : kr.verdict == KernelVerdict::Reduced  ? "reduced"
                                                                       : "unchanged"},
                   {"verticesBefore", inst.numVertices()},
                   {"verticesAfter", kr.reduced.numVertices()},
                   {"ntBefore", inst.numNt()},
                   {"ntAfter", kr.reduced.numNt()},
                   {"steps", steps}};
  if (kr.verdict != KernelVerdict::Infeasible) {
    doc["instanceText"] = renderInstance(kr.reduced);
    if (!outPath.empty()) writeInstanceFile(outPath, kr.reduced);
  } else if (!outPath.empty()) {
    std::cerr << "instance is infeasible; no kernel file written\n";
  }
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmdCheck(const std::string& file, const std::string& treeFile) {
  Instance inst = parseInstanceFile(file);
  EdgeSet tree = parseEdgeListFile(treeFile, inst.numEdges());
  bool ok = isAdmissibleSpanningTree(inst, tree);
  std::cout << (ok ? "admissible spanning tree (weight " + weightOf(inst, tree).get_str() + ")"
                   : "NOT an admissible spanning tree")
            << "\n";
  return ok ? kExitOk : 1;
}

int cmdGen(unsigned long seed, int n, double p, int k, const std::string& weights, long maxWeight,
           bool parallel, const std::string& hamFrom, const std::string& outPath) {
  Instance inst;
  if (!hamFrom.empty()) {
    Instance base = parseInstanceFile(hamFrom);
    inst = falseTwinHamInstance(base.graph);
  } else {
    if (n < 1) throw InputError("--n must be at least 1");
    if (k > std::max(n - 2, 0)) throw InputError("--k must be at most n-2");
    RandomOptions opt;
    opt.minVertices = n;
    opt.maxVertices = n;
    opt.density = p;
    opt.ntFraction = 1.0;
    opt.maxNt = k;
    opt.allowParallel = parallel;
    opt.maxWeight = maxWeight;
    opt.weightMode = weights == "unit" ? WeightMode::Unit
                     : weights == "int" ? WeightMode::Integral
                                        : WeightMode::Rational;
    Rng rng(seed);
    inst = randomInstance(rng, opt);
  }
  if (outPath.empty())
    std::cout << renderInstance(inst);
  else
    writeInstanceFile(outPath, inst);
  return kExitOk;
}

struct BenchRow {
  std::string name;
  json data;
};

/// Greedily deletes edges while the disagreement predicate stays true.
Instance minimizeReproducer(Instance inst, const std::function<bool(const Instance&)>& stillBad) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (int e = 0; e < inst.numEdges() && !shrunk; ++e) {
      MultiGraph h(inst.numVertices());
      std::vector<Weight> w;
      for (int f = 0; f < inst.numEdges(); ++f) {
        if (f == e) continue;
        const MultiGraph::Edge& ed = inst.graph.edge(f);
        h.addEdge(ed.a, ed.b);
        w.push_back(inst.edgeWeight(f));
      }
      Instance cand(h, inst.nt,
                    inst.weights ? std::optional<std::vector<Weight>>(w) : std::nullopt);
      try {
        if (stillBad(cand)) {
          inst = cand;
          shrunk = true;
        }
      } catch (const std::exception&) {
        inst = cand;  // still failing, just differently
        shrunk = true;
      }
    }
  }
  return inst;
}

int crossCheckOne(const Instance& inst, std::string& complaint) {
  SolveResult mi = solveByMatroidIntersection(inst);
  std::optional<std::vector<long>> iw = integralWeights(inst);
  if (iw) {
    SolveResult ie = solveByInclusionExclusion(inst);
    if (ie.feasible != mi.feasible || (mi.feasible && ie.weight != mi.weight)) {
      complaint = "inclusion-exclusion disagrees with matroid intersection";
      return 1;
    }
  }
  if (inst.numVertices() <= bruteForceVertexCap()) {
    OracleResult br = bruteForceSolve(inst);
    if (br.feasible != mi.feasible || (mi.feasible && br.weight != mi.weight)) {
      complaint = "matroid intersection disagrees with the exhaustive oracle";
      return 1;
    }
  }
  if (inst.hasUnitWeights()) {
    for (int which = 0; which < 3; ++which) {
      KernelResult kr = which == 0 ? kernelizeK(inst)
                        : which == 1 ? kernelizeVC(inst)
                                     : kernelizeML(inst);
      bool kernelFeasible = false;
      if (kr.verdict != KernelVerdict::Infeasible) {
        SolveResult red = solveByMatroidIntersection(kr.reduced);
        kernelFeasible = red.feasible;
        if (red.feasible) {
          EdgeSet lifted = liftSolution(kr, *red.tree);
          if (!isAdmissibleSpanningTree(inst, lifted)) {
            complaint = "kernel " + kr.kernel + " produced a bad lifted witness";
            return 1;
          }
        }
      }
      if (kernelFeasible != mi.feasible) {
        complaint = "kernel " + kr.kernel + " changed the answer";
        return 1;
      }
    }
  }
  return 0;
}

int cmdBench(const std::string& dir, const std::string& suite, int threads, bool asJson) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir);
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no instance files in " + dir);
  std::vector<BenchRow> rows;
  int disagreements = 0;
  for (const auto& path : files) {
    Instance inst = parseInstanceFile(path.string());
    BenchRow row;
    row.name = path.filename().string();
    row.data["n"] = inst.numVertices();
    row.data["m"] = inst.numEdges();
    row.data["k"] = inst.numNt();
    row.data["ell"] = interiorEdgeCount(inst);
    if (suite == "cross") {
      std::string complaint;
      if (crossCheckOne(inst, complaint) != 0) {
        ++disagreements;
        row.data["disagreement"] = complaint;
        std::cerr << row.name << ": " << complaint << "\n";
        std::string fixed = complaint;
        Instance tiny = minimizeReproducer(inst, [&](const Instance& cand) {
          std::string c2;
          return crossCheckOne(cand, c2) != 0;
        });
        std::string repro = (std::filesystem::temp_directory_path() /
                             ("ntst-repro-" + path.stem().string() + ".txt"))
                                .string();
        writeInstanceFile(repro, tiny);
        std::cerr << "minimized reproducer written to " << repro << "\n";
        row.data["reproducer"] = repro;
      } else {
        row.data["agreement"] = true;
      }
    } else if (suite == "kernel") {
      if (!inst.hasUnitWeights()) continue;
      for (const std::string& rule : {std::string("k"), std::string("vc"), std::string("ml")}) {
        KernelResult kr = rule == "k" ? kernelizeK(inst)
                          : rule == "vc" ? kernelizeVC(inst)
                                         : kernelizeML(inst);
        json kj = {{"verdict", kr.verdict == KernelVerdict::Infeasible ? "infeasible"
                               : kr.verdict == KernelVerdict::Reduced  ? "reduced"
                                                                       : "unchanged"},
                   {"vertices", kr.reduced.numVertices()},
                   {"nt", kr.reduced.numNt()}};
        if (rule == "k" && kr.verdict != KernelVerdict::Infeasible && kr.reduced.numNt() > 0)
          kj["verticesPerK"] =
              (double)kr.reduced.numVertices() / (double)kr.reduced.numNt();
        row.data["kernels"][rule] = kj;
      }
    } else if (suite == "ie") {
      if (!integralWeights(inst)) continue;
      IeOptions opt;
      opt.threads = threads;
      SolveResult r = solveByInclusionExclusion(inst, opt);
      row.data["feasible"] = r.feasible;
      if (r.feasible) row.data["weight"] = r.weight.get_str();
      row.data["subsets"] = r.stats.subsetsEvaluated.get_str();
      row.data["wallMillis"] = r.stats.wallMillis;
    } else if (suite == "matroid") {
      MatroidOptions opt;
      opt.threads = threads;
      SolveResult r = solveByMatroidIntersection(inst, opt);
      row.data["feasible"] = r.feasible;
      if (r.feasible) row.data["weight"] = r.weight.get_str();
      row.data["branches"] = r.stats.branchesEvaluated.get_str();
      row.data["wallMillis"] = r.stats.wallMillis;
    } else {
      throw InputError("unknown suite: " + suite);
    }
    rows.push_back(std::move(row));
  }
  if (asJson) {
    json all = json::array();
    for (const auto& row : rows) {
      json j = row.data;
      j["file"] = row.name;
      all.push_back(j);
    }
    std::cout << all.dump(2) << "\n";
  } else {
    for (const auto& row : rows) std::cout << row.name << "  " << row.data.dump() << "\n";
    std::cout << "instances: " << rows.size();
    if (suite == "cross") std::cout << "  disagreements: " << disagreements;
    std::cout << "\n";
  }
  return disagreements ? kExitInternal : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for spanning trees with required-internal vertices"};
  app.require_subcommand(1);

  std::string file, treeFile, algo = "auto", kernelFlag = "none", rule = "k", outPath;
  std::string weights = "unit", hamFrom, suite = "cross", dir;
  bool witness = false, parallel = false, asJson = false;
  int threads = 1, n = 10, k = 2;
  long maxWeight = 4;
  double p = 0.5;
  unsigned long seed = 1;

  CLI::App* solve = app.add_subcommand("solve", "Find a minimum-weight admissible spanning tree");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--algo", algo, "auto|ie|matroid|brute")
      ->check(CLI::IsMember({"auto", "ie", "matroid", "brute"}));
  solve->add_option("--kernel", kernelFlag, "none|k|vc|ml: kernelize first (unweighted only)")
      ->check(CLI::IsMember({"none", "k", "vc", "ml"}));
  solve->add_flag("--witness", witness, "emit an optimal tree");
  solve->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 64));

  CLI::App* count = app.add_subcommand("count", "Count admissible spanning trees by weight");
  count->add_option("file", file, "instance file")->required();
  count->add_option("--max-weight", maxWeight, "reject edge weights above this bound");
  count->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 64));

  CLI::App* kern = app.add_subcommand("kernelize", "Shrink an instance, preserving the answer");
  kern->add_option("file", file, "instance file")->required();
  kern->add_option("--rule", rule, "k|vc|ml")->check(CLI::IsMember({"k", "vc", "ml"}));
  kern->add_option("--out", outPath, "write the reduced instance here");

  CLI::App* check = app.add_subcommand("check", "Verify a tree file against an instance");
  check->add_option("file", file, "instance file")->required();
  check->add_option("tree", treeFile, "tree file (1-based edge ids)")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate a random or reduction-based instance");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--n", n, "vertex count");
  gen->add_option("--p", p, "extra-edge density in [0,1]")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--k", k, "required-internal vertex count");
  gen->add_option("--weights", weights, "unit|int|rat")
      ->check(CLI::IsMember({"unit", "int", "rat"}));
  gen->add_option("--max-weight", maxWeight, "largest integer weight");
  gen->add_flag("--parallel", parallel, "allow parallel edges");
  gen->add_option("--ham-from", hamFrom, "build the false-twin instance of this graph");
  gen->add_option("--out", outPath, "write the instance here instead of stdout");

  CLI::App* bench = app.add_subcommand("bench", "Run a suite over a directory of instances");
  bench->add_option("dir", dir, "directory of instance files")->required();
  bench->add_option("--suite", suite, "cross|kernel|ie|matroid")
      ->check(CLI::IsMember({"cross", "kernel", "ie", "matroid"}));
  bench->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 64));
  bench->add_flag("--json", asJson, "emit a JSON array instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solve->parsed()) return cmdSolve(file, algo, kernelFlag, witness, threads);
    if (count->parsed()) return cmdCount(file, maxWeight, threads);
    if (kern->parsed()) return cmdKernelize(file, rule, outPath);
    if (check->parsed()) return cmdCheck(file, treeFile);
    if (gen->parsed()) return cmdGen(seed, n, p, k, weights, maxWeight, parallel, hamFrom, outPath);
    if (bench->parsed()) return cmdBench(dir, suite, threads, asJson);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

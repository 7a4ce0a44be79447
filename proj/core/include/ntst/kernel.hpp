#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ntst/instance.hpp"

namespace ntst {

enum class KernelVerdict {
  Unchanged,   ///< the instance came back exactly as given
  Reduced,     ///< at least one reduction step was applied
  Infeasible,  ///< a reduction proved that no admissible tree exists
};

enum class StepKind {
  MarkInfeasible,      ///< replaces the instance by the canonical infeasible one
  CanonicalFeasible,   ///< no internal-degree demands left: canonical one-vertex instance
  ClosedNeighborhood,  ///< restrict to the closed neighbourhood of the marked set, plus a root
  TwoExpansion,        ///< delete the expansion targets, pin the expanded vertices to the root
  DeleteEdges,         ///< removes edges (redundant bundles or free-free edges)
  CollapseParallel,    ///< keeps one edge per parallel bundle
  RemovePendant,       ///< drops a degree-1 free vertex with a free neighbour
  RemovePendantRelax,  ///< drops a degree-1 free vertex and unmarks its neighbour
  ContractNtPair,      ///< contracts two adjacent degree-2 marked vertices
  ContractBridge,      ///< contracts a bridge between two degree-2 free vertices
  ContractPathPair,    ///< contracts the first pair of a degree-2 run of four
};

const char* stepKindName(StepKind kind);

/// One reduction step, recorded with enough context to re-apply it
/// (replayTrace) and to pull a solution of `after` back to `before`
/// (liftSolution).
struct TraceStep {
  StepKind kind{};
  std::string rule;
  Instance before, after;
  std::vector<int> vertexToBefore;  ///< per after-vertex: before id, -1 = new
  std::vector<int> edgeToBefore;    ///< per after-edge: before id, -1 = new
  int rootBefore = -1, rootAfter = -1;
  std::vector<int> xs;       ///< expansion: vertices kept and unmarked; pendant rules: the neighbour
  std::vector<int> ys;       ///< expansion: vertices deleted; pendant rules: the leaf
  EdgeSet matchingEdges;     ///< expansion: private two-matching, before edge ids
  EdgeSet contractedEdges;   ///< before edge ids that were contracted
  EdgeSet deletedEdges;      ///< before edge ids that were deleted
};

struct KernelResult {
  KernelVerdict verdict = KernelVerdict::Unchanged;
  Instance reduced;
  std::vector<TraceStep> steps;
  std::string kernel;  ///< "k", "vc" or "ml"
  /// kernelizeVC only: the vertex cover (reduced-instance ids, root excluded)
  /// that witnesses the 4|S|+2 size bound; empty for the other kernels.
  std::vector<int> vcCover;
};

/// A 2-expansion of X into Y: every x owns two private neighbours in Y and Y
/// has no neighbours on the a-side outside X.
struct Expansion {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<std::array<int, 2>> pairs;  ///< aligned with x
};

/// Finds a 2-expansion in the bipartite graph induced between `a` and `b`
/// (flow of value 2|A| or recursion into the deficient side of a minimum
/// cut). Requires |b| >= 2|a| > 0 and that every b-vertex has a neighbour in
/// a; returns nullopt when those preconditions fail.
std::optional<Expansion> findTwoExpansion(const MultiGraph& g, const std::vector<int>& a,
                                          const std::vector<int>& b);

/// Validates an expansion (throws InternalError when it is not one).
void checkTwoExpansion(const MultiGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                       const Expansion& e);

/// Restriction to the closed neighbourhood of the marked vertices plus a
/// fresh root adjacent to every boundary vertex. Requires a connected
/// instance with at least one marked vertex.
TraceStep closedNeighborhoodReduce(const Instance& inst);

/// Kernel with at most 3k vertices (k = number of marked vertices):
/// closed-neighbourhood restriction plus repeated 2-expansions.
KernelResult kernelizeK(const Instance& inst);

/// Vertex-cover-driven kernel: closed-neighbourhood restriction, free-free
/// edge removal, and either an infeasibility certificate or a 2-expansion
/// found through an approximate vertex cover. At most 4|S|+2 vertices remain
/// for the final cover S.
KernelResult kernelizeVC(const Instance& inst);

/// Degree-rule kernel in the max-leaf style: pendant removal, parallel
/// collapse, and contraction of adjacent degree-2 runs.
KernelResult kernelizeML(const Instance& inst);

/// Pulls an admissible spanning tree of result.reduced back through the
/// recorded steps to an admissible spanning tree of the original instance.
EdgeSet liftSolution(const KernelResult& result, const EdgeSet& reducedTree);

/// Re-applies every recorded step from its payload and checks that the chain
/// reproduces itself exactly.
bool replayTrace(const KernelResult& result);

}  // namespace ntst

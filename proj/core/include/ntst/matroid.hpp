#pragma once
#include <vector>

#include "ntst/instance.hpp"
#include "ntst/solve.hpp"

namespace ntst {

/// Partition matroid with per-block occupancy bounds. The bases are the
/// subsets B of the ground set with |B| == rank and
/// lower[i] <= |B ∩ block_i| <= upper[i] for every block; the independent
/// sets are the subsets extendable to a base.
struct PartitionMatroid {
  std::vector<int> blockOf;  ///< block index per ground-set element
  std::vector<long> lower;   ///< per-block lower bound (applies to bases)
  std::vector<long> upper;   ///< per-block upper bound
  int rank = 0;              ///< common size of all bases

  int groundSize() const { return (int)blockOf.size(); }
  int numBlocks() const { return (int)lower.size(); }
  std::vector<long> blockSizes() const;
  /// True iff at least one base exists.
  bool valid() const;
};

/// True iff the chosen subset extends to a base (closed form).
bool partitionExtensionFeasible(const PartitionMatroid& pm, const std::vector<char>& chosen);

/// Same predicate decided by a lower-bounded circulation; cross-check for the
/// closed form.
bool partitionExtensionFeasibleByFlow(const PartitionMatroid& pm, const std::vector<char>& chosen);

/// True iff the edge set is a forest of g (graphic-matroid independence).
bool graphicIndependent(const MultiGraph& g, const EdgeSet& edges);

struct CommonBaseResult {
  bool feasible = false;
  Weight weight{};
  EdgeSet base;            ///< edge ids, sorted
  int augmentations = 0;
};

/// Minimum-weight common independent set of size pm.rank of the graphic
/// matroid of g and the partition matroid pm, via shortest augmenting paths
/// in the exchange digraph (exact rational costs, fewest-arcs tie-break).
CommonBaseResult minWeightCommonBase(const MultiGraph& g, const std::vector<Weight>& weight,
                                     const PartitionMatroid& pm);

struct MatroidOptions {
  int threads = 1;

  MatroidOptions() {}
};

/// Exact solver: enumerates the acyclic subsets F of the edges joining two
/// required-internal vertices, and for each F reduces the residual problem to
/// a minimum-weight common base of a graphic and a partition matroid.
SolveResult solveByMatroidIntersection(const Instance& inst, const MatroidOptions& options = MatroidOptions());

}  // namespace ntst

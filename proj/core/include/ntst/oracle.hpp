#pragma once
#include <optional>

#include "ntst/counting.hpp"
#include "ntst/instance.hpp"
#include "ntst/rng.hpp"

namespace ntst {

/// Result of exhaustive spanning-tree enumeration. `tree` holds the first
/// optimum in include-first edge-id order (ties keep the earliest). The
/// by-weight histograms are present only when every weight is a positive
/// integer; slot q counts trees of total weight q.
struct OracleResult {
  bool feasible = false;
  Weight weight{};
  std::optional<EdgeSet> tree;
  mpz_class treesEnumerated = 0;
  mpz_class admissibleTrees = 0;
  std::optional<WeightCounts> treesByWeight;
  std::optional<WeightCounts> admissibleByWeight;
};

/// Enumerates every spanning tree (include/exclude recursion over edge ids
/// with connectivity pruning) and keeps the cheapest admissible one. Refuses
/// instances with more vertices than the cap: 12 by default, overridable via
/// the NTST_ORACLE_CAP environment variable.
OracleResult bruteForceSolve(const Instance& inst);

/// Vertex cap currently in force for bruteForceSolve.
int bruteForceVertexCap();

/// Bitmask DP; cycles have length >= 3, so graphs on fewer than three
/// vertices report false. Supports up to 20 vertices.
bool hasHamiltonianCycle(const MultiGraph& g);

/// Adds a false twin v' of `twinOf` (same neighbours, not adjacent to it) and
/// marks every vertex except `twinOf` and v' as required-internal. The result
/// is feasible exactly when g has a Hamiltonian cycle. Requires n >= 3.
Instance falseTwinHamInstance(const MultiGraph& g, int twinOf = 0);

enum class WeightMode { Unit, Integral, Rational };

struct RandomOptions {
  int minVertices = 1;
  int maxVertices = 10;
  /// Cap on edges beyond the backbone spanning tree; -1 = no cap.
  int maxExtraEdges = -1;
  /// Probability of keeping each candidate extra edge.
  double density = 0.5;
  /// Probability of marking each vertex required-internal.
  double ntFraction = 0.4;
  /// Cap on marked vertices; -1 = no cap.
  int maxNt = -1;
  WeightMode weightMode = WeightMode::Unit;
  long maxWeight = 4;
  /// Adds an occasional duplicate of an existing edge.
  bool allowParallel = false;

  RandomOptions() {}
};

/// Connected random instance, fully determined by the generator state.
Instance randomInstance(Rng& rng, const RandomOptions& options = RandomOptions());

}  // namespace ntst

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ntst/instance.hpp"

namespace ntst {

// Work counters and timing reported by the solvers.
struct SolveStats {
  // Number of leaf-set subsets the inclusion-exclusion sum ranged over
  // (accumulated across recounts when a witness is reconstructed).
  mpz_class subsetsEvaluated = 0;
  // Number of interior-forest branches the matroid-intersection solver tried.
  mpz_class branchesEvaluated = 0;
  double wallMillis = 0.0;
};

// Outcome of solving one instance: either "no admissible spanning tree
// exists" or the minimum weight, optionally with a witness tree.
struct SolveResult {
  bool feasible = false;
  Weight weight{};              // minimum total weight; meaningful iff feasible
  std::optional<EdgeSet> tree;  // normalized edge ids of one optimal tree
  std::string algorithm;        // "ie", "matroid" or "brute"
  SolveStats stats;
};

}  // namespace ntst

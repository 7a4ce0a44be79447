#pragma once

#include <gmpxx.h>

#include <vector>

#include "ntst/instance.hpp"
#include "ntst/solve.hpp"

namespace ntst {

// counts[q] = number of counted objects of total weight exactly q.
using WeightCounts = std::vector<mpz_class>;

// Exact number of spanning trees (matrix-tree theorem, fraction-free integer
// elimination).  Parallel edges count as distinct trees; returns 0 for
// disconnected graphs and 1 for the one-vertex graph.
mpz_class spanningTreeCount(const MultiGraph& g);

// counts[q] = number of spanning trees of total weight q, for q up to
// (n-1)*W where W is the largest edge weight.  Ignores the internal-vertex
// mask.  Requires positive integral weights.  Cross-checked internally
// against spanningTreeCount.
WeightCounts countSpanningTreesByWeight(const Instance& inst, int threads = 1);

// counts[j] = number of ways to pick, for every vertex in `x`, one incident
// edge whose other end lies outside `x`, with total weight exactly j
// (j up to |x|*W).  Exact dynamic program; requires positive integral
// weights.  The vertices of `x` must be distinct.
WeightCounts countConstrainedMatchings(const Instance& inst,
                                       const std::vector<int>& x);

// Extra restrictions for constrained counting: trees must contain every
// `forced` edge and no `deleted` edge.  The two lists must be disjoint.
struct IeConstraints {
  EdgeSet forced;
  EdgeSet deleted;
};

// counts[q] = number of admissible spanning trees of total weight q, where a
// tree is admissible when every required-internal vertex has degree >= 2 in
// it.  Inclusion-exclusion over the subsets of required-internal vertices
// forced to be leaves; spanning trees of the remainder are counted by the
// matrix-tree theorem over several word-size prime fields, evaluated
// pointwise in the weight-tracking variable, interpolated and recombined
// exactly.  Requires positive integral weights.
WeightCounts countAdmissibleTreesByWeight(const Instance& inst,
                                          SolveStats* stats = nullptr,
                                          int threads = 1);

// Same, restricted to trees respecting `constraints`.
WeightCounts countAdmissibleTreesConstrained(const Instance& inst,
                                             const IeConstraints& constraints,
                                             SolveStats* stats = nullptr,
                                             int threads = 1);

struct IeOptions {
  bool wantWitness = false;  // reconstruct an optimal tree by self-reduction
  int threads = 1;
};

// Minimum-weight admissible spanning tree via the counting routine above:
// feasible iff some count is positive, optimum = smallest weight with a
// positive count.  With wantWitness, an optimal tree is rebuilt by repeatedly
// asking the constrained count which edges can be forced.
SolveResult solveByInclusionExclusion(const Instance& inst,
                                      const IeOptions& options = {});

}  // namespace ntst

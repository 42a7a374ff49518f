#pragma once

#include <vector>

#include "safeseq/digraph.hpp"
#include "safeseq/ilp.hpp"
#include "safeseq/minflow.hpp"

namespace safeseq {

// Exact optimum of the k-path decoding problems on graphs small enough to
// enumerate every s-t path. Used as a reference for the exported models.
struct PathSolution {
    double objective = 0.0;
    // Distinct paths of the best combination; repeated picks are merged and
    // their weights summed, which changes neither objective.
    std::vector<std::vector<ArcId>> arc_paths;
    std::vector<double> weights;
};

// Tries every multiset of k s-t paths. Per multiset the continuous inner
// problem is solved exactly: nonnegative least squares by support enumeration
// for LeastSquares, a small two-phase simplex for MinPathError. Throws
// PathExplosion when the path count or the multiset count gets out of hand
// and Infeasible when no k paths cover every weighted arc (MinPathError).
PathSolution solve_tiny(const StDag& g, std::size_t k, Problem problem,
                        std::size_t path_limit = kDefaultPathLimit);

// Same search restricted to multisets that can host the attached sequences:
// each sequence must get its own path slot whose path runs through all of the
// sequence's fixed arcs. Mirrors what pinning those binaries does to a model.
PathSolution solve_tiny_fixed(const StDag& g, std::size_t k, Problem problem,
                              const AntichainSelection& selection,
                              std::size_t path_limit = kDefaultPathLimit);

} // namespace safeseq

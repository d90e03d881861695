#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmtk/lap.hpp"
#include "gmtk/problem.hpp"

namespace gmtk {

/// Records how a transformed problem relates to its source: the constant
/// objective shift over the relevant feasible set, and enough mapping
/// information to pull a solution of the transformed problem back.
struct TransformReport {
  std::string name;
  double shift = 0.0;
  /// For transformed assignment id k, the source assignment id it represents,
  /// or -1 for auxiliary candidates (dummies, mirrors). Empty means the
  /// assignment list is unchanged.
  std::vector<int> assignment_origin;
};

/// Maps a labeling of the transformed problem back to the source problem.
Labeling pull_back(const Problem& original, const Problem& transformed,
                   const TransformReport& report, const Labeling& y);

/// Embeds an incomplete matching problem into a bijective one over the
/// disjoint union of nodes and labels. Auxiliary zero-cost candidates let
/// every element fall back to itself, so complete matchings of the output
/// correspond to (possibly incomplete) matchings of the input with equal
/// cost.
std::pair<Problem, TransformReport> gm_to_qap(const Problem& problem);

enum class QapToGmMode {
  kUnaryOnly,  // shift only the diagonal; preserves pairwise sparsity
  kFullShift,  // shift every cost entry; all finite costs become negative
};

/// Converts a bijective equality-constrained problem into one whose optimal
/// incomplete matchings are all complete, by shifting costs so that extending
/// a matching always pays off. Expects a full candidate set.
std::pair<Problem, TransformReport> qap_to_gm(
    const Problem& problem, QapToGmMode mode = QapToGmMode::kUnaryOnly);

/// Shifts unary rows and pairwise blocks so every finite cost is <= 0 while
/// preserving the argmin over complete matchings. Requires a bijective
/// problem.
std::pair<Problem, TransformReport> make_non_positive(const Problem& problem);

/// Moves all unary costs into pairwise entries (objective over complete
/// matchings unchanged). Each unary is absorbed by the neighboring node whose
/// pairwise row needs the fewest new nonzero entries. Requires a bijective
/// problem with at least two nodes.
std::pair<Problem, TransformReport> remove_unary(const Problem& problem);

/// Flips the sign of every finite cost; feeds maximization-formulated
/// solvers. Involutive.
Problem negate_for_max(const Problem& problem);

/// Dummy-augmented square reduction of an edge-free problem. Rows/columns
/// beyond the original node/label ranges are zero-cost dummies; a complete
/// assignment of the output restricted to the original block is an optimal
/// incomplete matching.
LapInstance ilap_to_lap(const Problem& problem);

}  // namespace gmtk

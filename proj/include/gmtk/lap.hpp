#pragma once

#include <utility>
#include <vector>

#include "gmtk/problem.hpp"

namespace gmtk {

/// Square assignment instance. +infinity marks forbidden entries.
struct LapInstance {
  std::vector<std::vector<double>> cost;

  int size() const { return static_cast<int>(cost.size()); }
};

struct LapSolution {
  std::vector<int> row_to_col;  // complete permutation
  double value = 0.0;
};

/// Exact minimum-cost complete assignment by shortest augmenting paths with
/// dual potentials. Forbidden entries are skipped rather than big-M encoded.
/// Deterministic: ties during augmentation resolve to the smallest column.
/// Throws InfeasibleError when no finite complete assignment exists.
LapSolution solve_lap(const LapInstance& instance);

/// Optimal incomplete matching of an edge-free problem via the dummy-augmented
/// square reduction.
std::pair<Labeling, double> solve_ilap(const Problem& problem);

/// Same machinery operating on explicit per-candidate unary costs instead of
/// the costs stored on the problem.
std::pair<Labeling, double> solve_ilap_with_costs(
    const Problem& problem, const std::vector<double>& unary_costs);

/// Rounds a nonnegative fractional solution to the feasible labeling of
/// maximum total weight, by solving the assignment problem on negated
/// weights. A feasible indicator is returned unchanged.
Labeling round_fractional(const Problem& problem, const FractionalSolution& x);

}  // namespace gmtk

#pragma once

#include <vector>

#include "gmtk/problem.hpp"
#include "gmtk/solvers.hpp"

namespace gmtk {

/// Lagrange-decomposition bound for a fixed multiplier vector (one entry per
/// candidate assignment): the assignment problem over lambda, plus per-node
/// and per-edge independent minima over the remainder. Always a valid lower
/// bound on the optimal energy.
double lower_bound(const Problem& problem, const std::vector<double>& lambda);

/// Subgradient ascent on a per-edge Lagrange decomposition: each pairwise
/// entry becomes an independent two-variable subproblem coupled to the
/// assignment problem through multipliers on its two endpoints. Every
/// iteration reconstructs a primal labeling from the assignment subproblem
/// and keeps the best. The trace carries energies and bounds; the run stops
/// once the gap is certified within params.dual_gap_tol.
RunRecord subgradient_ascend(const Problem& problem,
                             const SolverParams& params);

/// Same as subgradient_ascend; the `dual` entry of run_solver.
RunRecord solve_dual(const Problem& problem, const SolverParams& params);

/// Interleaves fusion-moves generations with dual subgradient batches; fm
/// supplies the primal incumbent, the dual supplies the certificate.
RunRecord solve_fm_dual(const Problem& problem, const SolverParams& params);

}  // namespace gmtk

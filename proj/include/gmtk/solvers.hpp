#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmtk/problem.hpp"

namespace gmtk {

/// Parameter bundle shared by all solvers. Defaults are overridable; every
/// run records the values it used. A fixed seed makes randomized solvers
/// fully deterministic.
struct SolverParams {
  double time_budget_seconds = 10.0;
  std::uint64_t seed = 0;

  // power-iteration solvers (sm, mpm)
  double power_tol = 1e-8;
  int power_cap = 1000;

  // ipfp
  int ipfp_cap = 100;

  // graduated assignment
  double ga_decay = 0.9;
  double ga_tmin_factor = 1e-3;
  double ga_sinkhorn_tol = 1e-6;
  int ga_sinkhorn_cap = 200;

  // frank-wolfe
  double fw_gap_tol = 1e-6;
  int fw_cap = 500;

  // reweighted random walks
  double rrwm_alpha = 0.2;
  double rrwm_beta = 30.0;
  double rrwm_tol = 1e-8;
  int rrwm_cap = 300;

  // fusion moves
  double fm_epsilon = 0.2;
  int fm_top_k = 3;
  int fm_generations = 1000;

  // dual subgradient
  int dual_cap = 20000;
  double dual_gap_tol = 1e-3;
  double dual_step_init = 1.0;
  int dual_patience = 20;

  // fm+dual interleaving
  int fmdual_fm_batch = 10;
  int fmdual_dual_batch = 200;
};

struct TracePoint {
  double elapsed = 0.0;
  double energy = 0.0;
  std::optional<double> bound;
};

/// Timestamped best-so-far trace of one solver run. Energies are always
/// reported in the original problem's minimization sign, regardless of any
/// internal cost transformation.
struct RunRecord {
  std::string solver;
  std::string instance;
  std::vector<TracePoint> trace;
  Labeling labeling;
  double energy = 0.0;
  std::optional<double> bound;
  std::map<std::string, double> params_used;
};

/// Spectral matching: power iteration on the negated cost matrix, rounded to
/// a feasible labeling. Costs are made non-positive first.
RunRecord solve_sm(const Problem& problem, const SolverParams& params);

/// Max-pooling matching: like sm but neighbor contributions aggregate by
/// maximum instead of sum.
RunRecord solve_mpm(const Problem& problem, const SolverParams& params);

enum class IpfpInit { kUniform, kFromSm };

/// Iterated projected fixed point: linearize, solve the assignment problem,
/// exact line search along the segment, keep the best binary iterate.
RunRecord solve_ipfp(const Problem& problem, const SolverParams& params,
                     IpfpInit init);

/// Graduated assignment: Sinkhorn projection of exp(-gradient/T) with a
/// geometric temperature schedule.
RunRecord solve_ga(const Problem& problem, const SolverParams& params);

/// Frank-Wolfe over the doubly-semi-stochastic set; the assignment solution
/// of each linearization is evaluated and the best one kept.
RunRecord solve_fw(const Problem& problem, const SolverParams& params);

/// Reweighted random walks on the association graph.
RunRecord solve_rrwm(const Problem& problem, const SolverParams& params);

/// Fusion moves: randomized greedy assignment generation fused with the
/// incumbent; the incumbent never worsens.
RunRecord solve_fm(const Problem& problem, const SolverParams& params);

/// Merges two feasible labelings into one at least as good as either, by
/// monotone local search started from the better parent.
Labeling fuse(const Problem& problem, const Labeling& y_a,
              const Labeling& y_b);

/// Randomized greedy labeling: nodes visited in seeded random order, each
/// assigned the label (or dummy) with the cheapest restricted objective;
/// with probability epsilon one of the top_k cheapest choices is picked
/// uniformly instead.
Labeling greedy_generate(const Problem& problem, std::uint64_t seed,
                         double epsilon, int top_k);

/// Dispatch by solver name: sm, mpm, ipfpu, ipfps, ga, fw, rrwm, fm, dual,
/// fm+dual.
RunRecord run_solver(const std::string& name, const Problem& problem,
                     const SolverParams& params);

std::vector<std::string> solver_names();

}  // namespace gmtk

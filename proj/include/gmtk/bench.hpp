#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmtk/problem.hpp"
#include "gmtk/solvers.hpp"

namespace gmtk {

/// One benchmark instance: the problem, an optional (possibly partial)
/// ground-truth matching keyed by node, and an optional known optimum.
struct BenchmarkInstance {
  std::string name;
  Problem problem;
  std::map<int, int> ground_truth;  // node -> label, may cover a subset
  std::optional<double> known_optimum;
};

struct BenchmarkSuite {
  std::vector<BenchmarkInstance> instances;
};

/// Fraction of ground-truth nodes whose label matches. Complete ground truth
/// makes this correct / |V|. Throws on empty ground truth.
double accuracy(const Labeling& labeling, const std::map<int, int>& truth);

/// Aggregated fixed-time results for one (solver, budget) pair.
struct FixedTimeCell {
  int instances = 0;
  int solved = 0;       // within 0.1% of the reference optimum
  int no_solution = 0;  // no trace point inside the budget
  double mean_energy = 0.0;
  std::optional<double> mean_bound;
  std::optional<double> mean_accuracy;
};

struct FixedTimeReport {
  std::vector<std::string> solvers;
  std::vector<double> budgets;
  std::map<std::pair<std::string, double>, FixedTimeCell> cells;
};

/// Time each solver took to reach the reference optimum of each instance
/// within tolerance, or infinity. The reference optimum is the known optimum
/// when available, otherwise the best energy any solver achieved.
struct ProfileTable {
  std::vector<std::string> solvers;
  std::vector<std::string> instances;
  std::vector<std::vector<double>> times;  // [solver][instance]
};

FixedTimeReport fixed_time_report(const BenchmarkSuite& suite,
                                  const std::vector<RunRecord>& records,
                                  const std::vector<double>& budgets);

ProfileTable fixed_target_times(const BenchmarkSuite& suite,
                                const std::vector<RunRecord>& records,
                                double tol = 1e-3);

/// Suite-free variant: instances are taken from the records and every
/// reference optimum is the best achieved energy.
ProfileTable fixed_target_times(const std::vector<RunRecord>& records,
                                double tol = 1e-3);

/// rho[solver][k] = fraction of instances where the solver's time is within
/// tau_grid[k] times the fastest solver's time.
std::vector<std::vector<double>> performance_profile(
    const ProfileTable& table, const std::vector<double>& tau_grid);

std::string fixed_time_to_csv(const FixedTimeReport& report);
std::string profile_to_csv(const ProfileTable& table,
                           const std::vector<double>& tau_grid);

/// Synthetic wide-baseline-style instance: two related point clouds,
/// k-nearest-neighbor adjacency (k = 5) on both, zero unaries, pairwise
/// costs -exp(-(d_ij - d_sl)^2 / 2500), identity ground truth.
BenchmarkInstance gen_house_style(int n, std::uint64_t seed);

/// Synthetic projection-error-style instance: nV nodes against nL >= nV
/// labels, zero unaries, pairwise costs -max(50 - |d_ij - d_sl|, 0) kept
/// only where nonzero; ground truth covers the nV - outliers inlier nodes.
BenchmarkInstance gen_caltech_style(int nV, int nL, int outliers,
                                    std::uint64_t seed);

/// Runs every solver on every instance, `trials` times each, keeping the
/// fastest trial per cell. Cells execute on `workers` threads, one thread per
/// cell. A solver failure yields a record with an empty trace.
std::vector<RunRecord> run_benchmark(const BenchmarkSuite& suite,
                                     const std::vector<std::string>& solvers,
                                     const SolverParams& params,
                                     int trials = 5, int workers = 0);

}  // namespace gmtk

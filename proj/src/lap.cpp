#include "gmtk/lap.hpp"

#include <cmath>

namespace gmtk {

LapSolution solve_lap(const LapInstance& instance) {
  const int n = instance.size();
  LapSolution result;
  result.row_to_col.assign(n, -1);
  if (n == 0) return result;

  // Hungarian algorithm with dual potentials, 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<int> col_to_row(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);

  auto cost_at = [&](int row, int col) {
    return instance.cost[row - 1][col - 1];
  };

  for (int i = 1; i <= n; ++i) {
    col_to_row[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInfinity);
    std::fill(used.begin(), used.end(), char(0));
    do {
      used[j0] = 1;
      const int i0 = col_to_row[j0];
      double delta = kInfinity;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost_at(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0 || std::isinf(delta)) {
        throw InfeasibleError("no finite complete assignment exists");
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[col_to_row[j]] += delta;
          v[j] -= delta;
        } else if (!std::isinf(minv[j])) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row[j0] != 0);
    // Walk the alternating path back to augment the matching.
    while (j0 != 0) {
      const int j1 = way[j0];
      col_to_row[j0] = col_to_row[j1];
      j0 = j1;
    }
  }

  for (int j = 1; j <= n; ++j) {
    result.row_to_col[col_to_row[j] - 1] = j - 1;
  }
  for (int i = 0; i < n; ++i) {
    result.value += instance.cost[i][result.row_to_col[i]];
  }
  return result;
}

std::pair<Labeling, double> solve_ilap_with_costs(
    const Problem& problem, const std::vector<double>& unary_costs) {
  const int nv = problem.num_nodes();
  const int nl = problem.num_labels();
  const int n = nv + nl;
  LapInstance instance;
  instance.cost.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < nv; ++i) {
    for (int s = 0; s < nl; ++s) {
      instance.cost[i][s] = kInfinity;
    }
  }
  for (int id = 0; id < problem.num_assignments(); ++id) {
    const Assignment& a = problem.assignment(id);
    if (std::isfinite(unary_costs[id])) {
      instance.cost[a.node][a.label] = unary_costs[id];
    }
  }
  const LapSolution lap = solve_lap(instance);
  Labeling y(nv, kDummy);
  double value = 0.0;
  for (int i = 0; i < nv; ++i) {
    const int col = lap.row_to_col[i];
    if (col < nl) {
      y[i] = col;
      value += instance.cost[i][col];
    }
  }
  return {y, value};
}

std::pair<Labeling, double> solve_ilap(const Problem& problem) {
  if (problem.num_edges() != 0) {
    throw Error("solve_ilap requires an edge-free problem");
  }
  std::vector<double> costs(problem.num_assignments());
  for (int id = 0; id < problem.num_assignments(); ++id) {
    costs[id] = problem.assignment(id).cost;
  }
  return solve_ilap_with_costs(problem, costs);
}

Labeling round_fractional(const Problem& problem,
                          const FractionalSolution& x) {
  if (static_cast<int>(x.size()) != problem.num_assignments()) {
    throw Error("fractional solution size does not match assignment count");
  }
  std::vector<double> costs(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) {
      throw Error("fractional solution must be nonnegative and finite");
    }
    // Zero-weight candidates are excluded so that an indicator input maps to
    // exactly the same labeling.
    costs[i] = x[i] > 0.0 ? -x[i] : kInfinity;
  }
  return solve_ilap_with_costs(problem, costs).first;
}

}  // namespace gmtk

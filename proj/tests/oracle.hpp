// Test-side oracle: an independent exhaustive enumerator and random instance
// generators. Deliberately naive and separate from the library internals so
// that agreement is meaningful.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "gmtk/problem.hpp"

namespace oracle {

inline double energy(const gmtk::Problem& p, const gmtk::Labeling& y) {
  double e = 0.0;
  for (const gmtk::Assignment& a : p.assignments()) {
    if (y[a.node] == a.label) e += a.cost;
  }
  for (const gmtk::Edge& edge : p.edges()) {
    const gmtk::Assignment& a = p.assignment(edge.a);
    const gmtk::Assignment& b = p.assignment(edge.b);
    if (y[a.node] == a.label && y[b.node] == b.label) e += edge.cost;
  }
  return e;
}

inline bool feasible(const gmtk::Problem& p, const gmtk::Labeling& y) {
  std::vector<bool> used(p.num_labels(), false);
  for (int i = 0; i < p.num_nodes(); ++i) {
    if (y[i] == gmtk::kDummy) continue;
    if (y[i] < 0 || y[i] >= p.num_labels() || used[y[i]]) return false;
    used[y[i]] = true;
    bool candidate = false;
    for (const gmtk::Assignment& a : p.assignments()) {
      if (a.node == i && a.label == y[i]) candidate = true;
    }
    if (!candidate) return false;
  }
  return true;
}

/// Visits every feasible labeling, incomplete ones included.
inline void for_each_labeling(
    const gmtk::Problem& p,
    const std::function<void(const gmtk::Labeling&)>& visit) {
  gmtk::Labeling y(p.num_nodes(), gmtk::kDummy);
  std::vector<bool> used(p.num_labels(), false);
  std::function<void(int)> rec = [&](int node) {
    if (node == p.num_nodes()) {
      visit(y);
      return;
    }
    y[node] = gmtk::kDummy;
    rec(node + 1);
    for (const gmtk::Assignment& a : p.assignments()) {
      if (a.node != node || used[a.label]) continue;
      used[a.label] = true;
      y[node] = a.label;
      rec(node + 1);
      y[node] = gmtk::kDummy;
      used[a.label] = false;
    }
  };
  rec(0);
}

/// Minimum over all feasible labelings; ties resolve to the first labeling in
/// dummy-first lexicographic visit order.
inline std::pair<gmtk::Labeling, double> best(const gmtk::Problem& p) {
  gmtk::Labeling arg(p.num_nodes(), gmtk::kDummy);
  double min = std::numeric_limits<double>::infinity();
  bool any = false;
  for_each_labeling(p, [&](const gmtk::Labeling& y) {
    const double e = energy(p, y);
    if (!any || e < min) {
      min = e;
      arg = y;
      any = true;
    }
  });
  return {arg, any ? min : 0.0};
}

/// Minimum over complete matchings only (every node labeled). Returns
/// +infinity when none exists.
inline std::pair<gmtk::Labeling, double> best_complete(const gmtk::Problem& p) {
  gmtk::Labeling arg;
  double min = std::numeric_limits<double>::infinity();
  for_each_labeling(p, [&](const gmtk::Labeling& y) {
    for (int v : y) {
      if (v == gmtk::kDummy) return;
    }
    const double e = energy(p, y);
    if (e < min) {
      min = e;
      arg = y;
    }
  });
  return {arg, min};
}

/// Random sparse instance with mixed cost signs and mixed density.
inline gmtk::Problem random_instance(std::mt19937_64& rng, int max_nodes = 6,
                                     int max_labels = 6) {
  std::uniform_int_distribution<int> nv_dist(1, max_nodes);
  std::uniform_int_distribution<int> nl_dist(1, max_labels);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(-10.0, 10.0);

  const int nv = nv_dist(rng);
  const int nl = nl_dist(rng);
  const double assignment_density = 0.4 + 0.6 * unit(rng);
  const double edge_density = unit(rng) * 0.5;
  const bool negative_only = unit(rng) < 0.3;

  std::vector<gmtk::Assignment> assignments;
  for (int i = 0; i < nv; ++i) {
    for (int s = 0; s < nl; ++s) {
      if (unit(rng) < assignment_density) {
        double c = cost(rng);
        if (negative_only) c = -std::abs(c);
        assignments.push_back(gmtk::Assignment{i, s, c});
      }
    }
  }
  std::vector<gmtk::Edge> edges;
  for (size_t a = 0; a < assignments.size(); ++a) {
    for (size_t b = a + 1; b < assignments.size(); ++b) {
      if (assignments[a].node == assignments[b].node ||
          assignments[a].label == assignments[b].label) {
        continue;
      }
      if (unit(rng) < edge_density) {
        double c = cost(rng);
        if (negative_only) c = -std::abs(c);
        edges.push_back(
            gmtk::Edge{static_cast<int>(a), static_cast<int>(b), c});
      }
    }
  }
  return gmtk::Problem(nv, nl, std::move(assignments), std::move(edges));
}

/// Random bijective instance (full candidate set, square).
inline gmtk::Problem random_bijective(std::mt19937_64& rng, int max_size = 5) {
  std::uniform_int_distribution<int> size_dist(2, max_size);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(-10.0, 10.0);
  const int m = size_dist(rng);
  const double edge_density = unit(rng) * 0.6;

  std::vector<gmtk::Assignment> assignments;
  for (int i = 0; i < m; ++i) {
    for (int s = 0; s < m; ++s) {
      assignments.push_back(gmtk::Assignment{i, s, cost(rng)});
    }
  }
  std::vector<gmtk::Edge> edges;
  for (size_t a = 0; a < assignments.size(); ++a) {
    for (size_t b = a + 1; b < assignments.size(); ++b) {
      if (assignments[a].node == assignments[b].node ||
          assignments[a].label == assignments[b].label) {
        continue;
      }
      if (unit(rng) < edge_density) {
        edges.push_back(
            gmtk::Edge{static_cast<int>(a), static_cast<int>(b), cost(rng)});
      }
    }
  }
  return gmtk::Problem(m, m, std::move(assignments), std::move(edges));
}

/// Uniformly random feasible labeling built by a randomized greedy pass.
inline gmtk::Labeling random_feasible(const gmtk::Problem& p,
                                      std::mt19937_64& rng) {
  gmtk::Labeling y(p.num_nodes(), gmtk::kDummy);
  std::vector<bool> used(p.num_labels(), false);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < p.num_nodes(); ++i) {
    std::vector<int> options;
    for (const gmtk::Assignment& a : p.assignments()) {
      if (a.node == i && !used[a.label]) options.push_back(a.label);
    }
    if (options.empty() || unit(rng) < 0.25) continue;
    std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
    y[i] = options[pick(rng)];
    used[y[i]] = true;
  }
  return y;
}

/// Random complete matching of a bijective problem.
inline gmtk::Labeling random_complete(const gmtk::Problem& p,
                                      std::mt19937_64& rng) {
  gmtk::Labeling y(p.num_nodes());
  for (int i = 0; i < p.num_nodes(); ++i) y[i] = i;
  std::shuffle(y.begin(), y.end(), rng);
  return y;
}

}  // namespace oracle

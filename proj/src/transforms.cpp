#include "gmtk/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace gmtk {

Labeling pull_back(const Problem& original, const Problem& transformed,
                   const TransformReport& report, const Labeling& y) {
  if (report.assignment_origin.empty()) {
    return y;  // assignment list unchanged
  }
  Labeling result(original.num_nodes(), kDummy);
  for (int node = 0; node < transformed.num_nodes(); ++node) {
    if (y[node] == kDummy) continue;
    const int id = transformed.assignment_id(node, y[node]);
    if (id < 0) {
      throw InvalidLabelingError("labeling uses a forbidden assignment");
    }
    const int origin = report.assignment_origin[id];
    if (origin < 0) continue;  // auxiliary candidate, drops out
    const Assignment& a = original.assignment(origin);
    result[a.node] = a.label;
  }
  return result;
}

std::pair<Problem, TransformReport> gm_to_qap(const Problem& problem) {
  const int nv = problem.num_nodes();
  const int nl = problem.num_labels();
  const int m = nv + nl;

  TransformReport report;
  report.name = "gm_to_qap";
  report.shift = 0.0;

  std::vector<Assignment> assignments;
  assignments.reserve(2 * problem.num_assignments() + m);
  // Original candidates keep their ids; node i keeps index i, label s becomes
  // nv + s.
  for (const Assignment& a : problem.assignments()) {
    assignments.push_back(Assignment{a.node, nv + a.label, a.cost});
    report.assignment_origin.push_back(
        static_cast<int>(report.assignment_origin.size()));
  }
  // Mirror candidates let a matched label element point back at its node.
  for (const Assignment& a : problem.assignments()) {
    assignments.push_back(Assignment{nv + a.label, a.node, 0.0});
    report.assignment_origin.push_back(-1);
  }
  // Self candidates absorb unmatched elements at zero cost.
  for (int e = 0; e < m; ++e) {
    assignments.push_back(Assignment{e, e, 0.0});
    report.assignment_origin.push_back(-1);
  }

  std::vector<Edge> edges = problem.edges();  // ids unchanged

  return {Problem(m, m, std::move(assignments), std::move(edges)),
          std::move(report)};
}

namespace {

double max_entry_magnitude(const Problem& problem) {
  // Upper bound on any single cost-matrix entry; absent entries count as 0.
  double w = 0.0;
  for (const Assignment& a : problem.assignments()) {
    w = std::max(w, a.cost);
  }
  for (const Edge& e : problem.edges()) {
    w = std::max(w, e.cost / 2.0);
  }
  return w;
}

}  // namespace

std::pair<Problem, TransformReport> qap_to_gm(const Problem& problem,
                                              QapToGmMode mode) {
  if (!problem.is_bijective()) {
    throw Error("qap_to_gm requires a bijective problem");
  }
  const int m = problem.num_nodes();
  const double w = max_entry_magnitude(problem);

  TransformReport report;
  report.name = "qap_to_gm";

  std::vector<Assignment> assignments = problem.assignments();
  std::vector<Edge> edges = problem.edges();

  if (mode == QapToGmMode::kFullShift) {
    const double delta = w + 1.0;
    for (Assignment& a : assignments) {
      a.cost -= delta;
    }
    for (Edge& e : edges) {
      e.cost -= 2.0 * delta;
    }
    // Entries without a stored edge shift from 0 to -2*delta.
    std::set<std::pair<int, int>> stored;
    for (const Edge& e : problem.edges()) {
      stored.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
    }
    for (int a = 0; a < problem.num_assignments(); ++a) {
      for (int b = a + 1; b < problem.num_assignments(); ++b) {
        const Assignment& pa = problem.assignment(a);
        const Assignment& pb = problem.assignment(b);
        if (pa.node == pb.node || pa.label == pb.label) continue;
        if (!stored.count({a, b})) {
          edges.push_back(Edge{a, b, -2.0 * delta});
        }
      }
    }
    report.shift = -static_cast<double>(m) * m * delta;
  } else {
    const double k = w * (2.0 * m - 1.0) + 1.0;
    for (Assignment& a : assignments) {
      a.cost -= k;
    }
    report.shift = -static_cast<double>(m) * k;
  }

  return {Problem(m, m, std::move(assignments), std::move(edges),
                  problem.geometry()),
          std::move(report)};
}

std::pair<Problem, TransformReport> make_non_positive(const Problem& problem) {
  if (!problem.is_bijective()) {
    throw Error("make_non_positive requires a bijective problem");
  }

  TransformReport report;
  report.name = "make_non_positive";

  std::vector<Assignment> assignments = problem.assignments();
  std::vector<Edge> edges = problem.edges();

  // Unary rows: shift each node's candidates down by its row maximum.
  for (int i = 0; i < problem.num_nodes(); ++i) {
    double row_max = -kInfinity;
    for (int id : problem.candidates_of(i)) {
      row_max = std::max(row_max, problem.assignment(id).cost);
    }
    const double d = std::max(0.0, row_max);
    if (d > 0.0) {
      for (int id : problem.candidates_of(i)) {
        assignments[id].cost -= d;
      }
      report.shift -= d;
    }
  }

  // Pairwise blocks: group stored edges by unordered node pair.
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int eid = 0; eid < problem.num_edges(); ++eid) {
    const Edge& e = problem.edges()[eid];
    int i = problem.assignment(e.a).node;
    int j = problem.assignment(e.b).node;
    if (i > j) std::swap(i, j);
    blocks[{i, j}].push_back(eid);
  }

  for (const auto& [nodes, edge_ids] : blocks) {
    const auto& [i, j] = nodes;
    // Compatible label pairs: candidates of i and j with distinct labels.
    size_t compatible = 0;
    for (int a : problem.candidates_of(i)) {
      for (int b : problem.candidates_of(j)) {
        if (problem.assignment(a).label != problem.assignment(b).label) {
          ++compatible;
        }
      }
    }
    double block_max = -kInfinity;
    for (int eid : edge_ids) {
      block_max = std::max(block_max, problem.edges()[eid].cost);
    }
    if (edge_ids.size() < compatible) {
      block_max = std::max(block_max, 0.0);  // absent entries are zeros
    }
    const double d = std::max(0.0, block_max);
    if (d == 0.0) continue;
    report.shift -= d;
    std::set<std::pair<int, int>> stored;
    for (int eid : edge_ids) {
      edges[eid].cost -= d;
      const Edge& e = problem.edges()[eid];
      stored.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
    }
    for (int a : problem.candidates_of(i)) {
      for (int b : problem.candidates_of(j)) {
        if (problem.assignment(a).label == problem.assignment(b).label) {
          continue;
        }
        if (!stored.count({std::min(a, b), std::max(a, b)})) {
          edges.push_back(Edge{a, b, -d});
        }
      }
    }
  }

  return {Problem(problem.num_nodes(), problem.num_labels(),
                  std::move(assignments), std::move(edges),
                  problem.geometry()),
          std::move(report)};
}

std::pair<Problem, TransformReport> remove_unary(const Problem& problem) {
  if (!problem.is_bijective()) {
    throw Error("remove_unary requires a bijective problem");
  }
  if (problem.num_nodes() < 2) {
    throw Error("remove_unary needs at least two nodes to host unary costs");
  }

  TransformReport report;
  report.name = "remove_unary";
  report.shift = 0.0;

  std::vector<Assignment> assignments = problem.assignments();
  // Mutable edge map keyed by unordered assignment-id pair.
  std::map<std::pair<int, int>, double> edge_costs;
  for (const Edge& e : problem.edges()) {
    edge_costs[{std::min(e.a, e.b), std::max(e.a, e.b)}] = e.cost;
  }
  auto current_cost = [&](int a, int b) {
    auto it = edge_costs.find({std::min(a, b), std::max(a, b)});
    return it == edge_costs.end() ? 0.0 : it->second;
  };

  for (int id = 0; id < problem.num_assignments(); ++id) {
    const Assignment& a = problem.assignment(id);
    if (a.cost == 0.0) continue;

    // Pick the neighboring node whose row gains the fewest new nonzeros.
    int best_j = -1;
    int best_zeros = 0;
    for (int j = 0; j < problem.num_nodes(); ++j) {
      if (j == a.node) continue;
      int zeros = 0;
      bool any = false;
      for (int b : problem.candidates_of(j)) {
        if (problem.assignment(b).label == a.label) continue;
        any = true;
        if (problem.pairwise_cost(id, b) == 0.0) ++zeros;
      }
      if (!any) continue;
      if (best_j < 0 || zeros < best_zeros) {
        best_j = j;
        best_zeros = zeros;
      }
    }
    if (best_j < 0) {
      throw Error("no neighboring node can host the unary cost of assignment " +
                  std::to_string(id));
    }
    for (int b : problem.candidates_of(best_j)) {
      if (problem.assignment(b).label == a.label) continue;
      edge_costs[{std::min(id, b), std::max(id, b)}] += a.cost;
    }
    assignments[id].cost = 0.0;
  }

  std::vector<Edge> edges;
  edges.reserve(edge_costs.size());
  for (const auto& [key, cost] : edge_costs) {
    if (cost != 0.0) {
      edges.push_back(Edge{key.first, key.second, cost});
    }
  }

  return {Problem(problem.num_nodes(), problem.num_labels(),
                  std::move(assignments), std::move(edges),
                  problem.geometry()),
          std::move(report)};
}

Problem negate_for_max(const Problem& problem) {
  std::vector<Assignment> assignments = problem.assignments();
  std::vector<Edge> edges = problem.edges();
  for (Assignment& a : assignments) a.cost = -a.cost;
  for (Edge& e : edges) e.cost = -e.cost;
  return Problem(problem.num_nodes(), problem.num_labels(),
                 std::move(assignments), std::move(edges),
                 problem.geometry());
}

LapInstance ilap_to_lap(const Problem& problem) {
  if (problem.num_edges() != 0) {
    throw Error("ilap_to_lap requires an edge-free problem");
  }
  const int nv = problem.num_nodes();
  const int nl = problem.num_labels();
  LapInstance instance;
  instance.cost.assign(nv + nl, std::vector<double>(nv + nl, 0.0));
  for (int i = 0; i < nv; ++i) {
    for (int s = 0; s < nl; ++s) {
      instance.cost[i][s] = kInfinity;
    }
  }
  for (const Assignment& a : problem.assignments()) {
    instance.cost[a.node][a.label] = a.cost;
  }
  return instance;
}

}  // namespace gmtk

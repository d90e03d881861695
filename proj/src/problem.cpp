#include "gmtk/problem.hpp"

#include <algorithm>
#include <cmath>

namespace gmtk {

namespace {

std::int64_t pack(int a, int b) {
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::int64_t pack_unordered(int a, int b) {
  return pack(std::min(a, b), std::max(a, b));
}

}  // namespace

Problem::Problem(int num_nodes, int num_labels,
                 std::vector<Assignment> assignments, std::vector<Edge> edges,
                 Geometry geometry)
    : num_nodes_(num_nodes),
      num_labels_(num_labels),
      assignments_(std::move(assignments)),
      edges_(std::move(edges)),
      geometry_(std::move(geometry)) {
  if (num_nodes_ < 0 || num_labels_ < 0) {
    throw Error("negative node or label count");
  }
  node_candidates_.resize(num_nodes_);
  incident_.resize(assignments_.size());
  pair_to_id_.reserve(assignments_.size());

  for (int id = 0; id < static_cast<int>(assignments_.size()); ++id) {
    const Assignment& a = assignments_[id];
    if (a.node < 0 || a.node >= num_nodes_ || a.label < 0 ||
        a.label >= num_labels_) {
      throw Error("assignment " + std::to_string(id) +
                  " references node or label out of range");
    }
    if (!std::isfinite(a.cost)) {
      throw Error("assignment " + std::to_string(id) + " has non-finite cost");
    }
    if (!pair_to_id_.emplace(pack(a.node, a.label), id).second) {
      throw Error("duplicate assignment for node " + std::to_string(a.node) +
                  ", label " + std::to_string(a.label));
    }
    node_candidates_[a.node].push_back(id);
  }

  edge_index_.reserve(edges_.size());
  for (int eid = 0; eid < static_cast<int>(edges_.size()); ++eid) {
    const Edge& e = edges_[eid];
    const int n = num_assignments();
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
      throw Error("edge " + std::to_string(eid) +
                  " references unknown assignment id");
    }
    const Assignment& pa = assignments_[e.a];
    const Assignment& pb = assignments_[e.b];
    if (pa.node == pb.node) {
      throw Error("edge " + std::to_string(eid) +
                  " connects two assignments of the same node");
    }
    if (pa.label == pb.label) {
      throw Error("edge " + std::to_string(eid) +
                  " connects two assignments with the same label");
    }
    if (!std::isfinite(e.cost)) {
      throw Error("edge " + std::to_string(eid) + " has non-finite cost");
    }
    if (!edge_index_.emplace(pack_unordered(e.a, e.b), eid).second) {
      throw Error("duplicate edge between assignments " + std::to_string(e.a) +
                  " and " + std::to_string(e.b));
    }
    incident_[e.a].push_back(eid);
    incident_[e.b].push_back(eid);
  }
}

int Problem::assignment_id(int node, int label) const {
  auto it = pair_to_id_.find(pack(node, label));
  return it == pair_to_id_.end() ? -1 : it->second;
}

double Problem::pairwise_cost(int id_a, int id_b) const {
  auto it = edge_index_.find(pack_unordered(id_a, id_b));
  return it == edge_index_.end() ? 0.0 : edges_[it->second].cost;
}

bool Problem::is_bijective() const {
  return num_nodes_ == num_labels_;
}

bool Problem::has_zero_unaries() const {
  return std::all_of(assignments_.begin(), assignments_.end(),
                     [](const Assignment& a) { return a.cost == 0.0; });
}

bool Problem::is_non_positive() const {
  return std::all_of(assignments_.begin(), assignments_.end(),
                     [](const Assignment& a) { return a.cost <= 0.0; }) &&
         std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.cost <= 0.0; });
}

bool Problem::operator==(const Problem& other) const {
  if (num_nodes_ != other.num_nodes_ || num_labels_ != other.num_labels_ ||
      assignments_.size() != other.assignments_.size() ||
      edges_.size() != other.edges_.size()) {
    return false;
  }
  for (size_t i = 0; i < assignments_.size(); ++i) {
    const Assignment& a = assignments_[i];
    const Assignment& b = other.assignments_[i];
    if (a.node != b.node || a.label != b.label || a.cost != b.cost) {
      return false;
    }
  }
  for (const Edge& e : edges_) {
    auto it = other.edge_index_.find(pack_unordered(e.a, e.b));
    if (it == other.edge_index_.end() ||
        other.edges_[it->second].cost != e.cost) {
      return false;
    }
  }
  return true;
}

double evaluate(const Problem& problem, const Labeling& y) {
  if (static_cast<int>(y.size()) != problem.num_nodes()) {
    throw InvalidLabelingError("labeling size does not match node count");
  }
  std::vector<int> active(problem.num_nodes(), -1);
  std::vector<char> label_used(problem.num_labels(), 0);
  double total = 0.0;
  for (int i = 0; i < problem.num_nodes(); ++i) {
    if (y[i] == kDummy) continue;
    const int id = problem.assignment_id(i, y[i]);
    if (id < 0) {
      throw InvalidLabelingError("node " + std::to_string(i) +
                                 " assigned to non-candidate label " +
                                 std::to_string(y[i]));
    }
    if (label_used[y[i]]) {
      throw InfeasibleError("label " + std::to_string(y[i]) +
                            " used more than once");
    }
    label_used[y[i]] = 1;
    active[i] = id;
    total += problem.assignment(id).cost;
  }
  for (const Edge& e : problem.edges()) {
    const Assignment& a = problem.assignment(e.a);
    const Assignment& b = problem.assignment(e.b);
    if (active[a.node] == e.a && active[b.node] == e.b) {
      total += e.cost;
    }
  }
  return total;
}

bool is_feasible(const Problem& problem, const Labeling& y) {
  if (static_cast<int>(y.size()) != problem.num_nodes()) return false;
  std::vector<char> label_used(problem.num_labels(), 0);
  for (int i = 0; i < problem.num_nodes(); ++i) {
    if (y[i] == kDummy) continue;
    if (y[i] < 0 || y[i] >= problem.num_labels()) return false;
    if (problem.assignment_id(i, y[i]) < 0) return false;
    if (label_used[y[i]]) return false;
    label_used[y[i]] = 1;
  }
  return true;
}

namespace {

struct BruteForceState {
  const Problem& problem;
  Labeling current;
  std::vector<char> label_used;
  Labeling best;
  double best_value;

  // Incremental cost of assigning `id` given already-fixed nodes 0..node-1.
  double delta(int id, int node) const {
    const Assignment& a = problem.assignment(id);
    double d = a.cost;
    for (int eid : problem.edges_of(id)) {
      const Edge& e = problem.edges()[eid];
      const int other = e.a == id ? e.b : e.a;
      const Assignment& o = problem.assignment(other);
      if (o.node < node && current[o.node] == o.label) {
        d += e.cost;
      }
    }
    return d;
  }

  void recurse(int node, double value) {
    if (node == problem.num_nodes()) {
      if (value < best_value ||
          (value == best_value && current < best)) {
        best_value = value;
        best = current;
      }
      return;
    }
    // Dummy first keeps the enumeration order lexicographic.
    current[node] = kDummy;
    recurse(node + 1, value);
    for (int id : problem.candidates_of(node)) {
      const int label = problem.assignment(id).label;
      if (label_used[label]) continue;
      label_used[label] = 1;
      current[node] = label;
      recurse(node + 1, value + delta(id, node));
      current[node] = kDummy;
      label_used[label] = 0;
    }
  }
};

}  // namespace

std::pair<Labeling, double> brute_force_solve(const Problem& problem) {
  if (problem.num_assignments() > 25 && problem.num_nodes() > 8) {
    throw SizeError("instance too large for exhaustive enumeration");
  }
  BruteForceState state{problem,
                        Labeling(problem.num_nodes(), kDummy),
                        std::vector<char>(problem.num_labels(), 0),
                        Labeling(problem.num_nodes(), kDummy),
                        0.0};
  state.best_value = evaluate(problem, state.best);  // all-dummy baseline
  state.recurse(0, 0.0);
  return {state.best, state.best_value};
}

std::vector<std::vector<double>> to_dense(const Problem& problem,
                                          int dense_budget) {
  const long long n =
      static_cast<long long>(problem.num_nodes()) * problem.num_labels();
  if (n > dense_budget) {
    throw SizeError("dense view exceeds budget");
  }
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (long long i = 0; i < n; ++i) m[i][i] = kInfinity;
  auto index = [&](const Assignment& a) {
    return static_cast<long long>(a.node) * problem.num_labels() + a.label;
  };
  for (const Assignment& a : problem.assignments()) {
    m[index(a)][index(a)] = a.cost;
  }
  for (const Edge& e : problem.edges()) {
    const long long ia = index(problem.assignment(e.a));
    const long long ib = index(problem.assignment(e.b));
    m[ia][ib] = e.cost / 2.0;
    m[ib][ia] = e.cost / 2.0;
  }
  return m;
}

FractionalSolution indicator(const Problem& problem, const Labeling& y) {
  FractionalSolution x(problem.num_assignments(), 0.0);
  for (int i = 0; i < problem.num_nodes(); ++i) {
    if (y[i] == kDummy) continue;
    const int id = problem.assignment_id(i, y[i]);
    if (id < 0) {
      throw InvalidLabelingError("labeling uses a forbidden assignment");
    }
    x[id] = 1.0;
  }
  return x;
}

}  // namespace gmtk

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gmtk {

/// Base class for all structured errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLabelingError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

constexpr int kDummy = -1;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Candidate assignment of node `node` to label `label` with unary cost.
struct Assignment {
  int node = 0;
  int label = 0;
  double cost = 0.0;
};

/// Pairwise term between two candidate assignments. The stored cost is the
/// symmetrized sum of both orientations.
struct Edge {
  int a = 0;
  int b = 0;
  double cost = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Optional geometry carried by instance files; ignored by all solvers.
struct Geometry {
  std::vector<std::pair<int, Point2>> left_coords;
  std::vector<std::pair<int, Point2>> right_coords;
  std::vector<std::pair<int, int>> left_neighbors;
  std::vector<std::pair<int, int>> right_neighbors;

  bool empty() const {
    return left_coords.empty() && right_coords.empty() &&
           left_neighbors.empty() && right_neighbors.empty();
  }
};

/// Per-node assignment into labels-or-dummy. `kDummy` leaves a node unmatched.
using Labeling = std::vector<int>;

/// Nonnegative weight per candidate assignment id.
using FractionalSolution = std::vector<double>;

/// Sparse graph matching instance: candidate node-to-label assignments with
/// unary costs, and pairwise costs between pairs of candidates. Absent (node,
/// label) pairs are forbidden. Immutable after construction.
class Problem {
 public:
  Problem() = default;
  Problem(int num_nodes, int num_labels, std::vector<Assignment> assignments,
          std::vector<Edge> edges, Geometry geometry = {});

  int num_nodes() const { return num_nodes_; }
  int num_labels() const { return num_labels_; }
  int num_assignments() const { return static_cast<int>(assignments_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Assignment>& assignments() const { return assignments_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Assignment& assignment(int id) const { return assignments_.at(id); }
  const Geometry& geometry() const { return geometry_; }

  /// Candidate assignment ids of one node.
  const std::vector<int>& candidates_of(int node) const {
    return node_candidates_.at(node);
  }

  /// Edge ids incident to one assignment id.
  const std::vector<int>& edges_of(int id) const { return incident_.at(id); }

  /// Assignment id for (node, label), or -1 if the pair is forbidden.
  int assignment_id(int node, int label) const;

  /// Stored pairwise cost between two assignment ids, 0 if no edge exists.
  double pairwise_cost(int id_a, int id_b) const;

  bool is_bijective() const;
  bool has_zero_unaries() const;
  bool is_non_positive() const;

  bool operator==(const Problem& other) const;

 private:
  int num_nodes_ = 0;
  int num_labels_ = 0;
  std::vector<Assignment> assignments_;
  std::vector<Edge> edges_;
  Geometry geometry_;

  std::vector<std::vector<int>> node_candidates_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<std::int64_t, int> pair_to_id_;
  std::unordered_map<std::int64_t, int> edge_index_;
};

/// Total cost of a feasible labeling: active unaries plus pairwise costs of
/// edges with both endpoints active. A dummy contributes nothing.
double evaluate(const Problem& problem, const Labeling& y);

/// True iff all non-dummy labels are distinct and every (node, label) pair is
/// a candidate assignment. Never throws.
bool is_feasible(const Problem& problem, const Labeling& y);

/// Exhaustive search over all feasible labelings, incomplete ones included.
/// Only valid for small instances; ties are broken by the lexicographically
/// smallest labeling (dummy sorts before every label).
std::pair<Labeling, double> brute_force_solve(const Problem& problem);

/// Dense square cost matrix over (node, label) pairs, row-major with index
/// node * num_labels + label. Unaries sit on the diagonal (+infinity for
/// forbidden pairs), each pairwise cost is split evenly across both
/// off-diagonal positions so that x^T C x reproduces evaluate().
std::vector<std::vector<double>> to_dense(const Problem& problem,
                                          int dense_budget = 4096);

/// Indicator vector of a labeling over candidate assignment ids.
FractionalSolution indicator(const Problem& problem, const Labeling& y);

}  // namespace gmtk

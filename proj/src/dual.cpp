#include "gmtk/dual.hpp"

#include <algorithm>
#include <cmath>

#include "gmtk/lap.hpp"
#include "solver_common.hpp"

namespace gmtk {

double lower_bound(const Problem& problem, const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) != problem.num_assignments()) {
    throw SizeError("lambda must have one entry per candidate assignment");
  }
  double d = solve_ilap_with_costs(problem, lambda).second;
  for (int i = 0; i < problem.num_nodes(); ++i) {
    double local = 0.0;
    for (int id : problem.candidates_of(i)) {
      local = std::min(local, problem.assignment(id).cost - lambda[id]);
    }
    d += local;
  }
  for (const Edge& e : problem.edges()) {
    d += std::min(0.0, e.cost);
  }
  return d;
}

namespace detail {

/// Supergradient ascent on a node-pair block decomposition. Every node pair
/// carrying at least one stored edge becomes an independent subproblem over
/// joint label choices (dummies included, equal labels excluded), coupled to
/// the assignment subproblem through one multiplier per (block, candidate).
/// The assignment subproblem sees lambda_k = c_k - sum of the multipliers of
/// blocks touching candidate k.
class DualEngine {
 public:
  DualEngine(const Problem& problem, const SolverParams& params)
      : problem_(problem), params_(params), scale_(params.dual_step_init) {
    std::map<std::pair<int, int>, int> block_of;
    for (const Edge& e : problem.edges()) {
      int i = problem.assignment(e.a).node;
      int j = problem.assignment(e.b).node;
      if (i > j) std::swap(i, j);
      auto [it, fresh] = block_of.try_emplace({i, j}, int(blocks_.size()));
      if (fresh) {
        Block b;
        b.i = i;
        b.j = j;
        b.mu_i.assign(problem.candidates_of(i).size(), 0.0);
        b.mu_j.assign(problem.candidates_of(j).size(), 0.0);
        b.theta.assign(b.mu_i.size() * b.mu_j.size(), 0.0);
        blocks_.push_back(std::move(b));
      }
      Block& b = blocks_[it->second];
      // locate the two endpoints inside the block's candidate lists
      const int a_first = problem.assignment(e.a).node == b.i ? e.a : e.b;
      const int a_second = a_first == e.a ? e.b : e.a;
      const int s = index_of(problem.candidates_of(b.i), a_first);
      const int l = index_of(problem.candidates_of(b.j), a_second);
      b.theta[s * b.mu_j.size() + l] += e.cost;
    }
  }

  /// One supergradient iteration. Returns false once the dual cannot move
  /// any more (zero supergradient or vanished step size).
  bool step() {
    const int n = problem_.num_assignments();
    std::vector<double> lambda(n);
    for (int id = 0; id < n; ++id) lambda[id] = problem_.assignment(id).cost;
    for (const Block& b : blocks_) {
      const auto& ci = problem_.candidates_of(b.i);
      const auto& cj = problem_.candidates_of(b.j);
      for (size_t s = 0; s < ci.size(); ++s) lambda[ci[s]] -= b.mu_i[s];
      for (size_t l = 0; l < cj.size(); ++l) lambda[cj[l]] -= b.mu_j[l];
    }

    auto [y, lap_value] = solve_ilap_with_costs(problem_, lambda);
    const double primal = evaluate(problem_, y);
    if (primal < best_energy_) {
      best_energy_ = primal;
      best_labeling_ = y;
    }

    // Block minima: joint (label-or-dummy, label-or-dummy) choices.
    double d = lap_value;
    std::vector<std::pair<int, int>> choice(blocks_.size());
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& b = blocks_[bi];
      const auto& ci = problem_.candidates_of(b.i);
      const auto& cj = problem_.candidates_of(b.j);
      double m = 0.0;  // both unassigned
      int best_s = -1, best_l = -1;
      for (size_t l = 0; l < cj.size(); ++l) {
        if (b.mu_j[l] < m) {
          m = b.mu_j[l];
          best_s = -1;
          best_l = int(l);
        }
      }
      for (size_t s = 0; s < ci.size(); ++s) {
        if (b.mu_i[s] < m) {
          m = b.mu_i[s];
          best_s = int(s);
          best_l = -1;
        }
        const int label_s = problem_.assignment(ci[s]).label;
        for (size_t l = 0; l < cj.size(); ++l) {
          if (problem_.assignment(cj[l]).label == label_s) continue;
          const double v =
              b.mu_i[s] + b.mu_j[l] + b.theta[s * cj.size() + l];
          if (v < m) {
            m = v;
            best_s = int(s);
            best_l = int(l);
          }
        }
      }
      choice[bi] = {best_s, best_l};
      d += m;
    }
    if (d > best_bound_) {
      best_bound_ = d;
      since_improved_ = 0;
      scale_ = std::min(scale_ * 2.0, params_.dual_step_init);
    } else if (++since_improved_ >= params_.dual_patience) {
      scale_ /= 2.0;
      since_improved_ = 0;
    }
    if (scale_ < 1e-12) return false;
    if (certified()) return false;

    double gnorm2 = 0.0;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& b = blocks_[bi];
      gnorm2 += gradient_norm2(b, choice[bi], y);
    }
    if (gnorm2 == 0.0) return false;  // decomposition agrees: dual optimal

    // Polyak step towards the best primal value seen so far.
    const double step = scale_ * std::max(best_energy_ - d, 0.0) / gnorm2;
    if (step <= 0.0) return false;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      Block& b = blocks_[bi];
      apply_gradient(b, choice[bi], y, step);
    }
    return true;
  }

  void offer_energy(double e, const Labeling& y) {
    if (e < best_energy_) {
      best_energy_ = e;
      best_labeling_ = y;
    }
  }

  bool certified() const {
    if (!std::isfinite(best_energy_)) return false;
    return best_energy_ - best_bound_ <=
           params_.dual_gap_tol * std::max(std::abs(best_energy_), 1e-9);
  }

  double best_bound() const { return best_bound_; }
  double best_energy() const { return best_energy_; }
  const Labeling& best_labeling() const { return best_labeling_; }

 private:
  struct Block {
    int i = 0, j = 0;
    std::vector<double> mu_i, mu_j;  // per candidate of i resp. j
    std::vector<double> theta;       // row-major [candidate of i][candidate of j]
  };

  static int index_of(const std::vector<int>& ids, int id) {
    for (size_t k = 0; k < ids.size(); ++k) {
      if (ids[k] == id) return int(k);
    }
    throw Error("assignment id missing from its node's candidate list");
  }

  /// Supergradient components of one block: block choice indicator minus the
  /// assignment-subproblem indicator, per (block, candidate).
  double gradient_norm2(const Block& b, std::pair<int, int> choice,
                        const Labeling& y) const {
    double total = 0.0;
    const auto& ci = problem_.candidates_of(b.i);
    const auto& cj = problem_.candidates_of(b.j);
    for (size_t s = 0; s < ci.size(); ++s) {
      const double g = (int(s) == choice.first ? 1.0 : 0.0) -
                       (y[b.i] == problem_.assignment(ci[s]).label ? 1.0 : 0.0);
      total += g * g;
    }
    for (size_t l = 0; l < cj.size(); ++l) {
      const double g = (int(l) == choice.second ? 1.0 : 0.0) -
                       (y[b.j] == problem_.assignment(cj[l]).label ? 1.0 : 0.0);
      total += g * g;
    }
    return total;
  }

  void apply_gradient(Block& b, std::pair<int, int> choice, const Labeling& y,
                      double step) {
    const auto& ci = problem_.candidates_of(b.i);
    const auto& cj = problem_.candidates_of(b.j);
    for (size_t s = 0; s < ci.size(); ++s) {
      const double g = (int(s) == choice.first ? 1.0 : 0.0) -
                       (y[b.i] == problem_.assignment(ci[s]).label ? 1.0 : 0.0);
      b.mu_i[s] += step * g;
    }
    for (size_t l = 0; l < cj.size(); ++l) {
      const double g = (int(l) == choice.second ? 1.0 : 0.0) -
                       (y[b.j] == problem_.assignment(cj[l]).label ? 1.0 : 0.0);
      b.mu_j[l] += step * g;
    }
  }

  const Problem& problem_;
  const SolverParams& params_;
  std::vector<Block> blocks_;
  double scale_;
  int since_improved_ = 0;
  double best_bound_ = -kInfinity;
  double best_energy_ = kInfinity;
  Labeling best_labeling_;
};

}  // namespace detail

RunRecord subgradient_ascend(const Problem& problem,
                             const SolverParams& params) {
  RunRecord record;
  record.solver = "dual";
  record.params_used = detail::params_snapshot(params);

  detail::DualEngine engine(problem, params);
  detail::Stopwatch clock;
  detail::TraceRecorder trace(record, clock);

  for (int iter = 0; iter < params.dual_cap; ++iter) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    const bool moving = engine.step();
    trace.energy(engine.best_energy(), engine.best_labeling());
    trace.bound(engine.best_bound());
    if (!moving || engine.certified()) break;
  }
  trace.finish();
  return record;
}

RunRecord solve_dual(const Problem& problem, const SolverParams& params) {
  return subgradient_ascend(problem, params);
}

RunRecord solve_fm_dual(const Problem& problem, const SolverParams& params) {
  RunRecord record;
  record.solver = "fm+dual";
  record.params_used = detail::params_snapshot(params);

  detail::FmEngine fm(problem, params);
  detail::DualEngine dual(problem, params);
  detail::Stopwatch clock;
  detail::TraceRecorder trace(record, clock);

  int fm_done = 0;
  int dual_done = 0;
  bool dual_moving = true;
  while (fm_done < params.fm_generations || (dual_moving && dual_done < params.dual_cap)) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    for (int k = 0; k < params.fmdual_fm_batch && fm_done < params.fm_generations;
         ++k, ++fm_done) {
      const double e = fm.step();
      trace.energy(e, fm.incumbent());
      dual.offer_energy(e, fm.incumbent());
      if (clock.elapsed() > params.time_budget_seconds) break;
    }
    if (dual.certified()) break;
    for (int k = 0;
         k < params.fmdual_dual_batch && dual_moving && dual_done < params.dual_cap;
         ++k, ++dual_done) {
      dual_moving = dual.step();
      trace.energy(dual.best_energy(), dual.best_labeling());
      trace.bound(dual.best_bound());
      if (clock.elapsed() > params.time_budget_seconds) break;
    }
    if (dual.certified()) break;
  }
  trace.finish();
  return record;
}

}  // namespace gmtk

#include "gmtk/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gmtk/dual.hpp"
#include "gmtk/lap.hpp"
#include "gmtk/transforms.hpp"
#include "solver_common.hpp"

namespace gmtk {

namespace detail {

double quad_value(const Problem& p, const std::vector<double>& x) {
  double v = 0.0;
  for (int id = 0; id < p.num_assignments(); ++id) {
    v += p.assignment(id).cost * x[id] * x[id];
  }
  for (const Edge& e : p.edges()) {
    v += e.cost * x[e.a] * x[e.b];
  }
  return v;
}

std::vector<double> quad_grad(const Problem& p, const std::vector<double>& x) {
  std::vector<double> g(p.num_assignments(), 0.0);
  for (int id = 0; id < p.num_assignments(); ++id) {
    g[id] = 2.0 * p.assignment(id).cost * x[id];
  }
  for (const Edge& e : p.edges()) {
    g[e.a] += e.cost * x[e.b];
    g[e.b] += e.cost * x[e.a];
  }
  return g;
}

double quad_line_search(const Problem& p, const std::vector<double>& x,
                        const std::vector<double>& d) {
  // f(eta) = f(0) + a1*eta + a2*eta^2 on the segment.
  const double a2 = quad_value(p, d);
  double a1 = 0.0;
  const std::vector<double> g = quad_grad(p, x);
  for (size_t i = 0; i < d.size(); ++i) a1 += g[i] * d[i];

  if (a2 > 0.0) {
    return std::clamp(-a1 / (2.0 * a2), 0.0, 1.0);
  }
  if (a1 + a2 < 0.0) return 1.0;
  if (a1 + a2 > 0.0) return 0.0;
  return 1.0;  // flat: move fully
}

std::map<std::string, double> params_snapshot(const SolverParams& p) {
  return {
      {"time_budget_seconds", p.time_budget_seconds},
      {"seed", static_cast<double>(p.seed)},
      {"power_tol", p.power_tol},
      {"power_cap", static_cast<double>(p.power_cap)},
      {"ipfp_cap", static_cast<double>(p.ipfp_cap)},
      {"ga_decay", p.ga_decay},
      {"ga_tmin_factor", p.ga_tmin_factor},
      {"ga_sinkhorn_tol", p.ga_sinkhorn_tol},
      {"ga_sinkhorn_cap", static_cast<double>(p.ga_sinkhorn_cap)},
      {"fw_gap_tol", p.fw_gap_tol},
      {"fw_cap", static_cast<double>(p.fw_cap)},
      {"rrwm_alpha", p.rrwm_alpha},
      {"rrwm_beta", p.rrwm_beta},
      {"rrwm_tol", p.rrwm_tol},
      {"rrwm_cap", static_cast<double>(p.rrwm_cap)},
      {"fm_epsilon", p.fm_epsilon},
      {"fm_top_k", static_cast<double>(p.fm_top_k)},
      {"fm_generations", static_cast<double>(p.fm_generations)},
      {"dual_cap", static_cast<double>(p.dual_cap)},
      {"dual_gap_tol", p.dual_gap_tol},
      {"dual_step_init", p.dual_step_init},
      {"dual_patience", static_cast<double>(p.dual_patience)},
      {"fmdual_fm_batch", static_cast<double>(p.fmdual_fm_batch)},
      {"fmdual_dual_batch", static_cast<double>(p.fmdual_dual_batch)},
  };
}

}  // namespace detail

namespace {

using detail::Prepared;
using detail::Stopwatch;
using detail::TraceRecorder;

RunRecord make_record(const std::string& name, const SolverParams& params) {
  RunRecord record;
  record.solver = name;
  record.params_used = detail::params_snapshot(params);
  return record;
}

std::vector<double> uniform_start(const Problem& p) {
  const int n = p.num_assignments();
  return std::vector<double>(n, n > 0 ? 1.0 / std::sqrt(double(n)) : 0.0);
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double diff_norm2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Power iteration core shared by sm and mpm. `pool` switches neighbor
/// aggregation from sum to per-node maximum.
std::vector<double> power_iterate(const Problem& p, const SolverParams& params,
                                  const Stopwatch& clock, bool pool) {
  std::vector<double> x = uniform_start(p);
  std::vector<double> y(x.size());
  for (int iter = 0; iter < params.power_cap; ++iter) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    if (!pool) {
      for (int id = 0; id < p.num_assignments(); ++id) {
        y[id] = -p.assignment(id).cost * x[id];
      }
      for (const Edge& e : p.edges()) {
        y[e.a] += -e.cost / 2.0 * x[e.b];
        y[e.b] += -e.cost / 2.0 * x[e.a];
      }
    } else {
      // Max-pooling: per neighboring node, only the strongest candidate
      // match contributes.
      for (int id = 0; id < p.num_assignments(); ++id) {
        y[id] = -p.assignment(id).cost * x[id];
        double best = 0.0;
        int best_node = -1;
        for (int eid : p.edges_of(id)) {
          const Edge& e = p.edges()[eid];
          const int other = e.a == id ? e.b : e.a;
          const int other_node = p.assignment(other).node;
          const double w = -e.cost / 2.0 * x[other];
          if (other_node != best_node) {
            if (best_node >= 0) y[id] += best;
            best_node = other_node;
            best = w;
          } else {
            best = std::max(best, w);
          }
        }
        if (best_node >= 0) y[id] += best;
      }
    }
    const double n = norm2(y);
    if (n == 0.0) break;  // zero matrix: keep the uniform vector
    for (double& v : y) v /= n;
    const double delta = diff_norm2(x, y);
    x = y;
    if (delta <= params.power_tol) break;
  }
  return x;
}

RunRecord run_power_method(const std::string& name, const Problem& problem,
                           const SolverParams& params, bool pool) {
  RunRecord record = make_record(name, params);
  Prepared prep = Prepared::non_positive(problem);
  Stopwatch clock;
  TraceRecorder trace(record, clock);

  std::vector<double> x = power_iterate(prep.problem(), params, clock, pool);
  const Labeling y = prep.to_original(round_fractional(prep.problem(), x));
  trace.energy(evaluate(problem, y), y);
  trace.finish();
  return record;
}

}  // namespace

RunRecord solve_sm(const Problem& problem, const SolverParams& params) {
  return run_power_method("sm", problem, params, false);
}

RunRecord solve_mpm(const Problem& problem, const SolverParams& params) {
  return run_power_method("mpm", problem, params, true);
}

RunRecord solve_ipfp(const Problem& problem, const SolverParams& params,
                     IpfpInit init) {
  RunRecord record =
      make_record(init == IpfpInit::kUniform ? "ipfpu" : "ipfps", params);
  Prepared prep = Prepared::non_positive(problem);
  const Problem& p = prep.problem();
  Stopwatch clock;
  TraceRecorder trace(record, clock);

  std::vector<double> x;
  if (init == IpfpInit::kFromSm) {
    x = power_iterate(p, params, clock, false);
  } else {
    x = uniform_start(p);
  }

  Labeling prev_b;
  for (int iter = 0; iter < params.ipfp_cap; ++iter) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    const std::vector<double> g = detail::quad_grad(p, x);
    const Labeling b_lab = solve_ilap_with_costs(p, g).first;
    const Labeling y = prep.to_original(b_lab);
    trace.energy(evaluate(problem, y), y);
    if (b_lab == prev_b) break;
    prev_b = b_lab;

    const FractionalSolution b = indicator(p, b_lab);
    std::vector<double> d(x.size());
    for (size_t i = 0; i < x.size(); ++i) d[i] = b[i] - x[i];
    const double eta = detail::quad_line_search(p, x, d);
    if (eta == 0.0) break;
    for (size_t i = 0; i < x.size(); ++i) x[i] += eta * d[i];
  }
  trace.finish();
  return record;
}

RunRecord solve_ga(const Problem& problem, const SolverParams& params) {
  RunRecord record = make_record("ga", params);
  Prepared prep = Prepared::bijective(problem);
  const Problem& p = prep.problem();
  Stopwatch clock;
  TraceRecorder trace(record, clock);

  const int n = p.num_nodes();
  double tmax = 0.0;
  for (const Assignment& a : p.assignments()) {
    tmax = std::max(tmax, std::abs(a.cost));
  }
  for (const Edge& e : p.edges()) tmax = std::max(tmax, std::abs(e.cost));

  std::vector<double> x(p.num_assignments(), n > 0 ? 1.0 / n : 0.0);
  if (tmax > 0.0) {
    const double tmin = params.ga_tmin_factor * tmax;
    for (double t = tmax; t >= tmin; t *= params.ga_decay) {
      if (clock.elapsed() > params.time_budget_seconds) break;
      std::vector<double> g = detail::quad_grad(p, x);
      const double gmin = *std::min_element(g.begin(), g.end());
      std::vector<double> soft(x.size());
      for (size_t i = 0; i < x.size(); ++i) {
        soft[i] = std::exp(-std::min((g[i] - gmin) / t, 500.0));
      }
      // Sinkhorn over the candidate support.
      for (int it = 0; it < params.ga_sinkhorn_cap; ++it) {
        double dev = 0.0;
        for (int i = 0; i < n; ++i) {
          double sum = 0.0;
          for (int id : p.candidates_of(i)) sum += soft[id];
          if (sum > 0.0) {
            for (int id : p.candidates_of(i)) soft[id] /= sum;
          }
        }
        std::vector<double> col(p.num_labels(), 0.0);
        for (int id = 0; id < p.num_assignments(); ++id) {
          col[p.assignment(id).label] += soft[id];
        }
        for (int id = 0; id < p.num_assignments(); ++id) {
          const double sum = col[p.assignment(id).label];
          if (sum > 0.0) soft[id] /= sum;
        }
        // Row sums drift after the column pass; measure the worst one.
        for (int i = 0; i < n; ++i) {
          double sum = 0.0;
          for (int id : p.candidates_of(i)) sum += soft[id];
          dev = std::max(dev, std::abs(sum - 1.0));
        }
        if (dev <= params.ga_sinkhorn_tol) break;
      }
      x = soft;
    }
  }

  const Labeling y = prep.to_original(round_fractional(p, x));
  trace.energy(evaluate(problem, y), y);
  trace.finish();
  return record;
}

RunRecord solve_fw(const Problem& problem, const SolverParams& params) {
  RunRecord record = make_record("fw", params);
  Stopwatch clock;
  TraceRecorder trace(record, clock);
  const Problem& p = problem;

  // Initial vertex: assignment problem over the unary costs only.
  std::vector<double> unary(p.num_assignments());
  for (int id = 0; id < p.num_assignments(); ++id) {
    unary[id] = p.assignment(id).cost;
  }
  Labeling current = solve_ilap_with_costs(p, unary).first;
  trace.energy(evaluate(p, current), current);
  std::vector<double> x = indicator(p, current);

  for (int iter = 0; iter < params.fw_cap; ++iter) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    const std::vector<double> g = detail::quad_grad(p, x);
    const Labeling b_lab = solve_ilap_with_costs(p, g).first;
    trace.energy(evaluate(p, b_lab), b_lab);
    const FractionalSolution b = indicator(p, b_lab);
    double gap = 0.0;  // g . (x - b), an upper bound on the local progress
    std::vector<double> d(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      d[i] = b[i] - x[i];
      gap -= g[i] * d[i];
    }
    if (gap <= params.fw_gap_tol) break;
    const double eta = detail::quad_line_search(p, x, d);
    if (eta == 0.0) break;
    for (size_t i = 0; i < x.size(); ++i) x[i] += eta * d[i];
  }
  trace.finish();
  return record;
}

RunRecord solve_rrwm(const Problem& problem, const SolverParams& params) {
  RunRecord record = make_record("rrwm", params);
  Prepared prep = Prepared::non_positive(problem);
  const Problem& p = prep.problem();
  Stopwatch clock;
  TraceRecorder trace(record, clock);

  const int n = p.num_assignments();
  // Association graph weights: W = -C, row-normalized into a transition
  // matrix over candidate assignments.
  std::vector<double> degree(n, 0.0);
  for (int id = 0; id < n; ++id) degree[id] = -p.assignment(id).cost;
  for (const Edge& e : p.edges()) {
    degree[e.a] += -e.cost / 2.0;
    degree[e.b] += -e.cost / 2.0;
  }

  std::vector<double> x(n, n > 0 ? 1.0 / n : 0.0);
  std::vector<double> walk(n), jump(n);
  for (int iter = 0; n > 0 && iter < params.rrwm_cap; ++iter) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    // walk = P^T x with P[a][b] = W[a][b] / degree[a]
    for (int id = 0; id < n; ++id) {
      walk[id] = degree[id] > 0.0
                     ? -p.assignment(id).cost / degree[id] * x[id]
                     : 0.0;
    }
    for (const Edge& e : p.edges()) {
      if (degree[e.a] > 0.0) walk[e.b] += -e.cost / 2.0 / degree[e.a] * x[e.a];
      if (degree[e.b] > 0.0) walk[e.a] += -e.cost / 2.0 / degree[e.b] * x[e.b];
    }
    // Reweighting jump: sharpen, push towards the feasible polytope, and
    // renormalize to a probability vector.
    const double xmax = *std::max_element(x.begin(), x.end());
    for (int id = 0; id < n; ++id) {
      jump[id] = xmax > 0.0 ? std::exp(params.rrwm_beta * x[id] / xmax) : 1.0;
    }
    for (int round = 0; round < 10; ++round) {
      for (int i = 0; i < p.num_nodes(); ++i) {
        double sum = 0.0;
        for (int id : p.candidates_of(i)) sum += jump[id];
        if (sum > 1.0) {
          for (int id : p.candidates_of(i)) jump[id] /= sum;
        }
      }
      std::vector<double> col(p.num_labels(), 0.0);
      for (int id = 0; id < n; ++id) col[p.assignment(id).label] += jump[id];
      for (int id = 0; id < n; ++id) {
        const double sum = col[p.assignment(id).label];
        if (sum > 1.0) jump[id] /= sum;
      }
    }
    double jsum = std::accumulate(jump.begin(), jump.end(), 0.0);
    if (jsum > 0.0) {
      for (double& v : jump) v /= jsum;
    }

    std::vector<double> next(n);
    double total = 0.0;
    for (int id = 0; id < n; ++id) {
      next[id] = params.rrwm_alpha * walk[id] +
                 (1.0 - params.rrwm_alpha) * jump[id];
      total += next[id];
    }
    if (total > 0.0) {
      for (double& v : next) v /= total;
    }
    const double delta = diff_norm2(next, x);
    x = next;
    if (delta <= params.rrwm_tol) break;
  }

  const Labeling y = prep.to_original(round_fractional(p, x));
  trace.energy(evaluate(problem, y), y);
  trace.finish();
  return record;
}

namespace {

/// Labeling with per-node active assignment ids, label ownership, and O(deg)
/// incremental objective deltas.
class ActiveState {
 public:
  ActiveState(const Problem& p, const Labeling& y)
      : p_(p),
        labeling_(y),
        active_(p.num_nodes(), -1),
        owner_(p.num_labels(), -1) {
    for (int i = 0; i < p.num_nodes(); ++i) {
      if (y[i] == kDummy) continue;
      active_[i] = p.assignment_id(i, y[i]);
      owner_[y[i]] = i;
    }
  }

  explicit ActiveState(const Problem& p)
      : ActiveState(p, Labeling(p.num_nodes(), kDummy)) {}

  const Labeling& labeling() const { return labeling_; }
  int active(int node) const { return active_[node]; }
  int owner(int label) const { return owner_[label]; }

  double delta(int node, int new_id) const {
    double d = 0.0;
    const int old_id = active_[node];
    if (old_id == new_id) return 0.0;
    if (old_id >= 0) d -= contribution(old_id, node);
    if (new_id >= 0) d += contribution(new_id, node);
    return d;
  }

  void apply(int node, int new_id) {
    const int old_id = active_[node];
    if (old_id >= 0) owner_[p_.assignment(old_id).label] = -1;
    active_[node] = new_id;
    if (new_id >= 0) {
      labeling_[node] = p_.assignment(new_id).label;
      owner_[labeling_[node]] = node;
    } else {
      labeling_[node] = kDummy;
    }
  }

 private:
  double contribution(int id, int node) const {
    double c = p_.assignment(id).cost;
    for (int eid : p_.edges_of(id)) {
      const Edge& e = p_.edges()[eid];
      const int other = e.a == id ? e.b : e.a;
      const Assignment& o = p_.assignment(other);
      if (o.node != node && active_[o.node] == other) c += e.cost;
    }
    return c;
  }

  const Problem& p_;
  Labeling labeling_;
  std::vector<int> active_;
  std::vector<int> owner_;
};

Labeling greedy_generate_impl(const Problem& p, std::mt19937_64& rng,
                              double epsilon, int top_k) {
  std::vector<int> order(p.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  ActiveState state(p);
  // (delta, random tie-break, assignment id): equal-delta choices are
  // ordered randomly so zero-unary instances still get diverse labelings.
  std::vector<std::tuple<double, std::uint64_t, int>> choices;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int node : order) {
    choices.clear();
    choices.emplace_back(0.0, rng(), -1);  // dummy
    for (int id : p.candidates_of(node)) {
      if (state.owner(p.assignment(id).label) >= 0) continue;
      choices.emplace_back(state.delta(node, id), rng(), id);
    }
    std::sort(choices.begin(), choices.end());
    int pick = 0;
    if (epsilon > 0.0 && choices.size() > 1 && coin(rng) < epsilon) {
      const int k = std::min<int>(top_k, static_cast<int>(choices.size()));
      std::uniform_int_distribution<int> among(0, k - 1);
      pick = among(rng);
    }
    state.apply(node, std::get<2>(choices[pick]));
  }
  return state.labeling();
}

}  // namespace

Labeling greedy_generate(const Problem& problem, std::uint64_t seed,
                         double epsilon, int top_k) {
  std::mt19937_64 rng(seed);
  return greedy_generate_impl(problem, rng, epsilon, top_k);
}

Labeling fuse(const Problem& problem, const Labeling& y_a,
              const Labeling& y_b) {
  if (!is_feasible(problem, y_a) || !is_feasible(problem, y_b)) {
    throw InfeasibleError("fuse requires two feasible labelings");
  }
  const double ea = evaluate(problem, y_a);
  const double eb = evaluate(problem, y_b);
  const Labeling& start = eb < ea ? y_b : y_a;
  const Labeling& other = eb < ea ? y_a : y_b;

  ActiveState state(problem, start);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < problem.num_nodes(); ++i) {
      const int target = other[i];
      if (state.labeling()[i] == target) continue;
      const int new_id =
          target == kDummy ? -1 : problem.assignment_id(i, target);
      const int holder = target == kDummy ? -1 : state.owner(target);
      if (holder < 0 || holder == i) {
        if (state.delta(i, new_id) < 0.0) {
          state.apply(i, new_id);
          improved = true;
        }
      } else {
        // The target label is taken: move its holder to the holder's label
        // in the other parent first, when that slot is free.
        const int holder_target = other[holder];
        if (holder_target == target) continue;
        const int holder_id = holder_target == kDummy
                                  ? -1
                                  : problem.assignment_id(holder, holder_target);
        if (holder_target != kDummy) {
          const int occupant = state.owner(holder_target);
          if (occupant >= 0 && occupant != holder) continue;
        }
        const int holder_old = state.active(holder);
        const double d1 = state.delta(holder, holder_id);
        state.apply(holder, holder_id);
        const double d2 = state.delta(i, new_id);
        if (d1 + d2 < 0.0) {
          state.apply(i, new_id);
          improved = true;
        } else {
          state.apply(holder, holder_old);
        }
      }
    }
  }
  return state.labeling();
}

namespace detail {

FmEngine::FmEngine(const Problem& problem, const SolverParams& params)
    : problem_(problem),
      epsilon_(params.fm_epsilon),
      top_k_(params.fm_top_k),
      rng_(params.seed) {}

double FmEngine::step() {
  const Labeling generated =
      greedy_generate_impl(problem_, rng_, epsilon_, top_k_);
  if (first_) {
    incumbent_ = generated;
    first_ = false;
  } else {
    incumbent_ = fuse(problem_, incumbent_, generated);
  }
  energy_ = evaluate(problem_, incumbent_);
  return energy_;
}

}  // namespace detail

RunRecord solve_fm(const Problem& problem, const SolverParams& params) {
  RunRecord record = make_record("fm", params);
  detail::FmEngine engine(problem, params);
  Stopwatch clock;
  TraceRecorder trace(record, clock);
  for (int gen = 0; gen < params.fm_generations; ++gen) {
    if (clock.elapsed() > params.time_budget_seconds) break;
    const double e = engine.step();
    trace.energy(e, engine.incumbent());
  }
  trace.finish();
  return record;
}

RunRecord run_solver(const std::string& name, const Problem& problem,
                     const SolverParams& params) {
  if (name == "sm") return solve_sm(problem, params);
  if (name == "mpm") return solve_mpm(problem, params);
  if (name == "ipfpu") return solve_ipfp(problem, params, IpfpInit::kUniform);
  if (name == "ipfps") return solve_ipfp(problem, params, IpfpInit::kFromSm);
  if (name == "ga") return solve_ga(problem, params);
  if (name == "fw") return solve_fw(problem, params);
  if (name == "rrwm") return solve_rrwm(problem, params);
  if (name == "fm") return solve_fm(problem, params);
  if (name == "dual") return solve_dual(problem, params);
  if (name == "fm+dual") return solve_fm_dual(problem, params);
  throw Error("unknown solver: " + name);
}

std::vector<std::string> solver_names() {
  return {"sm", "mpm", "ipfpu", "ipfps", "ga",
          "fw", "rrwm", "fm",    "dual",  "fm+dual"};
}

}  // namespace gmtk

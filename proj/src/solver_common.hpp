// Internal helpers shared by the solver and dual modules.
#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "gmtk/problem.hpp"
#include "gmtk/solvers.hpp"
#include "gmtk/transforms.hpp"

namespace gmtk::detail {

/// Chain of cost transformations applied before a solver starts, with the
/// composed pullback to the original problem.
class Prepared {
 public:
  static Prepared identity(const Problem& p) { return Prepared(p); }

  static Prepared bijective(const Problem& p) {
    Prepared prep(p);
    if (!p.is_bijective()) prep.push(gm_to_qap(prep.problem()));
    return prep;
  }

  static Prepared non_positive(const Problem& p) {
    Prepared prep(p);
    if (!p.is_non_positive()) {
      if (!p.is_bijective()) prep.push(gm_to_qap(prep.problem()));
      prep.push(make_non_positive(prep.problem()));
    }
    return prep;
  }

  const Problem& problem() const {
    return steps_.empty() ? *original_ : steps_.back().first;
  }

  Labeling to_original(Labeling y) const {
    for (size_t k = steps_.size(); k-- > 0;) {
      const Problem& prev = k == 0 ? *original_ : steps_[k - 1].first;
      y = pull_back(prev, steps_[k].first, steps_[k].second, y);
    }
    return y;
  }

 private:
  explicit Prepared(const Problem& p) : original_(&p) {}

  void push(std::pair<Problem, TransformReport> step) {
    steps_.push_back(std::move(step));
  }

  const Problem* original_;
  std::vector<std::pair<Problem, TransformReport>> steps_;
};

/// Wall clock started right before the optimization loop; transformation and
/// parsing time stay outside the measurement.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Appends best-so-far points to a RunRecord trace: energies non-increasing,
/// bounds non-decreasing, elapsed strictly increasing.
class TraceRecorder {
 public:
  TraceRecorder(RunRecord& record, const Stopwatch& clock)
      : record_(record), clock_(clock) {}

  void energy(double e, const Labeling& y) {
    if (e < best_energy_) {
      best_energy_ = e;
      record_.labeling = y;
      append();
    }
  }

  void bound(double d) {
    if (!best_bound_ || d > *best_bound_) {
      best_bound_ = d;
      append();
    }
  }

  void finish() {
    record_.energy = best_energy_;
    record_.bound = best_bound_;
    if (record_.trace.empty() && std::isfinite(best_energy_)) append();
  }

  double best_energy() const { return best_energy_; }
  std::optional<double> best_bound() const { return best_bound_; }

 private:
  void append() {
    if (!std::isfinite(best_energy_)) return;
    double t = clock_.elapsed();
    if (!record_.trace.empty() && t <= record_.trace.back().elapsed) {
      t = record_.trace.back().elapsed + 1e-9;
    }
    record_.trace.push_back(TracePoint{t, best_energy_, best_bound_});
  }

  RunRecord& record_;
  const Stopwatch& clock_;
  double best_energy_ = kInfinity;
  std::optional<double> best_bound_;
};

/// x^T C x for the sparse cost structure.
double quad_value(const Problem& p, const std::vector<double>& x);

/// Gradient 2Cx of the quadratic objective.
std::vector<double> quad_grad(const Problem& p, const std::vector<double>& x);

/// Exact minimizer of the quadratic along x + eta * d, eta in [0, 1].
/// Flat segments move fully (eta = 1).
double quad_line_search(const Problem& p, const std::vector<double>& x,
                        const std::vector<double>& d);

std::map<std::string, double> params_snapshot(const SolverParams& params);

/// Reusable fusion-moves engine: one step generates a randomized greedy
/// labeling and fuses it with the incumbent. Shared by the fm solver and the
/// interleaved fm+dual driver.
class FmEngine {
 public:
  FmEngine(const Problem& problem, const SolverParams& params);

  /// Runs one generation; returns the incumbent energy afterwards.
  double step();

  const Labeling& incumbent() const { return incumbent_; }
  double energy() const { return energy_; }

 private:
  const Problem& problem_;
  double epsilon_;
  int top_k_;
  std::mt19937_64 rng_;
  Labeling incumbent_;
  double energy_ = kInfinity;
  bool first_ = true;
};

}  // namespace gmtk::detail

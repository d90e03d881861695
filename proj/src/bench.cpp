#include "gmtk/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace gmtk {

namespace {

bool within_tol(double e, double ref, double tol) {
  return e <= ref + tol * std::max(std::abs(ref), 1e-9);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

/// Best energy and bound reachable within the budget, from a best-so-far
/// trace. Returns false when no trace point fits.
bool state_at(const RunRecord& r, double budget, double* energy,
              std::optional<double>* bound) {
  bool any = false;
  for (const TracePoint& p : r.trace) {
    if (p.elapsed > budget) break;
    *energy = p.energy;
    if (p.bound) *bound = p.bound;
    any = true;
  }
  return any;
}

std::map<std::string, double> reference_optima(
    const BenchmarkSuite& suite, const std::vector<RunRecord>& records) {
  std::map<std::string, double> ref;
  std::set<std::string> known;
  for (const BenchmarkInstance& inst : suite.instances) {
    if (inst.known_optimum) {
      ref[inst.name] = *inst.known_optimum;
      known.insert(inst.name);
    }
  }
  // Fallback reference: best energy any solver achieved.
  for (const RunRecord& r : records) {
    if (r.trace.empty() || known.count(r.instance)) continue;
    auto it = ref.find(r.instance);
    if (it == ref.end()) {
      ref[r.instance] = r.energy;
    } else {
      it->second = std::min(it->second, r.energy);
    }
  }
  return ref;
}

std::vector<std::string> solver_list(const std::vector<RunRecord>& records) {
  std::vector<std::string> solvers;
  for (const RunRecord& r : records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) {
      solvers.push_back(r.solver);
    }
  }
  return solvers;
}

const RunRecord* find_record(const std::vector<RunRecord>& records,
                             const std::string& solver,
                             const std::string& instance) {
  for (const RunRecord& r : records) {
    if (r.solver == solver && r.instance == instance) return &r;
  }
  return nullptr;
}

}  // namespace

double accuracy(const Labeling& labeling, const std::map<int, int>& truth) {
  if (truth.empty()) throw Error("accuracy needs a non-empty ground truth");
  int correct = 0;
  for (const auto& [node, label] : truth) {
    if (node < 0 || node >= static_cast<int>(labeling.size())) {
      throw SizeError("ground truth references a node outside the labeling");
    }
    if (labeling[node] == label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

FixedTimeReport fixed_time_report(const BenchmarkSuite& suite,
                                  const std::vector<RunRecord>& records,
                                  const std::vector<double>& budgets) {
  FixedTimeReport report;
  report.solvers = solver_list(records);
  report.budgets = budgets;
  const std::map<std::string, double> ref = reference_optima(suite, records);

  for (const std::string& solver : report.solvers) {
    for (double budget : budgets) {
      FixedTimeCell cell;
      double energy_sum = 0.0, bound_sum = 0.0, acc_sum = 0.0;
      int energy_n = 0, bound_n = 0, acc_n = 0;
      for (const BenchmarkInstance& inst : suite.instances) {
        ++cell.instances;
        const RunRecord* r = find_record(records, solver, inst.name);
        double e = 0.0;
        std::optional<double> d;
        if (!r || !state_at(*r, budget, &e, &d)) {
          ++cell.no_solution;
          continue;
        }
        auto opt = ref.find(inst.name);
        if (opt != ref.end() && within_tol(e, opt->second, 1e-3)) {
          ++cell.solved;
        }
        energy_sum += e;
        ++energy_n;
        if (d) {
          bound_sum += *d;
          ++bound_n;
        }
        if (!inst.ground_truth.empty()) {
          acc_sum += accuracy(r->labeling, inst.ground_truth);
          ++acc_n;
        }
      }
      if (energy_n > 0) cell.mean_energy = energy_sum / energy_n;
      if (bound_n > 0) cell.mean_bound = bound_sum / bound_n;
      if (acc_n > 0) cell.mean_accuracy = acc_sum / acc_n;
      report.cells[{solver, budget}] = cell;
    }
  }
  return report;
}

namespace {

ProfileTable fixed_target_times_impl(std::vector<std::string> instances,
                                     const std::map<std::string, double>& ref,
                                     const std::vector<RunRecord>& records,
                                     double tol) {
  ProfileTable table;
  table.solvers = solver_list(records);
  table.instances = std::move(instances);

  table.times.assign(table.solvers.size(),
                     std::vector<double>(table.instances.size(), kInfinity));
  for (size_t s = 0; s < table.solvers.size(); ++s) {
    for (size_t p = 0; p < table.instances.size(); ++p) {
      const RunRecord* r =
          find_record(records, table.solvers[s], table.instances[p]);
      auto opt = ref.find(table.instances[p]);
      if (!r || opt == ref.end()) continue;
      for (const TracePoint& tp : r->trace) {
        if (within_tol(tp.energy, opt->second, tol)) {
          table.times[s][p] = tp.elapsed;
          break;
        }
      }
    }
  }
  return table;
}

}  // namespace

ProfileTable fixed_target_times(const BenchmarkSuite& suite,
                                const std::vector<RunRecord>& records,
                                double tol) {
  std::vector<std::string> instances;
  for (const BenchmarkInstance& inst : suite.instances) {
    instances.push_back(inst.name);
  }
  return fixed_target_times_impl(std::move(instances),
                                 reference_optima(suite, records), records,
                                 tol);
}

ProfileTable fixed_target_times(const std::vector<RunRecord>& records,
                                double tol) {
  std::vector<std::string> instances;
  for (const RunRecord& r : records) {
    if (std::find(instances.begin(), instances.end(), r.instance) ==
        instances.end()) {
      instances.push_back(r.instance);
    }
  }
  return fixed_target_times_impl(std::move(instances),
                                 reference_optima(BenchmarkSuite{}, records),
                                 records, tol);
}

std::vector<std::vector<double>> performance_profile(
    const ProfileTable& table, const std::vector<double>& tau_grid) {
  const size_t ns = table.solvers.size();
  const size_t np = table.instances.size();
  std::vector<std::vector<double>> rho(ns,
                                       std::vector<double>(tau_grid.size()));
  if (np == 0) return rho;

  for (size_t s = 0; s < ns; ++s) {
    for (size_t k = 0; k < tau_grid.size(); ++k) {
      int count = 0;
      for (size_t p = 0; p < np; ++p) {
        double tmin = kInfinity;
        for (size_t s2 = 0; s2 < ns; ++s2) {
          tmin = std::min(tmin, table.times[s2][p]);
        }
        const double t = table.times[s][p];
        if (std::isinf(t) || std::isinf(tmin)) continue;
        if (t <= tau_grid[k] * tmin) ++count;
      }
      rho[s][k] = static_cast<double>(count) / static_cast<double>(np);
    }
  }
  return rho;
}

std::string fixed_time_to_csv(const FixedTimeReport& report) {
  std::ostringstream out;
  out << "solver,budget,instances,solved,no_solution,opt_percent,"
         "mean_energy,mean_bound,mean_accuracy\n";
  for (const std::string& solver : report.solvers) {
    for (double budget : report.budgets) {
      const FixedTimeCell& c = report.cells.at({solver, budget});
      const int with_solution = c.instances - c.no_solution;
      out << solver << ',' << fmt(budget) << ',' << c.instances << ','
          << c.solved << ',' << c.no_solution << ','
          << fmt(c.instances > 0 ? 100.0 * c.solved / c.instances : 0.0)
          << ',';
      if (with_solution > 0) out << fmt(c.mean_energy);
      out << ',';
      if (c.mean_bound) out << fmt(*c.mean_bound);
      out << ',';
      if (c.mean_accuracy) out << fmt(*c.mean_accuracy);
      out << '\n';
    }
  }
  return out.str();
}

std::string profile_to_csv(const ProfileTable& table,
                           const std::vector<double>& tau_grid) {
  const std::vector<std::vector<double>> rho =
      performance_profile(table, tau_grid);
  std::ostringstream out;
  out << "tau";
  for (const std::string& solver : table.solvers) out << ',' << solver;
  out << '\n';
  for (size_t k = 0; k < tau_grid.size(); ++k) {
    out << fmt(tau_grid[k]);
    for (size_t s = 0; s < table.solvers.size(); ++s) {
      out << ',' << fmt(rho[s][k]);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

double dist(const Point2& p, const Point2& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

/// Undirected k-nearest-neighbor pairs (i < j) of a point cloud.
std::set<std::pair<int, int>> knn_pairs(const std::vector<Point2>& pts,
                                        int k) {
  std::set<std::pair<int, int>> pairs;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> by_dist;
    for (int j = 0; j < n; ++j) {
      if (j != i) by_dist.emplace_back(dist(pts[i], pts[j]), j);
    }
    std::sort(by_dist.begin(), by_dist.end());
    for (int t = 0; t < std::min<int>(k, by_dist.size()); ++t) {
      const int j = by_dist[t].second;
      pairs.insert({std::min(i, j), std::max(i, j)});
    }
  }
  return pairs;
}

}  // namespace

BenchmarkInstance gen_house_style(int n, std::uint64_t seed) {
  if (n < 3) throw SizeError("gen_house_style needs n >= 3");
  std::mt19937_64 rng(seed);
  // Landmark spread is large relative to the kernel width of the pairwise
  // cost, so mismatched point pairs land far out in the Gaussian tail.
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  std::vector<Point2> cloud_a(n), cloud_b(n);
  for (Point2& p : cloud_a) p = {coord(rng), coord(rng)};

  // Second cloud: rotate about the centroid, translate, add jitter.
  std::uniform_real_distribution<double> angle(-0.1, 0.1);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  std::normal_distribution<double> jitter(0.0, 2.5);
  const double theta = angle(rng);
  const double tx = shift(rng), ty = shift(rng);
  double cx = 0.0, cy = 0.0;
  for (const Point2& p : cloud_a) cx += p.x / n, cy += p.y / n;
  for (int i = 0; i < n; ++i) {
    const double dx = cloud_a[i].x - cx, dy = cloud_a[i].y - cy;
    cloud_b[i] = {cx + dx * std::cos(theta) - dy * std::sin(theta) + tx +
                      jitter(rng),
                  cy + dx * std::sin(theta) + dy * std::cos(theta) + ty +
                      jitter(rng)};
  }

  std::vector<Assignment> assignments;
  assignments.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < n; ++s) assignments.push_back(Assignment{i, s, 0.0});
  }
  auto aid = [n](int i, int s) { return i * n + s; };

  const std::set<std::pair<int, int>> adj_a = knn_pairs(cloud_a, 5);
  const std::set<std::pair<int, int>> adj_b = knn_pairs(cloud_b, 5);
  std::vector<Edge> edges;
  for (const auto& [i, j] : adj_a) {
    const double dij = dist(cloud_a[i], cloud_a[j]);
    for (const auto& [s, l] : adj_b) {
      const double dsl = dist(cloud_b[s], cloud_b[l]);
      const double c = -std::exp(-(dij - dsl) * (dij - dsl) / 2500.0);
      edges.push_back(Edge{aid(i, s), aid(j, l), c});
      edges.push_back(Edge{aid(i, l), aid(j, s), c});
    }
  }

  Geometry geo;
  for (int i = 0; i < n; ++i) {
    geo.left_coords.emplace_back(i, cloud_a[i]);
    geo.right_coords.emplace_back(i, cloud_b[i]);
  }
  for (const auto& [i, j] : adj_a) geo.left_neighbors.emplace_back(i, j);
  for (const auto& [s, l] : adj_b) geo.right_neighbors.emplace_back(s, l);
  BenchmarkInstance inst{
      "house_n" + std::to_string(n) + "_s" + std::to_string(seed),
      Problem(n, n, std::move(assignments), std::move(edges),
              std::move(geo)),
      {},
      std::nullopt};
  for (int i = 0; i < n; ++i) inst.ground_truth[i] = i;
  return inst;
}

BenchmarkInstance gen_caltech_style(int nV, int nL, int outliers,
                                    std::uint64_t seed) {
  if (nL < nV) throw SizeError("gen_caltech_style needs nL >= nV");
  if (outliers < 0 || outliers > nV) {
    throw SizeError("outlier count must lie in [0, nV]");
  }
  const int inliers = nV - outliers;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::normal_distribution<double> jitter(0.0, 1.5);

  std::vector<Point2> labels(nL), nodes(nV);
  for (Point2& p : labels) p = {coord(rng), coord(rng)};
  for (int i = 0; i < nV; ++i) {
    if (i < inliers) {
      nodes[i] = {labels[i].x + jitter(rng), labels[i].y + jitter(rng)};
    } else {
      nodes[i] = {coord(rng), coord(rng)};
    }
  }

  std::vector<Assignment> assignments;
  for (int i = 0; i < nV; ++i) {
    for (int s = 0; s < nL; ++s) assignments.push_back(Assignment{i, s, 0.0});
  }
  auto aid = [nL](int i, int s) { return i * nL + s; };

  std::vector<Edge> edges;
  for (int i = 0; i < nV; ++i) {
    for (int j = i + 1; j < nV; ++j) {
      const double dij = dist(nodes[i], nodes[j]);
      for (int s = 0; s < nL; ++s) {
        for (int l = 0; l < nL; ++l) {
          if (s == l) continue;
          const double dsl = dist(labels[s], labels[l]);
          const double c = -std::max(50.0 - std::abs(dij - dsl), 0.0);
          if (c != 0.0 && s < l) {
            edges.push_back(Edge{aid(i, s), aid(j, l), c});
            edges.push_back(Edge{aid(i, l), aid(j, s), c});
          }
        }
      }
    }
  }

  Geometry geo;
  for (int i = 0; i < nV; ++i) geo.left_coords.emplace_back(i, nodes[i]);
  for (int s = 0; s < nL; ++s) geo.right_coords.emplace_back(s, labels[s]);
  BenchmarkInstance inst{"caltech_v" + std::to_string(nV) + "_l" +
                             std::to_string(nL) + "_o" +
                             std::to_string(outliers) + "_s" +
                             std::to_string(seed),
                         Problem(nV, nL, std::move(assignments),
                                 std::move(edges), std::move(geo)),
                         {},
                         std::nullopt};
  for (int i = 0; i < inliers; ++i) inst.ground_truth[i] = i;
  return inst;
}

std::vector<RunRecord> run_benchmark(const BenchmarkSuite& suite,
                                     const std::vector<std::string>& solvers,
                                     const SolverParams& params, int trials,
                                     int workers) {
  struct Cell {
    const BenchmarkInstance* instance;
    std::string solver;
  };
  std::vector<Cell> cells;
  for (const BenchmarkInstance& inst : suite.instances) {
    for (const std::string& solver : solvers) {
      cells.push_back(Cell{&inst, solver});
    }
  }
  std::vector<RunRecord> results(cells.size());

  auto run_cell = [&](size_t idx) {
    const Cell& cell = cells[idx];
    RunRecord best;
    best.solver = cell.solver;
    best.instance = cell.instance->name;
    best.energy = kInfinity;
    double best_time = kInfinity;
    for (int trial = 0; trial < std::max(1, trials); ++trial) {
      try {
        RunRecord r = run_solver(cell.solver, cell.instance->problem, params);
        const double t = r.trace.empty() ? kInfinity : r.trace.back().elapsed;
        if (t < best_time || (best.trace.empty() && !r.trace.empty())) {
          best_time = t;
          r.instance = cell.instance->name;
          best = std::move(r);
        }
      } catch (const Error&) {
        // Failed trial: the cell stays no-solution unless another trial
        // succeeds.
      }
    }
    results[idx] = std::move(best);
  };

  if (workers <= 0) {
    workers = std::max(1u, std::thread::hardware_concurrency() / 2);
  }
  if (workers <= 1 || cells.size() <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(workers, cells.size());
    for (size_t t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return results;
}

}  // namespace gmtk

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmtk/bench.hpp"
#include "gmtk/dd_io.hpp"
#include "gmtk/dual.hpp"
#include "gmtk/json_io.hpp"
#include "gmtk/problem.hpp"
#include "gmtk/solvers.hpp"
#include "gmtk/transforms.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw gmtk::Error("cannot open output file: " + out_path);
    out << text;
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(std::stod(item));
  }
  return values;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

/// Generator spec: kind:key=value,... — e.g. house:n=30,count=20,seed=1 or
/// caltech:nv=6,nl=8,outliers=1,count=10,seed=3.
gmtk::BenchmarkSuite generate_suite(const std::string& spec) {
  const size_t colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::map<std::string, long> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw gmtk::Error("bad generator argument: " + item);
      }
      args[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
    }
  }
  auto get = [&args](const std::string& key, long fallback) {
    auto it = args.find(key);
    return it == args.end() ? fallback : it->second;
  };

  gmtk::BenchmarkSuite suite;
  const long count = get("count", 1);
  const long seed = get("seed", 0);
  for (long k = 0; k < count; ++k) {
    if (kind == "house") {
      suite.instances.push_back(
          gmtk::gen_house_style(static_cast<int>(get("n", 10)), seed + k));
    } else if (kind == "caltech") {
      suite.instances.push_back(gmtk::gen_caltech_style(
          static_cast<int>(get("nv", 6)), static_cast<int>(get("nl", 8)),
          static_cast<int>(get("outliers", 0)), seed + k));
    } else {
      throw gmtk::Error("unknown generator kind: " + kind);
    }
  }
  return suite;
}

gmtk::BenchmarkSuite load_suite(const std::string& dir) {
  gmtk::BenchmarkSuite suite;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".dd") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    suite.instances.push_back(gmtk::BenchmarkInstance{
        file.stem().string(), gmtk::load_dd(file.string()), {}, std::nullopt});
  }
  if (suite.instances.empty()) {
    throw gmtk::Error("no .dd files found in " + dir);
  }
  return suite;
}

int run(int argc, char** argv) {
  CLI::App app{"graph matching toolkit"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run one solver on one instance");
  std::string solver = "fm";
  double budget = 10.0;
  std::uint64_t seed = 0;
  std::string in_path, out_path;
  solve->add_option("--solver", solver, "solver name")
      ->check(CLI::IsMember(gmtk::solver_names()));
  solve->add_option("--budget", budget, "time budget in seconds");
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--out", out_path, "output file (default stdout)");
  solve->add_option("file", in_path, "input .dd file")->required();

  // transform
  auto* transform =
      app.add_subcommand("transform", "rewrite an instance into another form");
  std::string target;
  std::string transform_in, transform_out;
  transform->add_option("--to", target, "target form")
      ->check(CLI::IsMember(std::vector<std::string>{
          "bijective", "nonpositive", "zero-unary", "qap", "maximization"}))
      ->required();
  transform->add_option("--out", transform_out, "output file (default stdout)");
  transform->add_option("file", transform_in, "input .dd file")->required();

  // convert
  auto* convert =
      app.add_subcommand("convert", "parse and re-emit canonical dd");
  bool validate = false;
  std::string convert_in, convert_out;
  convert->add_flag("--validate", validate, "only check, emit nothing");
  convert->add_option("--out", convert_out, "output file (default stdout)");
  convert->add_option("file", convert_in, "input .dd file")->required();

  // generate
  auto* generate = app.add_subcommand("generate", "emit synthetic instances");
  std::string gen_spec, gen_out;
  generate->add_option("spec", gen_spec, "generator spec, kind:key=value,...")
      ->required();
  generate->add_option("--out", gen_out, "output directory (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "run the benchmark harness");
  std::string suite_dir, bench_gen, solvers_arg = "fm,fm+dual";
  std::string budgets_arg = "1,10";
  std::string bench_out = "bench_out";
  int trials = 5, workers = 0;
  std::uint64_t bench_seed = 0;
  bench->add_option("--suite", suite_dir, "directory of .dd instances");
  bench->add_option("--generate", bench_gen, "generator spec instead of a suite");
  bench->add_option("--solvers", solvers_arg, "comma-separated solver names");
  bench->add_option("--budgets", budgets_arg, "comma-separated budgets (s)");
  bench->add_option("--trials", trials, "trials per cell; fastest kept");
  bench->add_option("--workers", workers, "pool size (0 = half the cores)");
  bench->add_option("--seed", bench_seed, "random seed");
  bench->add_option("--out", bench_out, "output directory")->required();

  // profile
  auto* profile =
      app.add_subcommand("profile", "performance profile from stored runs");
  std::string runs_dir, profile_out, taus_arg = "1,1.25,1.5,2,3,5,10,50,100";
  double tol = 1e-3;
  profile->add_option("runs", runs_dir, "directory of RunRecord .json files")
      ->required();
  profile->add_option("--taus", taus_arg, "comma-separated tau grid");
  profile->add_option("--tol", tol, "optimality tolerance (relative)");
  profile->add_option("--out", profile_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (solve->parsed()) {
    gmtk::SolverParams params;
    params.time_budget_seconds = budget;
    params.seed = seed;
    gmtk::RunRecord record =
        gmtk::run_solver(solver, gmtk::load_dd(in_path), params);
    record.instance = stem_of(in_path);
    emit(gmtk::record_to_json(record), out_path);
  } else if (transform->parsed()) {
    const gmtk::Problem problem = gmtk::load_dd(transform_in);
    gmtk::Problem result = problem;
    if (target == "bijective") {
      result = gmtk::gm_to_qap(problem).first;
    } else if (target == "nonpositive") {
      gmtk::Problem base =
          problem.is_bijective() ? problem : gmtk::gm_to_qap(problem).first;
      result = gmtk::make_non_positive(base).first;
    } else if (target == "zero-unary") {
      result = gmtk::remove_unary(problem).first;
    } else if (target == "qap") {
      result = gmtk::qap_to_gm(problem).first;
    } else if (target == "maximization") {
      result = gmtk::negate_for_max(problem);
    }
    emit(gmtk::write_dd(result), transform_out);
  } else if (convert->parsed()) {
    const gmtk::Problem problem = gmtk::load_dd(convert_in);
    if (!validate) emit(gmtk::write_dd(problem), convert_out);
  } else if (generate->parsed()) {
    const gmtk::BenchmarkSuite suite = generate_suite(gen_spec);
    if (gen_out.empty()) {
      for (const gmtk::BenchmarkInstance& inst : suite.instances) {
        std::cout << gmtk::write_dd(inst.problem);
      }
    } else {
      fs::create_directories(gen_out);
      for (const gmtk::BenchmarkInstance& inst : suite.instances) {
        gmtk::save_dd(inst.problem,
                      (fs::path(gen_out) / (inst.name + ".dd")).string());
      }
    }
  } else if (bench->parsed()) {
    if (suite_dir.empty() == bench_gen.empty()) {
      std::cerr << "bench: exactly one of --suite or --generate is required\n";
      return kExitUsage;
    }
    const gmtk::BenchmarkSuite suite =
        suite_dir.empty() ? generate_suite(bench_gen) : load_suite(suite_dir);
    const std::vector<double> budgets = parse_number_list(budgets_arg);
    gmtk::SolverParams params;
    params.seed = bench_seed;
    params.time_budget_seconds =
        *std::max_element(budgets.begin(), budgets.end());
    const std::vector<gmtk::RunRecord> records = gmtk::run_benchmark(
        suite, parse_name_list(solvers_arg), params, trials, workers);

    fs::create_directories(fs::path(bench_out) / "runs");
    for (const gmtk::RunRecord& r : records) {
      std::ofstream out(fs::path(bench_out) / "runs" /
                        (r.instance + "__" + r.solver + ".json"));
      out << gmtk::record_to_json(r) << '\n';
    }
    emit(gmtk::fixed_time_to_csv(
             gmtk::fixed_time_report(suite, records, budgets)),
         (fs::path(bench_out) / "fixed_time.csv").string());
    emit(gmtk::profile_to_csv(gmtk::fixed_target_times(suite, records),
                              parse_number_list(taus_arg)),
         (fs::path(bench_out) / "profile.csv").string());
  } else if (profile->parsed()) {
    std::vector<gmtk::RunRecord> records;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(runs_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      std::ifstream in(file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      records.push_back(gmtk::record_from_json(buffer.str()));
    }
    if (records.empty()) {
      throw gmtk::Error("no .json run records found in " + runs_dir);
    }
    emit(gmtk::profile_to_csv(gmtk::fixed_target_times(records, tol),
                              parse_number_list(taus_arg)),
         profile_out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gmtk::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const gmtk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}

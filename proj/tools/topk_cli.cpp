// topk: command-line front end.
//
//   topk project --input x.txt --k 5 --r 1.5 [--method plcp] [--output y.txt]
//   topk check   --n-max 64 --trials 1000 --seed 1
//   topk bench   --n 1000,10000 --methods esgs,plcp --format csv --output out.csv
//
// Exit codes: 0 success, 1 I/O error, 2 bad arguments, 3 check/benchmark
// disagreement, 4 internal invariant failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "topk/bench.hpp"
#include "topk/core.hpp"
#include "topk/ext.hpp"
#include "topk/oracle.hpp"
#include "topk/vector_io.hpp"

namespace {

using namespace topk;

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ProjectArgs {
  std::string input, output, method = "esgs";
  Index k = 0;
  std::optional<double> r, tauR;
  std::optional<Index> partialL;
};

int cmd_project(const ProjectArgs& a) {
  const Method method = parse_method(a.method);
  if (method == Method::TRIVIAL) throw ArgumentError("--method must be esgs, plcp or grid");
  ProjectionInstance inst;
  inst.x0 = read_vector(a.input);
  inst.k = a.k;
  if (inst.x0.empty()) throw ArgumentError("input vector is empty");
  if (inst.k > inst.n()) throw ArgumentError("--k exceeds the vector length");
  inst.r = a.r ? *a.r : *a.tauR * top_k_sum(inst.x0, inst.k);
  inst.validate();

  ProjectionResult res;
  if (a.partialL) {
    res = project_partial_sort(inst, {*a.partialL, 0}, method).result;
  } else {
    res = project(inst, method);
  }
  if (!a.output.empty()) write_vector(a.output, res.x);
  std::printf("lambda=%s theta=%s k0=%lld k1=%lld iters=%lld\n", g(res.lambda).c_str(),
              g(res.theta).c_str(), static_cast<long long>(res.k0), static_cast<long long>(res.k1),
              static_cast<long long>(res.iterations));
  return 0;
}

struct CheckArgs {
  Index nMax = 64, trials = 1000;
  std::uint64_t seed = 1;
  std::string dump = "topk_check_failure.txt";
};

int cmd_check(const CheckArgs& a) {
  if (a.nMax < 2) throw ArgumentError("--n-max must be >= 2");
  if (a.nMax > 256) throw ArgumentError("--n-max must be <= 256 (oracle limit)");
  if (a.trials < 1) throw ArgumentError("--trials must be >= 1");

  static const double kTauR[] = {-8, -4, -2, -1, -0.5, -0.1, 0, 0.1, 0.5, 0.9, 0.99, 0.999};
  std::mt19937_64 rng(a.seed);
  auto uniform = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  auto pick = [&](Index lo, Index hi) { return lo + Index(rng() % std::uint64_t(hi - lo + 1)); };

  Index passed = 0, failed = 0;
  std::ofstream dump;
  for (Index t = 0; t < a.trials; ++t) {
    const Index n = pick(2, a.nMax);
    const Index k = pick(1, n);
    std::vector<double> x(static_cast<std::size_t>(n));
    const bool ties = t % 4 == 3;  // every fourth instance draws from a few integers
    for (double& v : x) v = ties ? double(pick(0, 4)) : uniform();
    const double tauR = kTauR[pick(0, 11)];
    const auto s = sort_desc(x);
    const double r = tauR * top_k_sum_sorted(s.values, k);
    if (top_k_sum_sorted(s.values, k) <= r) {
      ++passed;  // positive budget fraction on all-zero data; nothing to compare
      continue;
    }

    std::string why;
    bool ok = true;
    ProjectionResult ref;
    try {
      ref = oracle_project_exhaustive(s.values, k, r);
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("oracle: ") + e.what();
    }
    for (Method m : {Method::ESGS, Method::PLCP, Method::GRID}) {
      if (!ok) break;
      ProjectionResult res;
      try {
        res = project_sorted(s.values, k, r, m);
      } catch (const std::exception& e) {
        ok = false;
        why = std::string(method_name(m)) + " threw: " + e.what();
        break;
      }
#ifdef TOPK_INJECT_FAULT
      if (m == Method::PLCP) res.x[0] += 1e-6;
#endif
      double diff = 0.0;
      for (Index i = 0; i < n; ++i) diff = std::max(diff, std::fabs(res.x[i] - ref.x[i]));
      if (diff > 1e-10) {
        ok = false;
        why = std::string(method_name(m)) + " differs from the oracle by " + g(diff);
      } else if (!oracle_kkt_verify(s.values, res, k, r, 1e-10, &why)) {
        ok = false;
        why = std::string(method_name(m)) + " fails KKT verification: " + why;
      } else if (!dense_lcp_check(s.values, k, r, res, 1e-9, &why)) {
        ok = false;
        why = std::string(method_name(m)) + " fails the dense LCP check: " + why;
      }
    }
    if (ok) {
      ++passed;
      continue;
    }
    ++failed;
    if (!dump.is_open()) dump.open(a.dump, std::ios::trunc);
    dump << "trial " << t << ": " << why << "\nn=" << n << " k=" << k << " r=" << g(r) << "\nx0=";
    for (double v : x) dump << ' ' << g(v);
    dump << "\n\n";
  }
  std::printf("check: %lld passed, %lld failed (n <= %lld, seed %llu)\n",
              static_cast<long long>(passed), static_cast<long long>(failed),
              static_cast<long long>(a.nMax), static_cast<unsigned long long>(a.seed));
  if (failed > 0) {
    std::fprintf(stderr, "failing instances written to %s\n", a.dump.c_str());
    return 3;
  }
  return 0;
}

struct BenchArgs {
  std::vector<Index> n{1000};
  std::vector<double> tauR, tauKComp;
  std::vector<std::string> methods{"esgs", "plcp", "grid"};
  Index reps = 3, jobs = 1;
  std::uint64_t seed = 0;
  std::optional<double> timeLimit;
  std::string format = "csv", output, sortMode = "presorted";
  std::optional<std::string> dumpDir;
  bool noWarmup = false;
};

int cmd_bench(const BenchArgs& a) {
  ExperimentSpec spec;
  spec.nList = a.n;
  if (!a.tauR.empty()) spec.tauR = a.tauR;
  if (!a.tauKComp.empty()) spec.tauKComp = a.tauKComp;
  spec.methods.clear();
  for (const auto& m : a.methods) spec.methods.push_back(parse_method(m));
  spec.reps = a.reps;
  spec.jobs = a.jobs;
  spec.seed = a.seed;
  spec.timeLimitSeconds = a.timeLimit;
  spec.sortMode = parse_sort_mode(a.sortMode);
  spec.dumpDir = a.dumpDir;
  spec.warmup = !a.noWarmup;
  const ResultFormat fmt = parse_result_format(a.format);
  spec.validate();

  const auto out = run_experiment(spec);
  emit_results(out.records, fmt, a.output);

  std::printf("%-6s %9s %8s %8s %10s %12s %12s %12s %s\n", "method", "n", "k", "tau_r", "tau_k_c",
              "median_s", "mean_s", "std_s", "timeouts");
  for (const auto& s : summarize(out.records))
    std::printf("%-6s %9lld %8lld %8g %10g %12.4e %12.4e %12.4e %lld\n",
                std::string(method_name(s.method)).c_str(), static_cast<long long>(s.n),
                static_cast<long long>(s.k), s.tauR, s.tauKComp, s.median, s.mean, s.stddev,
                static_cast<long long>(s.timedOut));
  for (const auto& issue : out.issues) std::fprintf(stderr, "FAILED: %s\n", issue.c_str());
  return out.failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact projection onto the top-k-sum and vector-k-norm constraint sets"};
  app.require_subcommand(1);

  ProjectArgs pa;
  auto* project = app.add_subcommand("project", "Project one vector");
  project->add_option("--input", pa.input, "Vector file (.txt or .f64)")->required();
  project->add_option("--k", pa.k, "Number of largest entries in the budget")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* rOpt = project->add_option("--r", pa.r, "Budget");
  auto* tOpt = project->add_option("--tau-r", pa.tauR, "Budget as a fraction of top-k-sum(x)");
  rOpt->excludes(tOpt);
  tOpt->excludes(rOpt);
  project->add_option("--method", pa.method, "esgs, plcp or grid")
      ->check(CLI::IsMember({"esgs", "plcp", "grid"}));
  project->add_option("--partial-sort", pa.partialL, "Sort only the top L entries first")
      ->check(CLI::PositiveNumber);
  project->add_option("--output", pa.output, "Write the solution here");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Cross-check all engines against the exhaustive oracle");
  check->add_option("--n-max", ca.nMax, "Largest instance size");
  check->add_option("--trials", ca.trials, "Number of random instances");
  check->add_option("--seed", ca.seed, "Random seed");
  check->add_option("--dump", ca.dump, "Where failing instances are written");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the timing grid");
  bench->add_option("--n", ba.n, "Comma-separated sizes")->delimiter(',');
  bench->add_option("--tau-r", ba.tauR, "Budget fractions")->delimiter(',');
  bench->add_option("--tau-k-comp", ba.tauKComp, "k as a fraction of n")->delimiter(',');
  bench->add_option("--methods", ba.methods, "Subset of esgs,plcp,grid")->delimiter(',');
  bench->add_option("--reps", ba.reps, "Repetitions per cell");
  bench->add_option("--seed", ba.seed, "Random seed");
  bench->add_option("--time-limit", ba.timeLimit, "GRID budget per cell, seconds");
  bench->add_option("--format", ba.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--output", ba.output, "Results file")->required();
  bench->add_option("--jobs", ba.jobs, "Worker threads (cells run in parallel)");
  bench->add_option("--sort-mode", ba.sortMode, "presorted, unsorted or partial")
      ->check(CLI::IsMember({"presorted", "unsorted", "partial"}));
  bench->add_option("--dump-instances", ba.dumpDir, "Write every instance into this directory");
  bench->add_flag("--no-warmup", ba.noWarmup, "Do not discard a warm-up repetition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*project) {
      if (!pa.r && !pa.tauR) throw ArgumentError("one of --r or --tau-r is required");
      return cmd_project(pa);
    }
    if (*check) return cmd_check(ca);
    if (*bench) return cmd_bench(ba);
  } catch (const ArgumentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 1;
  } catch (const InvariantError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 4;
  }
  return 2;
}

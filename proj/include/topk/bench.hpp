#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topk/core.hpp"

namespace topk {

enum class SortMode { Presorted, Unsorted, Partial };
enum class ResultFormat { Csv, Json };

SortMode parse_sort_mode(std::string_view s);
std::string_view sort_mode_name(SortMode m);
ResultFormat parse_result_format(std::string_view s);

// The benchmark grid of the experiments: every combination of n, tau_r and
// tau_k^c is a cell; each cell runs `reps` fresh instances through each method.
struct ExperimentSpec {
  std::vector<Index> nList{1000};
  std::vector<double> tauR{-8, -4, -2, -1, -0.5, -0.1, 0, 0.1, 0.5, 0.9, 0.99, 0.999};
  std::vector<double> tauKComp{1e-4, 1e-3, 1e-2, 5e-2, 1e-1, 0.5, 0.9, 0.99, 0.999, 0.9999};
  Index reps = 3;
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::ESGS, Method::PLCP, Method::GRID};
  SortMode sortMode = SortMode::Presorted;
  std::optional<double> timeLimitSeconds;  // per-cell budget for GRID
  bool warmup = true;                      // one discarded rep per cell
  Index jobs = 1;
  double agreeTol = 1e-10;                 // relative to max(1, |x0|_inf)
  double feasTol = 1e-9;                   // relative to max(1, |r|)
  std::optional<std::string> dumpDir;      // write each instance as .f64 plus a manifest

  void validate() const;
};

struct BenchRecord {
  Method method = Method::ESGS;
  Index n = 0, k = 0;
  double tauR = 0.0, tauKComp = 0.0;
  Index rep = 0;
  double solveSeconds = 0.0, sortSeconds = 0.0;
  Index iterations = 0, k0 = 0, k1 = 0;  // all -1 when the solve timed out
  double feasResidual = 0.0;             // max(0, top-k-sum(x) - r)

  bool timedOut() const { return iterations < 0; }
  bool operator==(const BenchRecord&) const = default;
};

struct ExperimentOutcome {
  std::vector<BenchRecord> records;
  bool failed = false;
  std::vector<std::string> issues;
};

// k = max(1, floor(tau_k^c * n)), with a relative 1e-12 nudge so products
// like 0.05 * 1e6 land on the intended integer.
Index derive_k(Index n, double tauKComp);

// x0 ~ U[0,1)^n from std::mt19937_64(seed), each draw mapped as
// (u >> 11) * 2^-53.  r = tau_r * top-k-sum(x0).
ProjectionInstance generate_instance(Index n, double tauR, double tauKComp, std::uint64_t seed);
void generate_into(ProjectionInstance& inst, Index n, double tauR, double tauKComp,
                   std::uint64_t seed);

// Seed for one (cell, rep); independent of scheduling.  rep = -1 is the warm-up.
std::uint64_t instance_seed(std::uint64_t seed, Index cell, Index rep);

ExperimentOutcome run_experiment(const ExperimentSpec& spec);

std::string render_results(const std::vector<BenchRecord>& records, ResultFormat format);
void emit_results(const std::vector<BenchRecord>& records, ResultFormat format,
                  const std::string& path);
std::vector<BenchRecord> parse_results(const std::string& text, ResultFormat format);
std::vector<BenchRecord> load_results(const std::string& path);  // format from extension

struct CellSummary {
  Method method = Method::ESGS;
  Index n = 0, k = 0;
  double tauR = 0.0, tauKComp = 0.0;
  Index count = 0, timedOut = 0;
  double median = 0.0, mean = 0.0, stddev = 0.0;  // solve seconds over completed reps
  double meanIterations = 0.0;
};

std::vector<CellSummary> summarize(const std::vector<BenchRecord>& records);

}  // namespace topk

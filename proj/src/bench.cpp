#include "topk/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "topk/esgs.hpp"
#include "topk/ext.hpp"
#include "topk/grid.hpp"
#include "topk/plcp.hpp"
#include "topk/vector_io.hpp"

namespace topk {

using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

SortMode parse_sort_mode(std::string_view s) {
  if (s == "presorted") return SortMode::Presorted;
  if (s == "unsorted") return SortMode::Unsorted;
  if (s == "partial") return SortMode::Partial;
  throw ArgumentError("unknown sort mode '" + std::string(s) + "'");
}

std::string_view sort_mode_name(SortMode m) {
  switch (m) {
    case SortMode::Presorted: return "presorted";
    case SortMode::Unsorted: return "unsorted";
    case SortMode::Partial: return "partial";
  }
  return "?";
}

ResultFormat parse_result_format(std::string_view s) {
  if (s == "csv") return ResultFormat::Csv;
  if (s == "json") return ResultFormat::Json;
  throw ArgumentError("unknown result format '" + std::string(s) + "'");
}

void ExperimentSpec::validate() const {
  if (nList.empty() || tauR.empty() || tauKComp.empty() || methods.empty())
    throw ArgumentError("experiment grid has an empty axis");
  if (reps < 1) throw ArgumentError("reps must be >= 1");
  if (jobs < 1) throw ArgumentError("jobs must be >= 1");
  for (Index n : nList)
    if (n < 1) throw ArgumentError("n must be >= 1");
  for (double t : tauKComp)
    if (!(t > 0.0 && t <= 1.0)) throw ArgumentError("tau_k_comp must lie in (0, 1]");
  for (double t : tauR)
    if (!std::isfinite(t)) throw ArgumentError("tau_r must be finite");
  for (Method m : methods)
    if (m == Method::TRIVIAL) throw ArgumentError("trivial is not a benchmark method");
  if (timeLimitSeconds && !(*timeLimitSeconds > 0.0)) throw ArgumentError("time limit must be > 0");
}

Index derive_k(Index n, double tauKComp) {
  const auto k = static_cast<Index>(std::floor(tauKComp * double(n) * (1.0 + 1e-12)));
  return std::clamp<Index>(k, 1, n);
}

std::uint64_t instance_seed(std::uint64_t seed, Index cell, Index rep) {
  return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(cell))) +
                    static_cast<std::uint64_t>(rep + 1));
}

void generate_into(ProjectionInstance& inst, Index n, double tauR, double tauKComp,
                   std::uint64_t seed) {
  if (n < 1) throw ArgumentError("generate_instance: n must be >= 1");
  std::mt19937_64 rng(seed);
  inst.x0.resize(static_cast<std::size_t>(n));
  for (double& v : inst.x0) v = double(rng() >> 11) * 0x1.0p-53;
  inst.k = derive_k(n, tauKComp);
  inst.r = tauR * top_k_sum(inst.x0, inst.k);
}

ProjectionInstance generate_instance(Index n, double tauR, double tauKComp, std::uint64_t seed) {
  ProjectionInstance inst;
  generate_into(inst, n, tauR, tauKComp, seed);
  return inst;
}

namespace {

struct Cell {
  Index index, n;
  double tauR, tauKComp;
};

// Solves a presorted instance, reusing out.x.
void solve_sorted(Method m, std::span<const double> values, Index k, double r, ProjectionResult& out,
                  std::optional<Clock::time_point> deadline) {
  const auto n = static_cast<Index>(values.size());
  if (k == 1 || k == n || top_k_sum_sorted(values, k) <= r) {
    out = project_sorted(values, k, r, m);
    return;
  }
  switch (m) {
    case Method::ESGS: project_sorted_esgs(values, k, r, out); return;
    case Method::PLCP: project_sorted_plcp(values, k, r, out); return;
    case Method::GRID: {
      GridOptions opt;
      opt.deadline = deadline;
      project_sorted_grid(values, k, r, out, opt);
      return;
    }
    case Method::TRIVIAL: break;
  }
  throw ArgumentError("bad method");
}

struct CellResult {
  std::vector<BenchRecord> records;
  std::vector<std::string> issues;
};

CellResult run_cell(const ExperimentSpec& spec, const Cell& cell) {
  CellResult res;
  ProjectionInstance inst;
  std::vector<double> unpermuted;
  std::vector<std::vector<double>> solutions(spec.methods.size());
  ProjectionResult out;
  double gridSpent = 0.0;
  bool gridExpired = false;

  const Index firstRep = spec.warmup ? -1 : 0;
  for (Index rep = firstRep; rep < spec.reps; ++rep) {
    generate_into(inst, cell.n, cell.tauR, cell.tauKComp, instance_seed(spec.seed, cell.index, rep));
    const Index n = cell.n, k = inst.k;
    const double r = inst.r;

    if (spec.dumpDir && rep >= 0) {
      namespace fs = std::filesystem;
      fs::create_directories(*spec.dumpDir);
      char name[128];
      std::snprintf(name, sizeof name, "cell%lld_rep%lld.f64", static_cast<long long>(cell.index),
                    static_cast<long long>(rep));
      write_vector((fs::path(*spec.dumpDir) / name).string(), inst.x0);
      static std::mutex manifestMutex;
      std::lock_guard lock(manifestMutex);
      std::ofstream man(fs::path(*spec.dumpDir) / "manifest.csv", std::ios::app);
      char line[256];
      std::snprintf(line, sizeof line, "%s,%lld,%lld,%.17g\n", name, static_cast<long long>(n),
                    static_cast<long long>(k), r);
      man << line;
    }

    SortedView sorted;
    double sortSeconds = 0.0;
    if (spec.sortMode != SortMode::Partial) {
      const auto t0 = Clock::now();
      sorted = sort_desc(inst.x0);
      sortSeconds = seconds(Clock::now() - t0);
    }

    Index reference = -1;
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const Method m = spec.methods[mi];
      BenchRecord rec;
      rec.method = m;
      rec.n = n;
      rec.k = k;
      rec.tauR = cell.tauR;
      rec.tauKComp = cell.tauKComp;
      rec.rep = rep;
      rec.sortSeconds = sortSeconds;

      std::optional<Clock::time_point> deadline;
      if (m == Method::GRID && spec.timeLimitSeconds) {
        const double left = *spec.timeLimitSeconds - gridSpent;
        if (gridExpired || left <= 0.0) gridExpired = true;
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(std::max(left, 0.0)));
      }

      bool timedOut = gridExpired && m == Method::GRID;
      std::span<const double> x;
      if (!timedOut) {
        const auto tStart = Clock::now();
        try {
          if (spec.sortMode == SortMode::Partial) {
            auto po = project_partial_sort(inst, {k, 0}, m);
            out = std::move(po.result);
            rec.sortSeconds = po.sortSeconds;
            rec.solveSeconds = po.solveSeconds;
          } else {
            const auto t0 = Clock::now();
            solve_sorted(m, sorted.values, k, r, out, deadline);
            if (spec.sortMode == SortMode::Unsorted) {
              unpermuted.resize(out.x.size());
              for (Index i = 0; i < n; ++i) unpermuted[sorted.perm[i]] = out.x[i];
            }
            rec.solveSeconds = seconds(Clock::now() - t0);
          }
        } catch (const DeadlineExceeded&) {
          timedOut = true;
          gridExpired = true;
        }
        if (m == Method::GRID) gridSpent += seconds(Clock::now() - tStart);
      }
      if (timedOut) {
        rec.iterations = rec.k0 = rec.k1 = -1;
        rec.solveSeconds = 0.0;
        rec.feasResidual = 0.0;
        if (rep >= 0) res.records.push_back(rec);
        continue;
      }

      x = spec.sortMode == SortMode::Unsorted ? std::span<const double>(unpermuted)
                                              : std::span<const double>(out.x);
      const double T = spec.sortMode == SortMode::Presorted ? top_k_sum_sorted(x, k) : top_k_sum(x, k);
      rec.feasResidual = std::max(0.0, T - r);
      rec.iterations = out.iterations;
      rec.k0 = out.k0;
      rec.k1 = out.k1;

      if (rep >= 0) {
        char buf[256];
        if (rec.feasResidual > spec.feasTol * std::max(1.0, std::fabs(r))) {
          std::snprintf(buf, sizeof buf, "%s n=%lld k=%lld tau_r=%g rep=%lld: feasibility residual %.3g",
                        std::string(method_name(m)).c_str(), static_cast<long long>(n),
                        static_cast<long long>(k), cell.tauR, static_cast<long long>(rep),
                        rec.feasResidual);
          res.issues.emplace_back(buf);
        }
        solutions[mi].assign(x.begin(), x.end());
        if (reference < 0) {
          reference = static_cast<Index>(mi);
        } else {
          double scale = 1.0, diff = 0.0;
          for (double v : inst.x0) scale = std::max(scale, std::fabs(v));
          const auto& ref = solutions[reference];
          for (Index i = 0; i < n; ++i) diff = std::max(diff, std::fabs(ref[i] - x[i]));
          if (diff > spec.agreeTol * scale) {
            std::snprintf(buf, sizeof buf, "%s vs %s n=%lld k=%lld tau_r=%g rep=%lld: max diff %.3g",
                          std::string(method_name(m)).c_str(),
                          std::string(method_name(spec.methods[reference])).c_str(),
                          static_cast<long long>(n), static_cast<long long>(k), cell.tauR,
                          static_cast<long long>(rep), diff);
            res.issues.emplace_back(buf);
          }
        }
        res.records.push_back(rec);
      }
    }
  }
  return res;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<Cell> cells;
  for (Index n : spec.nList)
    for (double tr : spec.tauR)
      for (double tk : spec.tauKComp)
        cells.push_back({static_cast<Index>(cells.size()), n, tr, tk});

  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr firstError;
  std::mutex errMutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cells.size()) return;
      try {
        results[c] = run_cell(spec, cells[c]);
      } catch (...) {
        std::lock_guard lock(errMutex);
        if (!firstError) firstError = std::current_exception();
      }
    }
  };
  const auto jobs = static_cast<std::size_t>(std::min<Index>(spec.jobs, Index(cells.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (firstError) std::rethrow_exception(firstError);

  ExperimentOutcome out;
  for (auto& r : results) {
    out.records.insert(out.records.end(), r.records.begin(), r.records.end());
    out.issues.insert(out.issues.end(), r.issues.begin(), r.issues.end());
  }
  out.failed = !out.issues.empty();
  return out;
}

std::vector<CellSummary> summarize(const std::vector<BenchRecord>& records) {
  std::vector<CellSummary> out;
  std::vector<std::vector<double>> times;
  std::vector<double> iterSums;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CellSummary& s) {
      return s.method == r.method && s.n == r.n && s.k == r.k && s.tauR == r.tauR &&
             s.tauKComp == r.tauKComp;
    });
    if (it == out.end()) {
      CellSummary s;
      s.method = r.method;
      s.n = r.n;
      s.k = r.k;
      s.tauR = r.tauR;
      s.tauKComp = r.tauKComp;
      out.push_back(s);
      times.emplace_back();
      iterSums.push_back(0.0);
      it = out.end() - 1;
    }
    const auto idx = static_cast<std::size_t>(it - out.begin());
    if (r.timedOut()) {
      ++it->timedOut;
      continue;
    }
    ++it->count;
    times[idx].push_back(r.solveSeconds);
    iterSums[idx] += double(r.iterations);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& t = times[i];
    if (t.empty()) continue;
    std::sort(t.begin(), t.end());
    const std::size_t c = t.size();
    out[i].median = c % 2 ? t[c / 2] : 0.5 * (t[c / 2 - 1] + t[c / 2]);
    double mean = 0.0;
    for (double v : t) mean += v;
    mean /= double(c);
    double var = 0.0;
    for (double v : t) var += (v - mean) * (v - mean);
    out[i].mean = mean;
    out[i].stddev = c > 1 ? std::sqrt(var / double(c - 1)) : 0.0;
    out[i].meanIterations = iterSums[i] / double(c);
  }
  return out;
}

}  // namespace topk

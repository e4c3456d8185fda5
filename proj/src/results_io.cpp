#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "topk/bench.hpp"

namespace topk {

namespace {

constexpr const char* kHeader =
    "method,n,k,tau_r,tau_k_comp,rep,solve_seconds,sort_seconds,iterations,k0,k1,feas_residual";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw IoError("malformed number '" + s + "'");
  return v;
}

Index parse_index(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw IoError("malformed integer '" + s + "'");
  return static_cast<Index>(v);
}

}  // namespace

std::string render_results(const std::vector<BenchRecord>& records, ResultFormat format) {
  if (records.empty()) throw ArgumentError("no records to emit");
  if (format == ResultFormat::Csv) {
    std::string out = std::string(kHeader) + "\n";
    for (const auto& r : records) {
      out += std::string(method_name(r.method)) + "," + std::to_string(r.n) + "," +
             std::to_string(r.k) + "," + fmt_double(r.tauR) + "," + fmt_double(r.tauKComp) + "," +
             std::to_string(r.rep) + "," + fmt_double(r.solveSeconds) + "," +
             fmt_double(r.sortSeconds) + "," + std::to_string(r.iterations) + "," +
             std::to_string(r.k0) + "," + std::to_string(r.k1) + "," + fmt_double(r.feasResidual) +
             "\n";
    }
    return out;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"method", method_name(r.method)},
                   {"n", r.n},
                   {"k", r.k},
                   {"tau_r", r.tauR},
                   {"tau_k_comp", r.tauKComp},
                   {"rep", r.rep},
                   {"solve_seconds", r.solveSeconds},
                   {"sort_seconds", r.sortSeconds},
                   {"iterations", r.iterations},
                   {"k0", r.k0},
                   {"k1", r.k1},
                   {"feas_residual", r.feasResidual}});
  }
  return arr.dump(1) + "\n";
}

void emit_results(const std::vector<BenchRecord>& records, ResultFormat format,
                  const std::string& path) {
  const std::string text = render_results(records, format);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path);
  os << text;
  if (!os) throw IoError("write failed: " + path);
}

std::vector<BenchRecord> parse_results(const std::string& text, ResultFormat format) {
  std::vector<BenchRecord> out;
  if (format == ResultFormat::Csv) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader) throw IoError("missing or unexpected CSV header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) f.push_back(cell);
      if (f.size() != 12) throw IoError("CSV row has " + std::to_string(f.size()) + " fields");
      BenchRecord r;
      r.method = parse_method(f[0]);
      r.n = parse_index(f[1]);
      r.k = parse_index(f[2]);
      r.tauR = parse_double(f[3]);
      r.tauKComp = parse_double(f[4]);
      r.rep = parse_index(f[5]);
      r.solveSeconds = parse_double(f[6]);
      r.sortSeconds = parse_double(f[7]);
      r.iterations = parse_index(f[8]);
      r.k0 = parse_index(f[9]);
      r.k1 = parse_index(f[10]);
      r.feasResidual = parse_double(f[11]);
      out.push_back(r);
    }
    return out;
  }
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
  if (!arr.is_array()) throw IoError("JSON results must be an array");
  try {
    for (const auto& o : arr) {
      BenchRecord r;
      r.method = parse_method(o.at("method").get<std::string>());
      r.n = o.at("n").get<Index>();
      r.k = o.at("k").get<Index>();
      r.tauR = o.at("tau_r").get<double>();
      r.tauKComp = o.at("tau_k_comp").get<double>();
      r.rep = o.at("rep").get<Index>();
      r.solveSeconds = o.at("solve_seconds").get<double>();
      r.sortSeconds = o.at("sort_seconds").get<double>();
      r.iterations = o.at("iterations").get<Index>();
      r.k0 = o.at("k0").get<Index>();
      r.k1 = o.at("k1").get<Index>();
      r.feasResidual = o.at("feas_residual").get<double>();
      out.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed JSON record: ") + e.what());
  }
  return out;
}

std::vector<BenchRecord> load_results(const std::string& path) {
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_results(ss.str(), json ? ResultFormat::Json : ResultFormat::Csv);
}

}  // namespace topk

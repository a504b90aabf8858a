// Copyright 2026 The qknit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything below talks to the library through the
// public C API only.

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qknit/qknit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitGrouped = 4;
constexpr int kExitMismatch = 5;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct StringGuard {
  char* ptr = nullptr;
  ~StringGuard() { qknit_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct CircuitGuard {
  qknit_circuit* ptr = nullptr;
  ~CircuitGuard() { qknit_circuit_free(ptr); }
};

struct GraphGuard {
  qknit_graph* ptr = nullptr;
  ~GraphGuard() { qknit_graph_free(ptr); }
};

struct SolutionGuard {
  qknit_solution* ptr = nullptr;
  ~SolutionGuard() { qknit_solution_free(ptr); }
};

[[noreturn]] void fail(const std::string& stage, qknit_status status) {
  std::cerr << "qknit: " << stage << " failed (status " << status
            << "): " << qknit_last_error() << "\n";
  std::exit(status == QKNIT_ERR_INFEASIBLE ? kExitInfeasible : kExitError);
}

qknit_status load_circuit(const std::string& in_file, const std::string& gen,
                          qknit_circuit** out, std::string& stage) {
  if (!gen.empty()) {
    stage = "generate";
    return qknit_circuit_generate(gen.c_str(), out);
  }
  stage = "parse";
  const std::string text = slurp(in_file);
  const bool qasm = in_file.size() >= 5 &&
                    in_file.compare(in_file.size() - 5, 5, ".qasm") == 0;
  return qasm ? qknit_circuit_from_qasm(text.c_str(), out)
              : qknit_circuit_from_json(text.c_str(), out);
}

// Shared problem flags between `partition` and `bench`.
struct ProblemFlags {
  std::string in_file;
  std::string gen;
  uint32_t partitions = 2;
  uint32_t max_qubits = 0;
  double reduce_factor = 0;
  double ancilla_frac = 0;
  double budget_shots = 0;
  double freq_hz = 0;
  double runtime_s = 0;
  int64_t base_shots = 8000;
  bool wire_only = false;
  bool gate_only = false;
  bool no_cc = false;
  bool no_ancilla = false;
  std::string objective = "samples";
  std::string solver = "internal";
  std::string solver_path;
  bool incremental = false;
  double time_limit = 0;
  int64_t max_cuts = 0;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& flags, bool with_input) {
  if (with_input) {
    cmd->add_option("--in", flags.in_file, "circuit file (.json or .qasm)");
    cmd->add_option("--gen", flags.gen,
                    "generator spec: ghz:N | qaoa:N,FRAC,SEED,LAYERS[,crz] | "
                    "hea:N,LAYERS,SEED | bridge:L,M,KW,KV");
    cmd->add_option("--partitions", flags.partitions, "number of partitions")
        ->default_val(2);
    cmd->add_option("--max-qubits", flags.max_qubits,
                    "qubit cap per partition");
    cmd->add_option("--reduce-factor", flags.reduce_factor,
                    "cap = ceil(width / factor * (1 + ancilla-frac))");
    cmd->add_option("--ancilla-frac", flags.ancilla_frac,
                    "extra ancilla headroom fraction");
  }
  cmd->add_option("--budget-shots", flags.budget_shots,
                  "total sample budget (overrides --freq/--runtime)");
  cmd->add_option("--freq", flags.freq_hz, "sampling frequency in Hz");
  cmd->add_option("--runtime", flags.runtime_s, "runtime budget in seconds");
  cmd->add_option("--base-shots", flags.base_shots,
                  "measurements per configuration")
      ->default_val(8000);
  cmd->add_flag("--wire-only", flags.wire_only,
                "prior-work baseline: wire cuts at 16^k, no grouping");
  cmd->add_flag("--gate-only", flags.gate_only, "forbid wire cuts");
  cmd->add_flag("--no-cc", flags.no_cc, "no classical communication");
  cmd->add_flag("--no-ancilla", flags.no_ancilla, "no ancilla qubits");
  cmd->add_option("--objective", flags.objective, "samples | qubits")
      ->check(CLI::IsMember({"samples", "qubits"}))
      ->default_val("samples");
  cmd->add_option("--solver", flags.solver, "internal | external")
      ->check(CLI::IsMember({"internal", "external"}))
      ->default_val("internal");
  cmd->add_option("--solver-path", flags.solver_path,
                  "external solver executable (default $QKNIT_SMT_SOLVER)");
  cmd->add_flag("--incremental", flags.incremental,
                "keep one external solver process per minimize call");
  cmd->add_option("--time-limit", flags.time_limit, "solver limit in seconds");
  cmd->add_option("--max-cuts", flags.max_cuts, "cap on the number of cuts");
}

qknit_partition_opts opts_from_flags(const ProblemFlags& flags,
                                     uint32_t circuit_width) {
  qknit_partition_opts opts;
  qknit_partition_opts_init(&opts);
  opts.num_partitions = flags.partitions;
  if (flags.max_qubits > 0) {
    opts.max_qubits = flags.max_qubits;
  } else if (flags.reduce_factor > 0) {
    opts.max_qubits = static_cast<uint32_t>(
        std::ceil(circuit_width / flags.reduce_factor *
                  (1.0 + flags.ancilla_frac)));
  } else {
    opts.max_qubits = circuit_width;  // width itself caps a partition
  }
  if (flags.wire_only) {
    // Prior-work baseline: wire cuts priced without CC, grouping disabled.
    opts.mode = QKNIT_MODE_WIRE_ONLY;
    opts.cc_available = 0;
    opts.ancilla_available = 0;
  } else {
    opts.mode = flags.gate_only ? QKNIT_MODE_GATE_ONLY : QKNIT_MODE_COMBINED;
    opts.cc_available = flags.no_cc ? 0 : 1;
    opts.ancilla_available = flags.no_ancilla ? 0 : 1;
  }
  opts.objective = flags.objective == "qubits" ? QKNIT_OBJECTIVE_QUBITS
                                               : QKNIT_OBJECTIVE_SAMPLES;
  opts.solver = flags.solver == "external" ? QKNIT_SOLVER_EXTERNAL
                                           : QKNIT_SOLVER_INTERNAL;
  static std::string solver_path_storage;
  if (!flags.solver_path.empty()) {
    solver_path_storage = flags.solver_path;
    opts.solver_path = solver_path_storage.c_str();
  }
  opts.solver_incremental = flags.incremental ? 1 : 0;
  if (flags.time_limit > 0) opts.time_limit_seconds = flags.time_limit;
  opts.base_shots = flags.base_shots;
  if (flags.budget_shots > 0) {
    opts.total_samples = flags.budget_shots;
  } else if (flags.freq_hz > 0 && flags.runtime_s > 0) {
    opts.frequency_hz = flags.freq_hz;
    opts.runtime_seconds = flags.runtime_s;
  } else {
    // Default budget: one day at 1 MHz, roughly 1e11 samples.
    opts.frequency_hz = 1e6;
    opts.runtime_seconds = 86400.0;
  }
  if (flags.max_cuts > 0) opts.max_cuts = flags.max_cuts;
  return opts;
}

// ---------------------------------------------------------------------------
// partition
// ---------------------------------------------------------------------------

int run_partition(const ProblemFlags& flags, const std::string& smt2_out,
                  const std::string& dot_out, const std::string& report_out,
                  bool with_timings) {
  if (flags.in_file.empty() == flags.gen.empty()) {
    std::cerr << "qknit: need exactly one of --in or --gen\n";
    return kExitError;
  }
  CircuitGuard circuit;
  std::string stage;
  qknit_status status = load_circuit(flags.in_file, flags.gen, &circuit.ptr, stage);
  if (status != QKNIT_OK) fail(stage, status);

  const qknit_partition_opts opts =
      opts_from_flags(flags, qknit_circuit_num_qubits(circuit.ptr));

  if (!dot_out.empty()) {
    GraphGuard graph;
    status = qknit_graph_build(circuit.ptr, &graph.ptr);
    if (status != QKNIT_OK) fail("graph", status);
    StringGuard dot;
    status = qknit_graph_to_dot(graph.ptr, &dot.ptr);
    if (status != QKNIT_OK) fail("dot", status);
    spit(dot_out, dot.str());
  }
  if (!smt2_out.empty()) {
    StringGuard smt2;
    status = qknit_partition_smt2(circuit.ptr, &opts, &smt2.ptr);
    if (status != QKNIT_OK) fail("encode", status);
    spit(smt2_out, smt2.str());
  }

  SolutionGuard solution;
  status = qknit_partition(circuit.ptr, &opts, &solution.ptr);
  if (status == QKNIT_ERR_INFEASIBLE) {
    std::cerr << "qknit: infeasible: " << qknit_last_error() << "\n";
    return kExitInfeasible;
  }
  if (status != QKNIT_OK && status != QKNIT_ERR_TIMEOUT_INCUMBENT) {
    fail("solve", status);
  }

  StringGuard report;
  const qknit_status rstatus =
      qknit_solution_report(solution.ptr, with_timings ? 1 : 0, &report.ptr);
  if (rstatus != QKNIT_OK) fail("report", rstatus);
  if (!report_out.empty()) {
    spit(report_out, report.str());
  } else {
    std::cout << report.str();
  }
  if (status == QKNIT_ERR_TIMEOUT_INCUMBENT) {
    std::cerr << "qknit: time limit reached; solution is not proven optimal\n";
    return kExitTimeout;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const std::string& in_file, const std::string& gen,
               const std::string& solution_file, const std::string& observable) {
  CircuitGuard circuit;
  std::string stage;
  qknit_status status = load_circuit(in_file, gen, &circuit.ptr, stage);
  if (status != QKNIT_OK) fail(stage, status);

  const std::string report = slurp(solution_file);
  double knit = 0, direct = 0, deviation = 0;
  status = qknit_verify(circuit.ptr, report.c_str(), observable.c_str(), &knit,
                        &direct, &deviation);
  if (status == QKNIT_ERR_GROUPED_CUTS) {
    std::cerr << "qknit: " << qknit_last_error() << "\n";
    return kExitGrouped;
  }
  if (status == QKNIT_ERR_CORRUPT || status == QKNIT_ERR_PARSE) {
    std::cerr << "qknit: " << qknit_last_error() << "\n";
    return kExitMismatch;
  }
  if (status != QKNIT_OK) fail("verify", status);

  printf("knit        % .12f\n", knit);
  printf("direct      % .12f\n", direct);
  printf("deviation   %.3e\n", deviation);
  if (deviation > 1e-9) {
    std::cerr << "qknit: recombination deviates beyond 1e-9\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// budget
// ---------------------------------------------------------------------------

int run_budget(const std::vector<double>& freqs, const std::vector<double>& runtimes,
               const std::vector<std::string>& families, int64_t base_shots,
               bool as_json) {
  auto family_id = [](const std::string& name) -> int32_t {
    if (name == "bell" || name == "bell-group") return QKNIT_FAMILY_BELL_GROUP;
    if (name == "nine" || name == "9") return QKNIT_FAMILY_NINE_POW;
    if (name == "sixteen" || name == "16") return QKNIT_FAMILY_SIXTEEN_POW;
    throw std::runtime_error("unknown cost family " + name);
  };
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (!as_json) {
    printf("%14s %14s %12s %9s\n", "freq_hz", "runtime_s", "family", "max_cuts");
  }
  for (double f : freqs) {
    for (double r : runtimes) {
      for (const std::string& fam : families) {
        uint32_t cuts = 0;
        const qknit_status status =
            qknit_budget_max_cuts(f, r, base_shots, family_id(fam), &cuts);
        if (status != QKNIT_OK) fail("budget", status);
        if (as_json) {
          rows.push_back({{"frequency_hz", f},
                          {"runtime_seconds", r},
                          {"family", fam},
                          {"max_cuts", cuts}});
        } else {
          printf("%14.6g %14.6g %12s %9u\n", f, r, fam.c_str(), cuts);
        }
      }
    }
  }
  if (as_json) std::cout << rows.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchInstance {
  std::string name;
  std::string gen;
  double reduce_factor;
  double ancilla_frac;
  std::string mode;  // combined | wire-only
};

struct BenchRow {
  std::string name;
  std::string mode;
  double reduce_factor;
  double ancilla_frac;
  std::string feasible;  // yes | no | timeout | error
  double overhead = 0;
  uint32_t max_q = 0;
  uint32_t cuts = 0;
  double seconds = 0;
};

BenchRow bench_one(const BenchInstance& inst, const ProblemFlags& base_flags,
                   bool with_timings) {
  BenchRow row;
  row.name = inst.name;
  row.mode = inst.mode;
  row.reduce_factor = inst.reduce_factor;
  row.ancilla_frac = inst.ancilla_frac;

  ProblemFlags flags = base_flags;
  flags.gen = inst.gen;
  flags.in_file.clear();
  flags.reduce_factor = inst.reduce_factor;
  flags.ancilla_frac = inst.ancilla_frac;
  flags.max_qubits = 0;
  flags.wire_only = inst.mode == "wire-only";
  flags.gate_only = false;

  const auto start = std::chrono::steady_clock::now();
  CircuitGuard circuit;
  qknit_status status = qknit_circuit_generate(inst.gen.c_str(), &circuit.ptr);
  if (status != QKNIT_OK) {
    row.feasible = "error";
    return row;
  }
  const qknit_partition_opts opts =
      opts_from_flags(flags, qknit_circuit_num_qubits(circuit.ptr));
  SolutionGuard solution;
  status = qknit_partition(circuit.ptr, &opts, &solution.ptr);
  row.seconds = with_timings
                    ? std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count()
                    : 0.0;
  if (status == QKNIT_ERR_INFEASIBLE) {
    row.feasible = "no";
    return row;
  }
  if (status == QKNIT_ERR_TIMEOUT_INCUMBENT || status == QKNIT_ERR_TIMEOUT) {
    row.feasible = "timeout";
    return row;
  }
  if (status != QKNIT_OK) {
    row.feasible = "error";
    return row;
  }
  row.feasible = "yes";
  row.overhead = qknit_solution_overhead(solution.ptr);
  row.max_q = qknit_solution_max_qubits(solution.ptr);
  row.cuts = qknit_solution_num_cuts(solution.ptr);
  return row;
}

std::string format_double(double v) {
  char buf[64];
  snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int run_bench(const std::vector<std::string>& suites, uint32_t size_min,
              uint32_t size_max, const std::vector<double>& reduce_factors,
              const std::vector<double>& ancilla_fracs,
              const std::vector<std::string>& modes, uint64_t seed,
              uint32_t layers, const ProblemFlags& base_flags, uint32_t jobs,
              const std::string& csv_out, bool with_timings) {
  std::vector<BenchInstance> instances;
  for (const std::string& suite : suites) {
    for (uint32_t n = size_min; n <= size_max; ++n) {
      std::vector<std::pair<std::string, std::string>> gens;
      if (suite == "ghz") {
        gens.push_back({"ghz-" + std::to_string(n), "ghz:" + std::to_string(n)});
      } else if (suite == "qaoa") {
        for (double frac : {0.1, 0.3, 0.5}) {
          std::ostringstream name, gen;
          name << "qaoa-" << n << "-" << frac;
          gen << "qaoa:" << n << "," << frac << "," << seed << "," << layers;
          gens.push_back({name.str(), gen.str()});
        }
      } else if (suite == "hea") {
        std::ostringstream name, gen;
        name << "hea-" << n << "-" << layers;
        gen << "hea:" << n << "," << layers << "," << seed;
        gens.push_back({name.str(), gen.str()});
      } else if (suite == "bridge") {
        for (uint32_t kw : {1u, 2u, 3u}) {
          std::ostringstream name, gen;
          name << "bridge-" << kw << "-" << (n - size_min);
          gen << "bridge:2,2," << kw << "," << (n - size_min);
          gens.push_back({name.str(), gen.str()});
        }
      } else {
        std::cerr << "qknit: unknown suite " << suite << "\n";
        return kExitError;
      }
      for (const auto& [name, gen] : gens) {
        for (double d : reduce_factors) {
          for (double f : ancilla_fracs) {
            for (const std::string& mode : modes) {
              instances.push_back({name, gen, d, f, mode});
            }
          }
        }
      }
    }
  }

  std::vector<BenchRow> rows(instances.size());
  {
    std::mutex mu;
    size_t next = 0;
    auto worker = [&] {
      while (true) {
        size_t mine;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= instances.size()) return;
          mine = next++;
        }
        rows[mine] = bench_one(instances[mine], base_flags, with_timings);
      }
    };
    std::vector<std::thread> pool;
    const uint32_t n_threads = std::max(1u, jobs);
    for (uint32_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "name,mode,reduce_factor,ancilla_frac,feasible,overhead,max_qubits,"
         "cuts,time_s\n";
  for (const BenchRow& row : rows) {
    csv << row.name << ',' << row.mode << ',' << format_double(row.reduce_factor)
        << ',' << format_double(row.ancilla_frac) << ',' << row.feasible << ','
        << (row.feasible == "yes" ? format_double(row.overhead) : "") << ','
        << (row.feasible == "yes" ? std::to_string(row.max_q) : "") << ','
        << (row.feasible == "yes" ? std::to_string(row.cuts) : "") << ','
        << (with_timings ? format_double(row.seconds) : "") << "\n";
  }

  // Aggregates: infeasible fraction per mode and the mean combined/wire-only
  // overhead ratio across instances feasible in both modes.
  for (const std::string& mode : modes) {
    size_t total = 0, infeasible = 0;
    for (const BenchRow& row : rows) {
      if (row.mode != mode) continue;
      ++total;
      if (row.feasible == "no") ++infeasible;
    }
    if (total > 0) {
      csv << "# aggregate,mode=" << mode << ",infeasible_fraction="
          << format_double(static_cast<double>(infeasible) /
                           static_cast<double>(total))
          << "\n";
    }
  }
  if (std::count(modes.begin(), modes.end(), "combined") &&
      std::count(modes.begin(), modes.end(), "wire-only")) {
    double ratio_sum = 0;
    size_t ratio_count = 0;
    for (const BenchRow& a : rows) {
      if (a.mode != "combined" || a.feasible != "yes") continue;
      for (const BenchRow& b : rows) {
        if (b.mode == "wire-only" && b.feasible == "yes" && b.name == a.name &&
            b.reduce_factor == a.reduce_factor &&
            b.ancilla_frac == a.ancilla_frac) {
          ratio_sum += a.overhead / b.overhead;
          ++ratio_count;
        }
      }
    }
    if (ratio_count > 0) {
      csv << "# aggregate,mean_overhead_ratio_combined_vs_wire_only="
          << format_double(ratio_sum / static_cast<double>(ratio_count))
          << ",instances=" << ratio_count << "\n";
    }
  }

  if (csv_out.empty()) {
    std::cout << csv.str();
  } else {
    spit(csv_out, csv.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qknit: minimal-overhead quantum circuit partitioning"};
  app.require_subcommand(1);

  // partition
  ProblemFlags pflags;
  std::string smt2_out, dot_out, report_out;
  bool with_timings = false;
  CLI::App* partition =
      app.add_subcommand("partition", "solve a partitioning problem");
  add_problem_flags(partition, pflags, true);
  partition->add_option("--smt2-out", smt2_out, "write the SMT-LIB2 model");
  partition->add_option("--dot-out", dot_out, "write the cutting graph as DOT");
  partition->add_option("--report", report_out, "write the JSON report");
  partition->add_flag("--timings", with_timings,
                      "include wall-clock timings in the report");

  // verify
  std::string v_in, v_gen, v_solution, v_observable;
  CLI::App* verify = app.add_subcommand(
      "verify", "knit a solved cut set and compare with the uncut circuit");
  verify->add_option("--in", v_in, "circuit file (.json or .qasm)");
  verify->add_option("--gen", v_gen, "generator spec");
  verify->add_option("--solution", v_solution, "report JSON from partition")
      ->required();
  verify->add_option("--observable", v_observable, "Pauli string, e.g. ZZZZ")
      ->required();

  // budget
  std::vector<double> b_freqs{1e3, 1e6, 1e9};
  std::vector<double> b_runtimes{86400.0};
  std::vector<std::string> b_families{"bell", "nine", "sixteen"};
  int64_t b_base = 8000;
  bool b_json = false;
  CLI::App* budget =
      app.add_subcommand("budget", "max cuts per budget and cost family");
  budget->add_option("--freq", b_freqs, "sampling frequencies in Hz");
  budget->add_option("--runtime", b_runtimes, "runtimes in seconds");
  budget->add_option("--families", b_families, "bell | nine | sixteen");
  budget->add_option("--base-shots", b_base, "measurements per configuration");
  budget->add_flag("--json", b_json, "emit JSON instead of a table");

  // bench
  ProblemFlags bflags;
  std::vector<std::string> s_suites{"ghz"};
  uint32_t s_min = 4, s_max = 8;
  std::vector<double> s_factors{2.0};
  std::vector<double> s_fracs{0.3};
  std::vector<std::string> s_modes{"combined", "wire-only"};
  uint64_t s_seed = 1;
  uint32_t s_layers = 1;
  uint32_t s_jobs = 1;
  std::string s_csv;
  bool s_timings = false;
  CLI::App* bench = app.add_subcommand("bench", "sweep generated instances");
  bench->add_option("--suite", s_suites, "ghz | qaoa | hea | bridge");
  bench->add_option("--size-min", s_min, "smallest width")->default_val(4);
  bench->add_option("--size-max", s_max, "largest width")->default_val(8);
  bench->add_option("--reduce-factors", s_factors, "qubit reduction factors");
  bench->add_option("--ancilla-fracs", s_fracs, "ancilla headroom fractions");
  bench->add_option("--modes", s_modes, "combined | wire-only");
  bench->add_option("--seed", s_seed, "generator seed")->default_val(1);
  bench->add_option("--layers", s_layers, "ansatz layers")->default_val(1);
  bench->add_option("--jobs", s_jobs, "concurrent instances")->default_val(1);
  bench->add_option("--csv", s_csv, "write rows to this CSV file");
  bench->add_flag("--timings", s_timings, "fill the time_s column");
  add_problem_flags(bench, bflags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (partition->parsed()) {
      return run_partition(pflags, smt2_out, dot_out, report_out, with_timings);
    }
    if (verify->parsed()) {
      if (v_in.empty() == v_gen.empty()) {
        std::cerr << "qknit: need exactly one of --in or --gen\n";
        return kExitError;
      }
      return run_verify(v_in, v_gen, v_solution, v_observable);
    }
    if (budget->parsed()) {
      return run_budget(b_freqs, b_runtimes, b_families, b_base, b_json);
    }
    if (bench->parsed()) {
      return run_bench(s_suites, s_min, s_max, s_factors, s_fracs, s_modes,
                       s_seed, s_layers, bflags, s_jobs, s_csv, s_timings);
    }
  } catch (const std::exception& e) {
    std::cerr << "qknit: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

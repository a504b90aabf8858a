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

#include "qknit/qknit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "circuit.hpp"
#include "cutting_graph.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "knitting.hpp"
#include "partition_model.hpp"
#include "report.hpp"
#include "simulator.hpp"
#include "solvers.hpp"

struct qknit_circuit {
  qknit::Circuit circuit;
};

struct qknit_graph {
  qknit::Circuit circuit;  // owns a copy so the graph cannot dangle
  qknit::CuttingGraph graph;
};

struct qknit_solution {
  qknit::Circuit circuit;
  qknit::CuttingGraph graph;
  qknit::PartitionProblem problem;  // problem.graph points into this->graph
  qknit::PartitionSolution solution;
};

namespace {

thread_local std::string t_last_error;

qknit_status to_status(const qknit::Error& e) {
  using qknit::ErrorCode;
  switch (e.code()) {
    case ErrorCode::InvalidArgument: return QKNIT_ERR_INVALID_ARGUMENT;
    case ErrorCode::SchemaError:
    case ErrorCode::ParseError: return QKNIT_ERR_PARSE;
    case ErrorCode::InfeasibleTrivially: return QKNIT_ERR_INFEASIBLE;
    case ErrorCode::SolverCrashed:
    case ErrorCode::ModelParseError:
    case ErrorCode::InconsistentModel: return QKNIT_ERR_SOLVER;
    case ErrorCode::GroupedCutUnsupported: return QKNIT_ERR_GROUPED_CUTS;
    case ErrorCode::UnpricedCut:
    case ErrorCode::Unpriced: return QKNIT_ERR_UNPRICED_CUT;
    case ErrorCode::TooLarge:
    case ErrorCode::TooWide: return QKNIT_ERR_TOO_LARGE;
    default: return QKNIT_ERR_INTERNAL;
  }
}

template <typename Fn>
qknit_status guarded(Fn&& fn) {
  try {
    fn();
    return QKNIT_OK;
  } catch (const qknit::Error& e) {
    t_last_error = std::string(qknit::error_code_name(e.code())) + ": " + e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return QKNIT_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qknit::Circuit generate_from_spec(const std::string& spec) {
  const size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<std::string> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      const size_t comma = rest.find(',', pos);
      params.push_back(rest.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto need = [&](size_t lo, size_t hi) {
    if (params.size() < lo || params.size() > hi) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument,
                         "generator '" + name + "' takes " + std::to_string(lo) +
                             (hi > lo ? ".." + std::to_string(hi) : "") +
                             " parameters");
    }
  };
  auto num = [&](size_t i) -> double {
    try {
      return std::stod(params.at(i));
    } catch (const std::exception&) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument,
                         "bad generator parameter '" + params.at(i) + "'");
    }
  };

  if (name == "ghz") {
    need(1, 1);
    return qknit::generate_ghz(static_cast<uint32_t>(num(0)));
  }
  if (name == "qaoa") {
    need(4, 5);
    const bool crz = params.size() == 5 && params[4] == "crz";
    return qknit::generate_qaoa_maxcut(
        static_cast<uint32_t>(num(0)), num(1),
        static_cast<uint64_t>(num(2)), static_cast<uint32_t>(num(3)), crz);
  }
  if (name == "hea") {
    need(3, 3);
    return qknit::generate_hea(static_cast<uint32_t>(num(0)),
                               static_cast<uint32_t>(num(1)),
                               static_cast<uint64_t>(num(2)));
  }
  if (name == "bridge") {
    need(4, 4);
    qknit::BridgeSpec bridge;
    bridge.top_qubits = static_cast<uint32_t>(num(0));
    bridge.bottom_qubits = static_cast<uint32_t>(num(1));
    bridge.left_cnots = static_cast<uint32_t>(num(2));
    bridge.ladder_cnots = static_cast<uint32_t>(num(3));
    return qknit::generate_bridge(bridge);
  }
  throw qknit::Error(qknit::ErrorCode::InvalidArgument,
                     "unknown generator '" + name + "'");
}

qknit::PartitionProblem problem_from_opts(const qknit::CuttingGraph& graph,
                                          const qknit_partition_opts& opts) {
  qknit::PartitionProblem problem;
  problem.graph = &graph;
  problem.num_partitions = opts.num_partitions;
  problem.max_qubits_per_partition = opts.max_qubits;
  problem.resources.cc_available = opts.cc_available != 0;
  problem.resources.ancilla_available = opts.ancilla_available != 0;
  switch (opts.mode) {
    case QKNIT_MODE_COMBINED: problem.allowed = qknit::AllowedCutKinds::all(); break;
    case QKNIT_MODE_WIRE_ONLY:
      problem.allowed = qknit::AllowedCutKinds::wire_only();
      break;
    case QKNIT_MODE_GATE_ONLY:
      problem.allowed = qknit::AllowedCutKinds::gate_only();
      break;
    default:
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "bad mode");
  }
  problem.objective = opts.objective == QKNIT_OBJECTIVE_QUBITS
                          ? qknit::Objective::MinMaxQubits
                          : qknit::Objective::MinSamples;
  const int64_t base = opts.base_shots > 0 ? opts.base_shots : 8000;
  if (opts.total_samples > 0) {
    qknit::Budget budget;
    budget.base_shots = base;
    budget.sampling_frequency_hz = opts.total_samples;
    budget.runtime_seconds = 1.0;
    problem.budget = budget;
  } else if (opts.frequency_hz > 0 && opts.runtime_seconds > 0) {
    qknit::Budget budget;
    budget.base_shots = base;
    budget.sampling_frequency_hz = opts.frequency_hz;
    budget.runtime_seconds = opts.runtime_seconds;
    problem.budget = budget;
  }
  if (opts.max_cuts > 0) {
    problem.max_cuts = static_cast<uint32_t>(opts.max_cuts);
  }
  return problem;
}

qknit::SolverBackend backend_from_opts(const qknit_partition_opts& opts) {
  if (opts.solver == QKNIT_SOLVER_EXTERNAL) {
    qknit::SolverBackend backend = qknit::SolverBackend::external(
        opts.solver_path ? opts.solver_path : "");
    backend.incremental = opts.solver_incremental != 0;
    if (opts.time_limit_seconds > 0) {
      backend.time_limit_seconds = opts.time_limit_seconds;
    }
    return backend;
  }
  qknit::SolverBackend backend = qknit::SolverBackend::internal();
  if (opts.time_limit_seconds > 0) {
    backend.time_limit_seconds = opts.time_limit_seconds;
  }
  return backend;
}

}  // namespace

extern "C" {

const char* qknit_last_error(void) { return t_last_error.c_str(); }

void qknit_string_free(char* text) { std::free(text); }

const char* qknit_version(void) { return "1.0.0"; }

qknit_status qknit_circuit_from_json(const char* text, qknit_circuit** out) {
  return guarded([&] {
    if (!text || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    *out = new qknit_circuit{qknit::parse_json(text)};
  });
}

qknit_status qknit_circuit_from_qasm(const char* text, qknit_circuit** out) {
  return guarded([&] {
    if (!text || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    *out = new qknit_circuit{qknit::parse_qasm2_subset(text)};
  });
}

qknit_status qknit_circuit_generate(const char* spec, qknit_circuit** out) {
  return guarded([&] {
    if (!spec || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    *out = new qknit_circuit{generate_from_spec(spec)};
  });
}

qknit_status qknit_circuit_to_json(const qknit_circuit* circuit, char** out) {
  return guarded([&] {
    if (!circuit || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    *out = dup_string(qknit::serialize_json(circuit->circuit));
  });
}

uint32_t qknit_circuit_num_qubits(const qknit_circuit* circuit) {
  return circuit ? circuit->circuit.num_qubits : 0;
}

uint32_t qknit_circuit_num_gates(const qknit_circuit* circuit) {
  return circuit ? static_cast<uint32_t>(circuit->circuit.gates.size()) : 0;
}

uint32_t qknit_circuit_num_two_qubit_gates(const qknit_circuit* circuit) {
  return circuit ? static_cast<uint32_t>(circuit->circuit.two_qubit_gate_count())
                 : 0;
}

void qknit_circuit_free(qknit_circuit* circuit) { delete circuit; }

qknit_status qknit_graph_build(const qknit_circuit* circuit, qknit_graph** out) {
  return guarded([&] {
    if (!circuit || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    auto* g = new qknit_graph{circuit->circuit, {}};
    try {
      g->graph = qknit::build_cutting_graph(g->circuit);
    } catch (...) {
      delete g;
      throw;
    }
    *out = g;
  });
}

uint32_t qknit_graph_num_vertices(const qknit_graph* graph) {
  return graph ? static_cast<uint32_t>(graph->graph.vertices.size()) : 0;
}

uint32_t qknit_graph_num_gate_edges(const qknit_graph* graph) {
  return graph ? static_cast<uint32_t>(graph->graph.gate_edge_count) : 0;
}

uint32_t qknit_graph_num_wire_edges(const qknit_graph* graph) {
  return graph ? static_cast<uint32_t>(graph->graph.wire_edge_count()) : 0;
}

qknit_status qknit_graph_to_dot(const qknit_graph* graph, char** out) {
  return guarded([&] {
    if (!graph || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    *out = dup_string(qknit::export_dot(graph->graph));
  });
}

void qknit_graph_free(qknit_graph* graph) { delete graph; }

void qknit_partition_opts_init(qknit_partition_opts* opts) {
  if (!opts) return;
  *opts = {};
  opts->num_partitions = 2;
  opts->max_qubits = 0;
  opts->mode = QKNIT_MODE_COMBINED;
  opts->cc_available = 1;
  opts->ancilla_available = 1;
  opts->objective = QKNIT_OBJECTIVE_SAMPLES;
  opts->solver = QKNIT_SOLVER_INTERNAL;
  opts->base_shots = 8000;
}

qknit_status qknit_partition(const qknit_circuit* circuit,
                             const qknit_partition_opts* opts,
                             qknit_solution** out) {
  if (!circuit || !opts || !out) {
    t_last_error = "null argument";
    return QKNIT_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  qknit_status timeout_status = QKNIT_OK;
  const qknit_status status = guarded([&] {
    auto holder = std::make_unique<qknit_solution>();
    holder->circuit = circuit->circuit;
    holder->graph = qknit::build_cutting_graph(holder->circuit);
    holder->problem = problem_from_opts(holder->graph, *opts);
    const qknit::SolverBackend backend = backend_from_opts(*opts);
    const qknit::MinimizeResult result = qknit::minimize(holder->problem, backend);
    switch (result.status) {
      case qknit::MinimizeResult::Optimal:
        holder->solution = *result.solution;
        *out = holder.release();
        break;
      case qknit::MinimizeResult::Unsat:
        throw qknit::Error(qknit::ErrorCode::InfeasibleTrivially,
                           "no partitioning satisfies the constraints");
      case qknit::MinimizeResult::TimeoutWithIncumbent:
        holder->solution = *result.solution;
        *out = holder.release();
        t_last_error = "time limit reached; returning the best incumbent";
        timeout_status = QKNIT_ERR_TIMEOUT_INCUMBENT;
        break;
      case qknit::MinimizeResult::TimeoutNoIncumbent:
        throw qknit::Error(qknit::ErrorCode::SolverCrashed,
                           "time limit reached before any solution");
    }
  });
  if (status != QKNIT_OK) return status;
  return timeout_status;
}

qknit_status qknit_partition_smt2(const qknit_circuit* circuit,
                                  const qknit_partition_opts* opts, char** out) {
  return guarded([&] {
    if (!circuit || !opts || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    const qknit::CuttingGraph graph = qknit::build_cutting_graph(circuit->circuit);
    const qknit::PartitionProblem problem = problem_from_opts(graph, *opts);
    *out = dup_string(qknit::emit_smtlib2(qknit::encode(problem)));
  });
}

double qknit_solution_overhead(const qknit_solution* solution) {
  return solution ? solution->solution.overhead : 0.0;
}

uint32_t qknit_solution_num_cuts(const qknit_solution* solution) {
  return solution ? static_cast<uint32_t>(solution->solution.cut_edges.size()) : 0;
}

uint32_t qknit_solution_num_grouped_cuts(const qknit_solution* solution) {
  return solution
             ? static_cast<uint32_t>(solution->solution.grouped_edges.size())
             : 0;
}

uint32_t qknit_solution_max_qubits(const qknit_solution* solution) {
  return solution ? solution->solution.max_qubits : 0;
}

int32_t qknit_solution_is_optimal(const qknit_solution* solution) {
  return solution && solution->solution.optimal ? 1 : 0;
}

qknit_status qknit_solution_report(const qknit_solution* solution,
                                   int32_t with_timings, char** out) {
  return guarded([&] {
    if (!solution || !out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    *out = dup_string(qknit::report_json(solution->circuit, solution->problem,
                                         solution->solution, with_timings != 0));
  });
}

void qknit_solution_free(qknit_solution* solution) { delete solution; }

qknit_status qknit_verify(const qknit_circuit* circuit, const char* report,
                          const char* observable, double* knit_value,
                          double* direct_value, double* deviation) {
  return guarded([&] {
    if (!circuit || !report || !observable) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    const qknit::Circuit& c = circuit->circuit;
    const qknit::CuttingGraph graph = qknit::build_cutting_graph(c);
    const qknit::PartitionSolution sol =
        qknit::solution_from_report(report, graph);
    qknit::PartitionProblem problem = qknit::problem_from_report(report, graph);

    if (!sol.grouped_edges.empty()) {
      throw qknit::Error(qknit::ErrorCode::GroupedCutUnsupported,
                         "grouped cuts are priced but not simulated");
    }
    // Structural self-consistency before simulating anything.
    const auto violations = qknit::validate_solution(problem, sol);
    if (!violations.empty()) {
      throw qknit::Error(qknit::ErrorCode::SchemaError,
                         "corrupted solution: " + violations.front());
    }
    // The recorded overhead must match the recomputed cut weights.
    {
      qknit::PartitionSolution recomputed = sol;
      qknit::finalize_solution(problem, recomputed);
      if (std::abs(recomputed.overhead - sol.overhead) >
          1e-9 * std::max(1.0, std::abs(recomputed.overhead))) {
        throw qknit::Error(qknit::ErrorCode::SchemaError,
                           "corrupted solution: recorded overhead disagrees "
                           "with its cut set");
      }
    }

    qknit::CutSelection selection;
    selection.vertex_partition = sol.vertex_partition;
    selection.cut_edges = sol.cut_edges;
    selection.num_partitions = problem.num_partitions;
    selection.idle_qubit_partition = sol.idle_qubit_partition;
    selection.cc_available = problem.resources.cc_available;

    const qknit::SubcircuitEnsemble ensemble =
        qknit::generate_subcircuits(c, graph, selection);
    const qknit::PauliString obs =
        qknit::PauliString::parse(observable, c.num_qubits);
    const double knit = qknit::knit_expectation(ensemble, obs);
    const double direct = qknit::expectation(c, obs);
    if (knit_value) *knit_value = knit;
    if (direct_value) *direct_value = direct;
    if (deviation) *deviation = std::abs(knit - direct);
  });
}

qknit_status qknit_budget_max_cuts(double frequency_hz, double runtime_seconds,
                                   int64_t base_shots, int32_t family,
                                   uint32_t* out) {
  return guarded([&] {
    if (!out) {
      throw qknit::Error(qknit::ErrorCode::InvalidArgument, "null argument");
    }
    qknit::Budget budget;
    budget.base_shots = base_shots > 0 ? base_shots : 8000;
    budget.sampling_frequency_hz = frequency_hz;
    budget.runtime_seconds = runtime_seconds;
    qknit::CostFamily f;
    switch (family) {
      case QKNIT_FAMILY_BELL_GROUP: f = qknit::CostFamily::BellGroup; break;
      case QKNIT_FAMILY_NINE_POW: f = qknit::CostFamily::NinePow; break;
      case QKNIT_FAMILY_SIXTEEN_POW: f = qknit::CostFamily::SixteenPow; break;
      default:
        throw qknit::Error(qknit::ErrorCode::InvalidArgument, "bad family");
    }
    *out = qknit::max_cuts_within_budget(budget, f);
  });
}

}  // extern "C"

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

#include "report.hpp"

#include <algorithm>

#include <json.hpp>

#include "error.hpp"

namespace qknit {

namespace {

using Json = nlohmann::ordered_json;

Json cut_to_json(const CuttingGraph& graph, uint32_t edge_id, bool grouped) {
  const CutEdge& e = graph.edges[edge_id];
  Json j;
  j["id"] = e.id;
  j["edge"] = {e.u, e.v};
  j["kind"] = e.kind == CutEdgeKind::Wire ? "wire" : "gate";
  j["grouped"] = grouped;
  if (e.kind == CutEdgeKind::Gate) {
    j["gate"] = graph.vertices[e.u].gate_index;
    j["gate_kind"] = gate_kind_name(e.gate_kind);
  } else {
    j["qubit"] = graph.vertices[e.u].qubit;
    j["after_gate"] = graph.vertices[e.u].gate_index;
    j["before_gate"] = graph.vertices[e.v].gate_index;
  }
  return j;
}

Json solution_to_json(const PartitionProblem& problem,
                      const PartitionSolution& sol) {
  const CuttingGraph& graph = *problem.graph;
  std::vector<bool> grouped(graph.edges.size(), false);
  for (uint32_t e : sol.grouped_edges) grouped[e] = true;

  Json j;
  j["partitions"] = sol.partition_qubits;
  j["cuts"] = Json::array();
  for (uint32_t e : sol.cut_edges) {
    j["cuts"].push_back(cut_to_json(graph, e, grouped[e]));
  }
  j["overhead"] = sol.overhead;
  j["log10_overhead_fp"] = sol.overhead_fp;
  j["Q"] = sol.qubit_counts;
  j["vertex_partition"] = sol.vertex_partition;
  j["idle_partition"] = sol.idle_qubit_partition;
  return j;
}

const char* objective_name(Objective objective) {
  return objective == Objective::MinSamples ? "samples" : "qubits";
}

}  // namespace

std::string report_json(const Circuit& circuit, const PartitionProblem& problem,
                        const PartitionSolution& sol, bool with_timings) {
  const CuttingGraph& graph = *problem.graph;
  std::vector<bool> grouped(graph.edges.size(), false);
  for (uint32_t e : sol.grouped_edges) grouped[e] = true;

  Json j;
  j["schema_version"] = 1;
  j["input"] = {{"qubits", circuit.num_qubits},
                {"clbits", circuit.num_clbits},
                {"gates", circuit.gates.size()},
                {"two_qubit_gates", circuit.two_qubit_gate_count()}};

  Json allowed = Json::array();
  if (problem.allowed.wire) allowed.push_back("wire");
  if (problem.allowed.cnot) allowed.push_back("cnot");
  if (problem.allowed.cz) allowed.push_back("cz");
  if (problem.allowed.swap) allowed.push_back("swap");
  if (problem.allowed.cr) allowed.push_back("cr");
  Json jp;
  jp["partitions"] = problem.num_partitions;
  jp["max_qubits"] = problem.max_qubits_per_partition;
  jp["cc"] = problem.resources.cc_available;
  jp["ancilla"] = problem.resources.ancilla_available;
  jp["allowed_kinds"] = allowed;
  jp["objective"] = objective_name(problem.objective);
  if (problem.budget) {
    jp["budget"] = {{"base_shots", problem.budget->base_shots},
                    {"frequency_hz", problem.budget->sampling_frequency_hz},
                    {"runtime_seconds", problem.budget->runtime_seconds},
                    {"max_total_samples", problem.budget->max_total_samples()},
                    {"max_overhead", problem.budget->max_overhead()}};
  } else {
    jp["budget"] = nullptr;
  }
  jp["max_cuts"] = problem.max_cuts ? Json(*problem.max_cuts) : Json(nullptr);
  jp["max_samples"] =
      problem.max_samples ? Json(*problem.max_samples) : Json(nullptr);
  j["problem"] = jp;

  j["solution"] = solution_to_json(problem, sol);

  Json individual = Json::array();
  for (uint32_t e : sol.cut_edges) {
    if (grouped[e]) continue;
    const CutKind kind = edge_cut_kind(graph, graph.edges[e]);
    individual.push_back(
        {{"id", e}, {"gamma_sq", gamma_sq(kind, problem.resources)}});
  }
  j["cost"] = {{"individual", individual},
               {"group",
                {{"count", sol.grouped_edges.size()},
                 {"cost", group_cost(static_cast<uint32_t>(sol.grouped_edges.size()),
                                     GroupClass::BellGroup)}}},
               {"total_overhead", sol.overhead},
               {"log10_overhead_fp", sol.overhead_fp},
               {"cr_cc_bound_non_tight", sol.cr_cc_bound_used},
               {"mixed_bell_group", sol.mixed_bell_group}};

  Json check;
  std::optional<double> bound;
  if (problem.budget) bound = problem.budget->max_overhead();
  if (problem.max_samples) {
    const double base = problem.budget ? problem.budget->base_shots : 8000;
    const double cap = *problem.max_samples / base;
    bound = bound ? std::min(*bound, cap) : cap;
  }
  check["active"] = bound.has_value();
  if (bound) {
    check["max_overhead"] = *bound;
    check["within"] = sol.overhead <= *bound * (1.0 + 1e-5);
  }
  j["budget_check"] = check;

  j["backend"] = {{"kind", sol.backend}, {"rounds", sol.solver_rounds}};
  j["optimal"] = sol.optimal;
  if (with_timings) {
    j["timings"] = {{"solve_seconds", sol.solve_seconds}};
  }
  return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::SchemaError, "corrupted report: " + what);
}

}  // namespace

PartitionSolution solution_from_report(const std::string& report_text,
                                       const CuttingGraph& graph) {
  Json root;
  try {
    root = Json::parse(report_text);
  } catch (const nlohmann::json::parse_error& e) {
    corrupt(std::string("not valid JSON: ") + e.what());
  }
  if (!root.contains("solution")) corrupt("missing solution");
  const Json& js = root["solution"];
  for (const char* field :
       {"partitions", "cuts", "overhead", "log10_overhead_fp", "Q",
        "vertex_partition"}) {
    if (!js.contains(field)) corrupt(std::string("missing solution.") + field);
  }

  PartitionSolution sol;
  sol.vertex_partition = js["vertex_partition"].get<std::vector<int>>();
  if (sol.vertex_partition.size() != graph.vertices.size()) {
    corrupt("vertex_partition does not match the circuit's cutting graph");
  }
  for (const Json& cut : js["cuts"]) {
    if (!cut.contains("id") || !cut["id"].is_number_unsigned()) {
      corrupt("cut without id");
    }
    const uint32_t id = cut["id"].get<uint32_t>();
    if (id >= graph.edges.size()) corrupt("cut id out of range");
    const CutEdge& e = graph.edges[id];
    const std::string kind = cut.value("kind", "");
    const bool is_wire = e.kind == CutEdgeKind::Wire;
    if (kind != (is_wire ? "wire" : "gate")) corrupt("cut kind mismatch");
    if (cut.contains("edge")) {
      const auto uv = cut["edge"].get<std::vector<uint32_t>>();
      if (uv.size() != 2 || uv[0] != e.u || uv[1] != e.v) {
        corrupt("cut endpoints mismatch");
      }
    }
    sol.cut_edges.push_back(id);
    if (cut.value("grouped", false)) sol.grouped_edges.push_back(id);
  }
  std::sort(sol.cut_edges.begin(), sol.cut_edges.end());
  std::sort(sol.grouped_edges.begin(), sol.grouped_edges.end());
  sol.qubit_counts = root["solution"]["Q"].get<std::vector<uint32_t>>();
  sol.overhead = js["overhead"].get<double>();
  sol.overhead_fp = js["log10_overhead_fp"].get<int64_t>();
  if (js.contains("idle_partition")) {
    sol.idle_qubit_partition = js["idle_partition"].get<std::vector<int>>();
  }
  sol.partition_qubits.clear();
  for (const Json& part : js["partitions"]) {
    sol.partition_qubits.push_back(part.get<std::vector<uint32_t>>());
  }
  sol.optimal = root.value("optimal", false);
  if (root.contains("backend") && root["backend"].contains("kind")) {
    sol.backend = root["backend"]["kind"].get<std::string>();
  }
  return sol;
}

PartitionProblem problem_from_report(const std::string& report_text,
                                     const CuttingGraph& graph) {
  Json root;
  try {
    root = Json::parse(report_text);
  } catch (const nlohmann::json::parse_error& e) {
    corrupt(std::string("not valid JSON: ") + e.what());
  }
  if (!root.contains("problem")) corrupt("missing problem");
  const Json& jp = root["problem"];

  PartitionProblem problem;
  problem.graph = &graph;
  problem.num_partitions = jp.value("partitions", 2u);
  problem.max_qubits_per_partition = jp.value("max_qubits", 0u);
  problem.resources.cc_available = jp.value("cc", false);
  problem.resources.ancilla_available = jp.value("ancilla", false);
  if (jp.contains("allowed_kinds")) {
    problem.allowed = {false, false, false, false, false};
    for (const Json& k : jp["allowed_kinds"]) {
      const std::string name = k.get<std::string>();
      if (name == "wire") problem.allowed.wire = true;
      if (name == "cnot") problem.allowed.cnot = true;
      if (name == "cz") problem.allowed.cz = true;
      if (name == "swap") problem.allowed.swap = true;
      if (name == "cr") problem.allowed.cr = true;
    }
  }
  problem.objective = jp.value("objective", "samples") == std::string("qubits")
                          ? Objective::MinMaxQubits
                          : Objective::MinSamples;
  if (jp.contains("budget") && !jp["budget"].is_null()) {
    Budget budget;
    budget.base_shots = jp["budget"].value("base_shots", int64_t{8000});
    budget.sampling_frequency_hz = jp["budget"].value("frequency_hz", 1e6);
    budget.runtime_seconds = jp["budget"].value("runtime_seconds", 86400.0);
    problem.budget = budget;
  }
  if (jp.contains("max_cuts") && !jp["max_cuts"].is_null()) {
    problem.max_cuts = jp["max_cuts"].get<uint32_t>();
  }
  if (jp.contains("max_samples") && !jp["max_samples"].is_null()) {
    problem.max_samples = jp["max_samples"].get<double>();
  }
  return problem;
}

}  // namespace qknit

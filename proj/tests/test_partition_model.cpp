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

#include <doctest.h>

#include <set>

#include "error.hpp"
#include "generators.hpp"
#include "partition_model.hpp"

using namespace qknit;

namespace {

PartitionProblem ghz4_problem(const CuttingGraph& graph) {
  PartitionProblem problem;
  problem.graph = &graph;
  problem.num_partitions = 2;
  problem.max_qubits_per_partition = 2;
  problem.resources = {false, false};
  return problem;
}

/// Builds a full solver model from a vertex assignment plus grouping flags,
/// with the integer layer filled in through the system's own evaluation.
Model model_from_assignment(const ConstraintSystem& sys,
                            const std::vector<int>& labels,
                            const std::set<uint32_t>& grouped = {}) {
  const CuttingGraph& graph = *sys.problem.graph;
  std::vector<bool> values(sys.num_vars, false);
  for (uint32_t v = 0; v < labels.size(); ++v) {
    values[sys.o_var(v, labels[v])] = true;
  }
  for (const CutEdge& e : graph.edges) {
    const bool cut = labels[e.u] != labels[e.v];
    values[sys.c_var(e.id)] = cut;
    values[sys.b_var(e.id)] = grouped.count(e.id) > 0;
  }
  const auto ints = sys.eval_ints(values);
  Model model;
  for (uint32_t i = 0; i < sys.num_vars; ++i) {
    model[sys.var_names[i]] = {true, values[i], 0};
  }
  for (uint32_t p = 0; p < sys.problem.num_partitions; ++p) {
    model["q_" + std::to_string(p)] = {false, false, ints.q[p]};
  }
  model["kb"] = {false, false, ints.kb};
  model["gb"] = {false, false, ints.gb};
  model["cost"] = {false, false, ints.cost};
  if (sys.minimize_qubits) {
    int64_t qmax = 0;
    for (int64_t q : ints.q) qmax = std::max(qmax, q);
    model["qmax"] = {false, false, qmax};
  }
  return model;
}

}  // namespace

TEST_CASE("encode declares the documented variable counts") {
  Circuit c;
  c.num_qubits = 2;
  c.gates.push_back(gate2(GateKind::CNOT, 0, 1));
  const CuttingGraph graph = build_cutting_graph(c);
  PartitionProblem problem;
  problem.graph = &graph;
  problem.num_partitions = 2;
  problem.max_qubits_per_partition = 2;
  const ConstraintSystem sys = encode(problem);
  CHECK(sys.num_vars == 4 + 1 + 1);  // 4 o, 1 c, 1 b
  const std::string text = emit_smtlib2(sys);
  CHECK(text.find("(declare-const o_0_0 Bool)") != std::string::npos);
  CHECK(text.find("(declare-const o_1_1 Bool)") != std::string::npos);
  CHECK(text.find("(declare-const c_0 Bool)") != std::string::npos);
  CHECK(text.find("(declare-const b_0 Bool)") != std::string::npos);
  CHECK(text.find("(declare-const cost Int)") != std::string::npos);
  CHECK(text.find("(set-logic QF_LIA)") == 0);
}

TEST_CASE("emission is byte-identical across runs") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph g1 = build_cutting_graph(ghz);
  const CuttingGraph g2 = build_cutting_graph(ghz);
  PartitionProblem p1 = ghz4_problem(g1);
  PartitionProblem p2 = ghz4_problem(g2);
  CHECK(emit_smtlib2(encode(p1)) == emit_smtlib2(encode(p2)));
}

TEST_CASE("wire-only mode pins every gate edge uncut") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.allowed = AllowedCutKinds::wire_only();
  problem.max_qubits_per_partition = 3;
  const ConstraintSystem sys = encode(problem);
  const std::string text = emit_smtlib2(sys);
  for (uint32_t e = 0; e < graph.gate_edge_count; ++e) {
    CHECK(text.find("(assert (not c_" + std::to_string(e) + "))") !=
          std::string::npos);
  }
  // Wire edges stay free.
  CHECK(text.find("(assert (not c_3))") == std::string::npos);
}

TEST_CASE("partition count bounds are enforced") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.num_partitions = 1;
  CHECK_THROWS_AS(encode(problem), Error);
  problem.num_partitions = 7;  // |V| = 6
  CHECK_THROWS_AS(encode(problem), Error);
  problem.num_partitions = 2;
  problem.max_qubits_per_partition = 0;
  CHECK_THROWS_AS(encode(problem), Error);
}

TEST_CASE("no cuttable edges on a connected graph is trivially infeasible") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.allowed = {false, false, false, false, false};
  CHECK_THROWS_WITH_AS(encode(problem), doctest::Contains("connected"), Error);
}

TEST_CASE("cut definition equivalence by brute force") {
  // All label assignments on a <= 8 vertex graph, 2 partitions: the encoded
  // c_e definition must hold exactly when the endpoint labels differ.
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.max_qubits_per_partition = 4;
  const ConstraintSystem sys = encode(problem);
  const uint32_t V = static_cast<uint32_t>(graph.vertices.size());

  for (uint32_t mask = 0; mask < (1u << V); ++mask) {
    std::vector<bool> values(sys.num_vars, false);
    std::vector<int> labels(V);
    for (uint32_t v = 0; v < V; ++v) {
      labels[v] = (mask >> v) & 1;
      values[sys.o_var(v, labels[v])] = true;
    }
    // Correct derivation satisfies every cut definition.
    for (const CutEdge& e : graph.edges) {
      values[sys.c_var(e.id)] = labels[e.u] != labels[e.v];
    }
    for (FormulaArena::Id id : sys.cut_definitions) {
      CHECK(sys.arena.eval(id, values));
    }
    // Flipping any single c must break exactly its own definition.
    for (const CutEdge& e : graph.edges) {
      values[sys.c_var(e.id)] = !values[sys.c_var(e.id)];
      CHECK_FALSE(sys.arena.eval(sys.cut_definitions[e.id], values));
      values[sys.c_var(e.id)] = !values[sys.c_var(e.id)];
    }
  }
}

TEST_CASE("decode recovers the gate-cut halving of ghz-4") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  const ConstraintSystem sys = encode(problem);
  const Model model = model_from_assignment(sys, {0, 0, 0, 1, 1, 1});
  const PartitionSolution sol = decode(sys, model);
  CHECK(sol.cut_edges == std::vector<uint32_t>{1});
  CHECK(sol.qubit_counts == std::vector<uint32_t>{2, 2});
  CHECK(sol.overhead == doctest::Approx(9.0));
  CHECK(sol.partition_qubits[0] == std::vector<uint32_t>{0, 1});
  CHECK(sol.partition_qubits[1] == std::vector<uint32_t>{2, 3});
  CHECK(validate_solution(problem, sol).empty());
}

TEST_CASE("decode accounts wire-cut ancillas to the successor partition") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.max_qubits_per_partition = 3;
  const ConstraintSystem sys = encode(problem);
  // Cut the wire on q2 between gates 1 and 2: vertices of gates 0,1 in
  // partition 0, gate 2 in partition 1.
  const Model model = model_from_assignment(sys, {0, 0, 0, 0, 1, 1});
  const PartitionSolution sol = decode(sys, model);
  REQUIRE(sol.cut_edges.size() == 1);
  CHECK(graph.edges[sol.cut_edges[0]].kind == CutEdgeKind::Wire);
  CHECK(sol.qubit_counts == std::vector<uint32_t>{3, 2});
  CHECK(sol.qubit_counts[0] + sol.qubit_counts[1] == 5);  // 4 + 1 ancilla
  CHECK(sol.overhead == doctest::Approx(16.0));  // no CC
  CHECK(validate_solution(problem, sol).empty());
}

TEST_CASE("decode rejects a model with inconsistent integers") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  const ConstraintSystem sys = encode(problem);
  Model model = model_from_assignment(sys, {0, 0, 0, 1, 1, 1});
  model["cost"].int_value += 1;
  CHECK_THROWS_AS(decode(sys, model), Error);
}

TEST_CASE("decode rejects a model whose c disagrees with the labels") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  const ConstraintSystem sys = encode(problem);
  Model model = model_from_assignment(sys, {0, 0, 0, 1, 1, 1});
  model["c_0"].bool_value = true;
  CHECK_THROWS_AS(decode(sys, model), Error);
}

TEST_CASE("validator flags tampered solutions") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.resources = {true, true};
  const ConstraintSystem sys = encode(problem);
  const PartitionSolution good =
      decode(sys, model_from_assignment(sys, {0, 0, 0, 1, 1, 1}));
  CHECK(validate_solution(problem, good).empty());

  PartitionSolution grouped_not_cut = good;
  grouped_not_cut.grouped_edges = {0};  // edge 0 is not cut
  bool found = false;
  for (const std::string& v : validate_solution(problem, grouped_not_cut)) {
    found |= v.find("b implies c") != std::string::npos;
  }
  CHECK(found);

  PartitionSolution bad_q = good;
  bad_q.qubit_counts[0] += 1;
  found = false;
  for (const std::string& v : validate_solution(problem, bad_q)) {
    found |= v.find("qubit count mismatch") != std::string::npos;
  }
  CHECK(found);

  PartitionSolution wrong_cuts = good;
  wrong_cuts.cut_edges = {0};
  CHECK_FALSE(validate_solution(problem, wrong_cuts).empty());
}

TEST_CASE("grouped cuts add one ancilla per touched partition") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  PartitionProblem problem = ghz4_problem(graph);
  problem.resources = {true, true};
  problem.max_qubits_per_partition = 3;
  const ConstraintSystem sys = encode(problem);
  const Model plain = model_from_assignment(sys, {0, 0, 0, 1, 1, 1});
  const Model grouped = model_from_assignment(sys, {0, 0, 0, 1, 1, 1}, {1});
  const PartitionSolution a = decode(sys, plain);
  const PartitionSolution b = decode(sys, grouped);
  CHECK(a.qubit_counts == std::vector<uint32_t>{2, 2});
  CHECK(b.qubit_counts == std::vector<uint32_t>{3, 3});
  CHECK(validate_solution(problem, b).empty());
}

TEST_CASE("idle qubits land in the emptiest partition") {
  Circuit c;
  c.num_qubits = 4;  // q2, q3 idle
  c.gates.push_back(gate2(GateKind::CNOT, 0, 1));
  const CuttingGraph graph = build_cutting_graph(c);
  PartitionProblem problem;
  problem.graph = &graph;
  problem.num_partitions = 2;
  problem.max_qubits_per_partition = 3;
  const ConstraintSystem sys = encode(problem);
  const PartitionSolution sol = decode(sys, model_from_assignment(sys, {0, 1}));
  CHECK(sol.qubit_counts == std::vector<uint32_t>{1, 1});
  // Both partitions have equal spare capacity: idles alternate 0, 1.
  CHECK(sol.partition_qubits[0] == std::vector<uint32_t>{0, 2});
  CHECK(sol.partition_qubits[1] == std::vector<uint32_t>{1, 3});
}

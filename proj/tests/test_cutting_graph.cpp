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

#include <map>
#include <sstream>

#include "cutting_graph.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "rng.hpp"

using namespace qknit;

namespace {

Circuit gate_list(uint32_t n, std::initializer_list<std::pair<uint32_t, uint32_t>> cnots) {
  Circuit c;
  c.num_qubits = n;
  for (auto [a, b] : cnots) c.gates.push_back(gate2(GateKind::CNOT, a, b));
  return c;
}

// Hand application of the construction: |W| = sum over qubits of
// max(0, gates_touching_qubit - 1).
size_t expected_wire_edges(const Circuit& c) {
  std::map<uint32_t, size_t> touches;
  for (const Gate& g : c.gates) {
    if (!g.is_two_qubit()) continue;
    ++touches[g.qubits[0]];
    ++touches[g.qubits[1]];
  }
  size_t total = 0;
  for (auto [q, t] : touches) total += t - 1;
  return total;
}

Circuit random_circuit(uint32_t n, uint32_t gates, uint64_t seed) {
  Rng rng(seed);
  Circuit c;
  c.num_qubits = n;
  for (uint32_t i = 0; i < gates; ++i) {
    const uint32_t a = static_cast<uint32_t>(rng.below(n));
    uint32_t b = static_cast<uint32_t>(rng.below(n - 1));
    if (b >= a) ++b;
    c.gates.push_back(gate2(GateKind::CNOT, a, b));
    if (rng.below(3) == 0) {
      c.gates.push_back(gate1(GateKind::H, a));
    }
  }
  return c;
}

}  // namespace

TEST_CASE("ghz-4 graph counts") {
  const Circuit c = generate_ghz(4);
  const CuttingGraph g = build_cutting_graph(c);
  CHECK(g.vertices.size() == 6);
  CHECK(g.gate_edge_count == 3);
  CHECK(g.wire_edge_count() == 2);
  CHECK(g.first_vertices.size() == 4);
}

TEST_CASE("single CNOT graph") {
  const CuttingGraph g = build_cutting_graph(gate_list(2, {{0, 1}}));
  CHECK(g.vertices.size() == 2);
  CHECK(g.gate_edge_count == 1);
  CHECK(g.wire_edge_count() == 0);
  CHECK(g.first_vertices.size() == 2);
}

TEST_CASE("four-gate example on four qubits") {
  // Gates (q0,q1),(q1,q2),(q2,q3),(q0,q1): |G| = 4 and, by the per-qubit
  // adjacency rule, |W| = 1 (q0) + 2 (q1) + 1 (q2) + 0 (q3) = 4.
  const Circuit c = gate_list(4, {{0, 1}, {1, 2}, {2, 3}, {0, 1}});
  const CuttingGraph g = build_cutting_graph(c);
  CHECK(g.gate_edge_count == 4);
  CHECK(g.wire_edge_count() == expected_wire_edges(c));
  CHECK(g.wire_edge_count() == 4);
  CHECK(g.vertices.size() == 8);
}

TEST_CASE("wire edges connect consecutive gates sharing a qubit") {
  const Circuit c = gate_list(3, {{0, 1}, {1, 2}});
  const CuttingGraph g = build_cutting_graph(c);
  REQUIRE(g.wire_edge_count() == 1);
  const CutEdge& w = g.edges[g.gate_edge_count];
  CHECK(g.vertices[w.u].qubit == 1);
  CHECK(g.vertices[w.v].qubit == 1);
  CHECK(g.vertices[w.u].gate_index == 0);
  CHECK(g.vertices[w.v].gate_index == 1);
}

TEST_CASE("single-qubit gates and measurements do not contribute") {
  Circuit c = generate_ghz(4);
  c.num_clbits = 1;
  c.gates.push_back(gate1(GateKind::H, 2));
  c.gates.push_back(measure_z(3, 0));
  const CuttingGraph g = build_cutting_graph(c);
  CHECK(g.vertices.size() == 6);
  CHECK(g.gate_edge_count == 3);
  CHECK(g.wire_edge_count() == 2);
}

TEST_CASE("idle qubits are tracked separately") {
  Circuit c = gate_list(4, {{0, 1}});
  const CuttingGraph g = build_cutting_graph(c);
  CHECK(g.idle_qubits == std::vector<uint32_t>{2, 3});
}

TEST_CASE("wire and gate edge counts match the formula on random circuits") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Circuit c = random_circuit(5, 8, seed);
    const CuttingGraph g = build_cutting_graph(c);
    CHECK(g.gate_edge_count == c.two_qubit_gate_count());
    CHECK(g.wire_edge_count() == expected_wire_edges(c));
    CHECK(g.vertices.size() == 2 * c.two_qubit_gate_count());

    // Wire edges form vertex-disjoint paths: at most one in, one out.
    std::vector<int> in(g.vertices.size(), 0), out(g.vertices.size(), 0);
    for (size_t e = g.gate_edge_count; e < g.edges.size(); ++e) {
      ++out[g.edges[e].u];
      ++in[g.edges[e].v];
    }
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      CHECK(in[v] <= 1);
      CHECK(out[v] <= 1);
    }
  }
}

TEST_CASE("dot export is deterministic with distinct edge styles") {
  const CuttingGraph single = build_cutting_graph(gate_list(2, {{0, 1}}));
  const std::string dot = export_dot(single);
  CHECK(dot.find("v0") != std::string::npos);
  CHECK(dot.find("v1") != std::string::npos);
  CHECK(dot.find("gate") != std::string::npos);
  CHECK(dot.find("wire") == std::string::npos);

  const Circuit ghz = generate_ghz(4);
  const CuttingGraph g1 = build_cutting_graph(ghz);
  const CuttingGraph g2 = build_cutting_graph(ghz);
  CHECK(export_dot(g1) == export_dot(g2));

  size_t nodes = 0, edges = 0;
  std::istringstream lines(export_dot(g1));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find(" -- ") != std::string::npos) ++edges;
    else if (line.find("[label=\"g") != std::string::npos) ++nodes;
  }
  CHECK(nodes == 6);
  CHECK(edges == 5);
}

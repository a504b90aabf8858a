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

#include <cmath>
#include <complex>

#include "error.hpp"
#include "generators.hpp"
#include "knitting.hpp"
#include "rng.hpp"
#include "simulator.hpp"

using namespace qknit;

namespace {

// Transfer check: prepare (alpha, beta) on the source, run the move circuit,
// read the target state in each branch.
double worst_move_infidelity(Amplitude alpha, Amplitude beta) {
  Circuit c = move_circuit();
  std::vector<Amplitude> initial(4, {0.0, 0.0});
  initial[0] = alpha;  // |00>
  initial[1] = beta;   // source is qubit 0
  double worst = 0.0;
  const auto branches = simulate_branches(c, &initial);
  for (const auto& branch : branches) {
    // Source collapsed to |m>; target amplitudes at indices m and m|2.
    const int m = branch.clbits[0];
    const Amplitude t0 = branch.state[m];
    const Amplitude t1 = branch.state[m | 2];
    const double norm = std::norm(t0) + std::norm(t1);
    const Amplitude overlap = std::conj(alpha) * t0 + std::conj(beta) * t1;
    worst = std::max(worst, 1.0 - std::norm(overlap) / norm);
  }
  return worst;
}

CutSelection ghz_middle_gate_cut(const CuttingGraph& graph) {
  // GHZ-4 vertices: gate1 owns v2,v3 (middle CNOT). Cut its gate edge.
  CutSelection sel;
  sel.num_partitions = 2;
  sel.vertex_partition = {0, 0, 0, 1, 1, 1};
  sel.cut_edges = {1};  // gate edge of the middle CNOT
  (void)graph;
  return sel;
}

}  // namespace

TEST_CASE("move circuit transfers basis and superposition states") {
  CHECK(worst_move_infidelity(1.0, 0.0) <= 1e-12);
  CHECK(worst_move_infidelity(0.0, 1.0) <= 1e-12);
  CHECK(worst_move_infidelity(std::sqrt(0.5), std::sqrt(0.5)) <= 1e-12);
}

TEST_CASE("move circuit is exact on 100 random states in both branches") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    Amplitude alpha{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
    Amplitude beta{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    CHECK(worst_move_infidelity(alpha, beta) <= 1e-10);
  }
}

TEST_CASE("cnot qpd validates with kappa 3") {
  for (bool cc : {false, true}) {
    const Qpd qpd = qpd_cnot(cc);
    CHECK(qpd.terms.size() == 6);
    CHECK(qpd.kappa() == doctest::Approx(3.0));
    const QpdValidation v = validate_qpd(qpd, GateKind::CNOT);
    CHECK(v.pass);
    CHECK(v.max_deviation <= 1e-10);
    CHECK(v.kappa == doctest::Approx(3.0));
  }
}

TEST_CASE("cz qpd validates with kappa 3") {
  const QpdValidation v = validate_qpd(qpd_cz(false), GateKind::CZ);
  CHECK(v.pass);
  CHECK(v.kappa == doctest::Approx(3.0));
}

TEST_CASE("identity qpd with a single unit term validates") {
  Qpd identity;
  identity.target = GateKind::CZ;  // label only
  identity.terms = {{1.0, {}, {}}};
  Mat4 eye{};
  for (int i = 0; i < 4; ++i) eye[i * 4 + i] = 1.0;
  const QpdValidation v = validate_qpd(identity, eye);
  CHECK(v.pass);
  CHECK(v.kappa == doctest::Approx(1.0));
}

TEST_CASE("a negated coefficient breaks channel equality") {
  Qpd broken = qpd_cnot(false);
  broken.terms[2].coeff = -broken.terms[2].coeff;
  const QpdValidation v = validate_qpd(broken, GateKind::CNOT);
  CHECK_FALSE(v.pass);
  CHECK(v.max_deviation > 0.1);
}

TEST_CASE("wrong target gate fails validation") {
  const QpdValidation v = validate_qpd(qpd_cnot(false), GateKind::CZ);
  CHECK_FALSE(v.pass);
}

TEST_CASE("no cuts yields the original circuit with weight one") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  CutSelection sel;
  sel.num_partitions = 1;
  sel.vertex_partition.assign(6, 0);
  const SubcircuitEnsemble ens = generate_subcircuits(ghz, graph, sel);
  REQUIRE(ens.entries.size() == 1);
  CHECK(ens.entries[0].weight == 1.0);
  CHECK(ens.normalization() == doctest::Approx(1.0));
  for (const char* pauli : {"ZZZZ", "XXXX", "ZIII"}) {
    const PauliString obs = PauliString::parse(pauli, 4);
    CHECK(knit_expectation(ens, obs) == doctest::Approx(expectation(ghz, obs)));
  }
}

TEST_CASE("ghz-4 single gate cut knits exactly") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  const SubcircuitEnsemble ens =
      generate_subcircuits(ghz, graph, ghz_middle_gate_cut(graph));
  CHECK(ens.entries.size() == 6);  // term count of the CNOT decomposition
  CHECK(ens.normalization() == doctest::Approx(3.0));
  // Partition widths stay (2, 2) for a gate cut.
  CHECK(ens.entries[0].parts[0].num_qubits == 2);
  CHECK(ens.entries[0].parts[1].num_qubits == 2);
  for (const char* pauli : {"ZZZZ", "XXXX", "IZZI", "ZIIZ"}) {
    const PauliString obs = PauliString::parse(pauli, 4);
    CHECK(knit_expectation(ens, obs) ==
          doctest::Approx(expectation(ghz, obs)).epsilon(1e-9));
  }
}

TEST_CASE("ghz-4 wire cut uses the move circuit and widths (3,2)") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  // Wire edge on q2 between gates 1 and 2 is edge id 4 (3 gate edges, then
  // wire q1 edge, then wire q2 edge).
  CutSelection sel;
  sel.num_partitions = 2;
  sel.vertex_partition = {0, 0, 0, 0, 1, 1};
  sel.cut_edges = {4};
  const SubcircuitEnsemble ens = generate_subcircuits(ghz, graph, sel);
  CHECK(ens.entries.size() == 6);
  CHECK(ens.normalization() == doctest::Approx(3.0));
  CHECK(ens.entries[0].parts[0].num_qubits == 3);
  CHECK(ens.entries[0].parts[1].num_qubits == 2);
  for (const char* pauli : {"ZZZZ", "XXXX", "IIZZ"}) {
    const PauliString obs = PauliString::parse(pauli, 4);
    CHECK(knit_expectation(ens, obs) ==
          doctest::Approx(expectation(ghz, obs)).epsilon(1e-9));
  }
}

TEST_CASE("subcircuits never contain cross-partition gates") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  for (uint32_t cut_edge : {1u, 4u}) {
    CutSelection sel;
    sel.num_partitions = 2;
    sel.vertex_partition = cut_edge == 1 ? std::vector<int>{0, 0, 0, 1, 1, 1}
                                         : std::vector<int>{0, 0, 0, 0, 1, 1};
    sel.cut_edges = {cut_edge};
    const SubcircuitEnsemble ens = generate_subcircuits(ghz, graph, sel);
    for (const SubcircuitEntry& entry : ens.entries) {
      for (const Circuit& part : entry.parts) {
        for (const Gate& g : part.gates) {
          CHECK(g.qubits.size() <= 2);
          for (uint32_t q : g.qubits) CHECK(q < part.num_qubits);
        }
      }
    }
  }
}

TEST_CASE("grouped or swap cuts are rejected") {
  Circuit c;
  c.num_qubits = 2;
  c.gates.push_back(gate2(GateKind::SWAP, 0, 1));
  const CuttingGraph graph = build_cutting_graph(c);
  CutSelection sel;
  sel.num_partitions = 2;
  sel.vertex_partition = {0, 1};
  sel.cut_edges = {0};
  CHECK_THROWS_AS(generate_subcircuits(c, graph, sel), Error);
}

TEST_CASE("two independent cuts: normalization is the kappa product") {
  // Chain of 3 CNOTs over 4 qubits; cut gate edges 0 and 2.
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  CutSelection sel;
  sel.num_partitions = 3;
  sel.vertex_partition = {0, 1, 1, 1, 1, 2};
  sel.cut_edges = {0, 2};
  const SubcircuitEnsemble ens = generate_subcircuits(ghz, graph, sel);
  CHECK(ens.entries.size() == 36);
  CHECK(ens.normalization() == doctest::Approx(9.0));
  for (const char* pauli : {"ZZZZ", "XXXX"}) {
    const PauliString obs = PauliString::parse(pauli, 4);
    CHECK(knit_expectation(ens, obs) ==
          doctest::Approx(expectation(ghz, obs)).epsilon(1e-9));
  }
}

TEST_CASE("sampled estimator converges roughly") {
  const Circuit ghz = generate_ghz(4);
  const CuttingGraph graph = build_cutting_graph(ghz);
  const SubcircuitEnsemble ens =
      generate_subcircuits(ghz, graph, ghz_middle_gate_cut(graph));
  const double estimate =
      knit_expectation_sampled(ens, PauliString::parse("ZZZZ", 4), 4000, 7);
  CHECK(std::abs(estimate - 1.0) < 0.2);
}

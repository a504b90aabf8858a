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

#ifndef QKNIT_CUTTING_GRAPH_HPP
#define QKNIT_CUTTING_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace qknit {

enum class CutEdgeKind { Gate, Wire };

/// One endpoint of a two-qubit gate.
struct CutVertex {
  uint32_t id;
  uint32_t gate_index;  // into Circuit.gates
  uint32_t qubit;
};

struct CutEdge {
  uint32_t id;          // unique across gate and wire edges
  uint32_t u, v;        // vertex ids; for wire edges u precedes v in time
  CutEdgeKind kind;
  GateKind gate_kind;   // the underlying gate (gate edges) or the gate of the
                        // earlier endpoint (wire edges; used for reporting)
};

/// Cutting graph of a circuit: one vertex per two-qubit-gate endpoint, a gate
/// edge per two-qubit gate and a wire edge per pair of consecutive two-qubit
/// gates sharing a qubit. Single-qubit gates, measurements and resets do not
/// participate.
struct CuttingGraph {
  const Circuit* circuit = nullptr;
  std::vector<CutVertex> vertices;
  std::vector<CutEdge> edges;            // gate edges first, then wire edges
  size_t gate_edge_count = 0;
  std::vector<uint32_t> first_vertices;  // set I: first vertex on each active qubit
  std::vector<uint32_t> idle_qubits;     // qubits with no two-qubit gate

  size_t wire_edge_count() const { return edges.size() - gate_edge_count; }
  const CutEdge& edge(uint32_t id) const { return edges[id]; }
};

CuttingGraph build_cutting_graph(const Circuit& circuit);

/// Deterministic Graphviz text; wire and gate edges are styled differently.
std::string export_dot(const CuttingGraph& graph);

}  // namespace qknit

#endif

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

#include "cutting_graph.hpp"

#include <sstream>

#include "error.hpp"

namespace qknit {

CuttingGraph build_cutting_graph(const Circuit& circuit) {
  CuttingGraph graph;
  graph.circuit = &circuit;

  // last_vertex[q]: most recent endpoint vertex on qubit q, or -1.
  std::vector<int64_t> last_vertex(circuit.num_qubits, -1);

  std::vector<CutEdge> wire_edges;
  for (uint32_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const Gate& g = circuit.gates[gi];
    if (g.qubits.size() > 2) {
      throw Error(ErrorCode::UnsupportedGate,
                  "gate " + std::to_string(gi) + " acts on more than 2 qubits");
    }
    if (!g.is_two_qubit()) continue;

    uint32_t base = static_cast<uint32_t>(graph.vertices.size());
    for (int side = 0; side < 2; ++side) {
      graph.vertices.push_back(CutVertex{base + static_cast<uint32_t>(side),
                                         gi, g.qubits[side]});
    }
    graph.edges.push_back(
        CutEdge{0, base, base + 1, CutEdgeKind::Gate, g.kind});

    for (int side = 0; side < 2; ++side) {
      const uint32_t q = g.qubits[side];
      const uint32_t vid = base + static_cast<uint32_t>(side);
      if (last_vertex[q] >= 0) {
        const uint32_t prev = static_cast<uint32_t>(last_vertex[q]);
        wire_edges.push_back(CutEdge{0, prev, vid, CutEdgeKind::Wire,
                                     circuit.gates[graph.vertices[prev].gate_index].kind});
      } else {
        graph.first_vertices.push_back(vid);
      }
      last_vertex[q] = vid;
    }
  }
  graph.gate_edge_count = graph.edges.size();
  graph.edges.insert(graph.edges.end(), wire_edges.begin(), wire_edges.end());
  for (uint32_t id = 0; id < graph.edges.size(); ++id) {
    graph.edges[id].id = id;
  }
  for (uint32_t q = 0; q < circuit.num_qubits; ++q) {
    if (last_vertex[q] < 0) graph.idle_qubits.push_back(q);
  }
  return graph;
}

std::string export_dot(const CuttingGraph& graph) {
  std::ostringstream out;
  out << "graph cutting_graph {\n";
  out << "  node [shape=circle];\n";
  for (const CutVertex& v : graph.vertices) {
    out << "  v" << v.id << " [label=\"g" << v.gate_index << ":q" << v.qubit
        << "\"];\n";
  }
  for (const CutEdge& e : graph.edges) {
    if (e.kind == CutEdgeKind::Gate) {
      out << "  v" << e.u << " -- v" << e.v
          << " [color=green,label=\"gate\"];\n";
    } else {
      out << "  v" << e.u << " -- v" << e.v
          << " [color=blue,label=\"wire\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace qknit

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

#ifndef QKNIT_GENERATORS_HPP
#define QKNIT_GENERATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "circuit.hpp"

namespace qknit {

/// Two dense blocks of L and M qubits joined by k_w CNOTs on one fixed qubit
/// pair followed by k_v boundary-crossing CNOTs separated by dense rounds.
struct BridgeSpec {
  uint32_t top_qubits = 2;      // L
  uint32_t bottom_qubits = 2;   // M
  uint32_t left_cnots = 1;      // k_w
  uint32_t ladder_cnots = 1;    // k_v
};

Circuit generate_ghz(uint32_t n);

/// QAOA max-cut ansatz on a random connected graph: a spanning tree plus
/// round(extra_edge_frac * n) distinct extra edges. Cost terms are emitted as
/// CNOT-RZ-CNOT by default or as a single CRZ when use_crz is set.
Circuit generate_qaoa_maxcut(uint32_t n, double extra_edge_frac, uint64_t seed,
                             uint32_t layers, bool use_crz = false);

/// The random edge set underlying generate_qaoa_maxcut, for count checks.
std::vector<std::pair<uint32_t, uint32_t>> qaoa_edge_set(uint32_t n,
                                                         double extra_edge_frac,
                                                         uint64_t seed);

Circuit generate_hea(uint32_t n, uint32_t layers, uint64_t seed);

Circuit generate_bridge(const BridgeSpec& spec);

}  // namespace qknit

#endif

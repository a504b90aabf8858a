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

#ifndef QKNIT_CIRCUIT_HPP
#define QKNIT_CIRCUIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qknit {

enum class GateKind {
  H,
  X,
  Z,
  S,
  Sdg,
  RZ,
  CNOT,
  CZ,
  SWAP,
  CRZ,
  MeasureZ,
  Reset,
};

const char* gate_kind_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(const std::string& name);
bool gate_kind_is_two_qubit(GateKind kind);
bool gate_kind_has_angle(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<uint32_t> qubits;
  double angle = 0.0;                                   // RZ / CRZ only
  std::optional<uint32_t> clbit;                        // MeasureZ target
  std::optional<std::pair<uint32_t, int>> condition;    // (clbit, value)

  bool is_two_qubit() const { return qubits.size() == 2; }
  bool operator==(const Gate& other) const;
};

Gate gate1(GateKind kind, uint32_t qubit);
Gate gate1(GateKind kind, uint32_t qubit, double angle);
Gate gate2(GateKind kind, uint32_t a, uint32_t b);
Gate gate2(GateKind kind, uint32_t a, uint32_t b, double angle);
Gate measure_z(uint32_t qubit, uint32_t clbit);

struct Circuit {
  uint32_t num_qubits = 0;
  uint32_t num_clbits = 0;
  std::vector<Gate> gates;

  size_t two_qubit_gate_count() const;
  bool operator==(const Circuit& other) const;
};

/// Checks all gate invariants; throws InvalidArgument on the first violation.
void validate_circuit(const Circuit& circuit);

/// Canonical JSON form; parse_json(serialize_json(c)) == c for valid circuits.
std::string serialize_json(const Circuit& circuit);
Circuit parse_json(const std::string& text);

/// OpenQASM 2 subset: one qreg, optional creg, gates
/// h/x/z/s/sdg/rz/cx/cz/swap/crz, measure. Everything else is a ParseError.
Circuit parse_qasm2_subset(const std::string& text);

}  // namespace qknit

#endif

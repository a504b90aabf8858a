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

#ifndef QKNIT_SIMULATOR_HPP
#define QKNIT_SIMULATOR_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace qknit {

using Amplitude = std::complex<double>;

constexpr uint32_t kMaxSimQubits = 20;

/// One measurement-outcome branch. States are kept unnormalized so that the
/// squared norm is the branch probability; a branch with every measurement
/// outcome enumerated deterministically replaces sampling.
struct SimBranch {
  std::vector<Amplitude> state;
  std::vector<int8_t> clbits;  // -1 = never written

  double probability() const;
};

/// Exact evolution with deterministic branch enumeration on measurements.
/// Qubit q maps to bit q of the basis index. `initial` defaults to |0...0>.
std::vector<SimBranch> simulate_branches(
    const Circuit& circuit, const std::vector<Amplitude>* initial = nullptr);

/// Pauli string over the circuit's qubits; ops[q] in {I, X, Y, Z}.
struct PauliString {
  std::string ops;

  static PauliString parse(const std::string& text, uint32_t num_qubits);
  bool is_identity() const;
};

/// <psi|O|psi> for an unnormalized state.
double pauli_expectation(const std::vector<Amplitude>& state,
                         const PauliString& obs);

/// Exact expectation value summed over measurement branches.
double expectation(const Circuit& circuit, const PauliString& obs);

}  // namespace qknit

#endif

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

#ifndef QKNIT_KNITTING_HPP
#define QKNIT_KNITTING_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "circuit.hpp"
#include "cutting_graph.hpp"
#include "simulator.hpp"

namespace qknit {

// ---------------------------------------------------------------------------
// Quasiprobability decompositions
// ---------------------------------------------------------------------------

/// One step of a local replacement fragment: a single-qubit gate or a
/// projective Z measurement whose outcome flips the estimator sign.
struct FragmentOp {
  enum Type { Gate, SignMeasure } type = Gate;
  GateKind gate = GateKind::H;

  static FragmentOp g(GateKind kind) { return {Gate, kind}; }
  static FragmentOp mz() { return {SignMeasure, GateKind::MeasureZ}; }
};

using Fragment = std::vector<FragmentOp>;

struct QpdTerm {
  double coeff;
  Fragment side_a;  // first endpoint of the gate
  Fragment side_b;  // second endpoint
};

struct Qpd {
  GateKind target;
  bool cc = false;
  std::vector<QpdTerm> terms;

  double kappa() const;
};

/// Local-operations decomposition of CNOT with kappa = 3: six terms with
/// coefficients +-1/2 built from S/Sdg rotations and signed Z measurements.
Qpd qpd_cnot(bool cc);
Qpd qpd_cz(bool cc);

using Mat4 = std::array<std::complex<double>, 16>;  // row-major 4x4

Mat4 gate_unitary4(GateKind kind, double angle = 0.0);

struct QpdValidation {
  bool pass = false;
  double max_deviation = 0.0;
  double kappa = 0.0;
};

/// Channel equality check on the 16 two-qubit Pauli basis inputs:
/// sum_i a_i F_i(P) must match U P U^dag within 1e-10 for every P.
QpdValidation validate_qpd(const Qpd& qpd, const Mat4& target);
QpdValidation validate_qpd(const Qpd& qpd, GateKind target_kind);

/// Bell measurement plus phase correction moving qubit 0's state onto the
/// fresh qubit 1 (one classical bit): CNOT; H; measure; conditional Z.
Circuit move_circuit();

// ---------------------------------------------------------------------------
// Subcircuit generation and recombination
// ---------------------------------------------------------------------------

/// A solved assignment restricted to what knitting needs: vertex labels and
/// the individually-cut edges.
struct CutSelection {
  std::vector<int> vertex_partition;  // per CuttingGraph vertex id
  std::vector<uint32_t> cut_edges;    // edge ids, individual cuts only
  uint32_t num_partitions = 0;
  std::vector<int> idle_qubit_partition;  // per CuttingGraph idle_qubits entry
  bool cc_available = true;
};

struct SubcircuitEntry {
  double weight;
  std::vector<Circuit> parts;        // one runnable circuit per partition
  Circuit combined;                  // disjoint union in global time order
  std::vector<uint32_t> sign_clbits; // measurement outcomes flipping the sign
};

struct SubcircuitEnsemble {
  std::vector<SubcircuitEntry> entries;
  uint32_t num_partitions = 0;
  std::vector<int> partition_of_qubit;    // combined qubit -> partition
  std::vector<uint32_t> final_carrier;    // original qubit -> combined qubit
  uint32_t combined_qubits = 0;
  uint32_t combined_clbits = 0;

  double normalization() const;  // sum |weight|
};

/// Cartesian product over the QPD terms of every cut. Wire cuts are realized
/// by splicing in the move circuit and gate-cutting its CNOT.
SubcircuitEnsemble generate_subcircuits(const Circuit& circuit,
                                        const CuttingGraph& graph,
                                        const CutSelection& selection);

/// Exact weighted recombination; equals expectation(circuit, obs) for valid
/// ensembles. `obs` addresses the original circuit's qubits.
double knit_expectation(const SubcircuitEnsemble& ensemble,
                        const PauliString& obs);

/// Monte-Carlo demonstration of the estimator (exact branch values, sampled
/// entries); carries no verification weight.
double knit_expectation_sampled(const SubcircuitEnsemble& ensemble,
                                const PauliString& obs, uint64_t shots,
                                uint64_t seed);

}  // namespace qknit

#endif

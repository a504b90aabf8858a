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

#ifndef QKNIT_COST_MODEL_HPP
#define QKNIT_COST_MODEL_HPP

#include <cstdint>
#include <vector>

#include "circuit.hpp"
#include "cutting_graph.hpp"

namespace qknit {

struct CutKind {
  enum Kind { Wire, GateCnot, GateCz, GateSwap, GateCr } kind;
  double angle = 0.0;  // GateCr only

  static CutKind wire() { return {Wire}; }
  static CutKind cnot() { return {GateCnot}; }
  static CutKind cz() { return {GateCz}; }
  static CutKind swap() { return {GateSwap}; }
  static CutKind cr(double angle) { return {GateCr, angle}; }
};

/// Resource context a cut is priced under.
struct CutResources {
  bool cc_available = false;
  bool ancilla_available = false;
};

enum class GroupClass { BellGroup, Swap, Cr };

/// Multiplicative sampling overhead of one individual cut under the given
/// resources; picks the cheapest realization the resources admit.
double gamma_sq(CutKind kind, CutResources res);

/// True when the CC price of this kind is only a literature upper bound
/// rather than a proven minimum (conditional rotations).
bool gamma_sq_is_upper_bound(CutKind kind, CutResources res);

/// Cost of k simultaneous cuts realized jointly: (2^{k+1}-1)^2 for the
/// Bell-pair group, 16^k for swaps, 4^k (upper bound) for CR. k = 0 costs 1.
double group_cost(uint32_t k, GroupClass group_class);

/// Only wire, CNOT and CZ cuts may join a Bell group.
bool group_eligible(CutKind kind);

struct CountedCut {
  CutKind kind;
  bool grouped = false;
};

/// Total overhead S: product of individual gamma^2 terms times the Bell-group
/// cost for the grouped subset.
double solution_overhead(const std::vector<CountedCut>& cuts, CutResources res);

struct Budget {
  int64_t base_shots = 8000;
  double sampling_frequency_hz = 1e6;
  double runtime_seconds = 86400.0;

  double max_total_samples() const {
    return sampling_frequency_hz * runtime_seconds;
  }
  double max_overhead() const {
    return max_total_samples() / static_cast<double>(base_shots);
  }
};

enum class CostFamily { BellGroup, NinePow, SixteenPow };

/// Largest k such that base_shots * family_cost(k) fits in the budget.
uint32_t max_cuts_within_budget(const Budget& budget, CostFamily family);

// Costs are carried as log10 fixed-point integers (scale 1e6) inside the
// encoders so the SMT model and the exact oracle share one arithmetic.
// Cut weights round up and budget bounds round down, which keeps every
// accepted solution inside the exact real budget.
constexpr int64_t kCostScale = 1000000;

int64_t cost_fp_ceil(double value);    // for per-cut weights
int64_t cost_fp_floor(double value);   // for budget bounds
double cost_fp_to_real(int64_t fp);    // 10^(fp / scale)

/// Edge weight in fixed point under the given resources.
int64_t edge_weight_fp(CutKind kind, CutResources res);

/// Fixed-point Bell-group cost table for k = 0..max_k.
std::vector<int64_t> group_cost_fp_table(uint32_t max_k);

/// Cut kind that prices a cutting-graph edge (resolves CR angles).
CutKind edge_cut_kind(const CuttingGraph& graph, const CutEdge& edge);

}  // namespace qknit

#endif

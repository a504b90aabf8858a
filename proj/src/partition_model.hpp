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

#ifndef QKNIT_PARTITION_MODEL_HPP
#define QKNIT_PARTITION_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cost_model.hpp"
#include "cutting_graph.hpp"

namespace qknit {

enum class Objective { MinSamples, MinMaxQubits };

struct AllowedCutKinds {
  bool wire = true;
  bool cnot = true;
  bool cz = true;
  bool swap = true;
  bool cr = true;

  static AllowedCutKinds all() { return {}; }
  static AllowedCutKinds wire_only() { return {true, false, false, false, false}; }
  static AllowedCutKinds gate_only() { return {false, true, true, true, true}; }

  bool admits(CutKind kind) const;
};

struct PartitionProblem {
  const CuttingGraph* graph = nullptr;
  uint32_t num_partitions = 2;
  uint32_t max_qubits_per_partition = 0;
  CutResources resources;
  AllowedCutKinds allowed;
  std::optional<Budget> budget;
  std::optional<double> max_samples;  // direct cap on total samples
  std::optional<uint32_t> max_cuts;
  Objective objective = Objective::MinSamples;
  // Fixed vertex-to-partition assignments. Pinning makes partition labels
  // distinguishable, so symmetry breaking switches off. Used to hold circuit
  // regions together, e.g. dense blocks that must not be split.
  std::vector<std::pair<uint32_t, int>> pinned_vertices;
};

struct PartitionSolution {
  std::vector<int> vertex_partition;
  std::vector<uint32_t> cut_edges;      // sorted edge ids
  std::vector<uint32_t> grouped_edges;  // sorted subset of cut_edges
  std::vector<uint32_t> qubit_counts;   // Q_p per partition
  std::vector<std::vector<uint32_t>> partition_qubits;  // original qubits
  std::vector<int> idle_qubit_partition;  // parallels graph.idle_qubits
  double overhead = 1.0;
  int64_t overhead_fp = 0;
  int64_t objective_value = 0;  // cost fp or max-qubits, per objective
  uint32_t max_qubits = 0;
  bool optimal = false;
  std::string backend;
  double solve_seconds = 0.0;
  uint32_t solver_rounds = 0;
  bool cr_cc_bound_used = false;   // some CR cut priced at its CC upper bound
  bool mixed_bell_group = false;   // group mixes wire and gate cuts
};

// ---------------------------------------------------------------------------
// Formula layer: a small evaluable AST, the same object the SMT text is
// printed from.
// ---------------------------------------------------------------------------

class FormulaArena {
 public:
  using Id = int32_t;
  enum class Kind { True, False, Var, Not, And, Or, Xor, Implies, Iff };

  Id constant(bool value);
  Id var(uint32_t index);
  Id lnot(Id a);
  Id land(std::vector<Id> args);
  Id lor(std::vector<Id> args);
  Id lxor(Id a, Id b);
  Id implies(Id a, Id b);
  Id iff(Id a, Id b);

  bool eval(Id id, const std::vector<bool>& values) const;
  void emit(Id id, std::string& out,
            const std::vector<std::string>& names) const;

 private:
  struct Node {
    Kind kind;
    uint32_t var = 0;
    std::vector<Id> args;
  };
  std::vector<Node> nodes_;
  Id add(Node node);
};

/// Linear pseudo-Boolean sum: sum of coeff * [condition].
struct IndicatorSum {
  struct Term {
    FormulaArena::Id cond;
    int64_t coeff;
  };
  std::vector<Term> terms;

  int64_t eval(const FormulaArena& arena, const std::vector<bool>& values) const;
};

struct ConstraintSystem {
  PartitionProblem problem;  // owning copy of parameters (graph aliased)

  // Variable ids: o variables first (vertex-major), then c per edge, then b.
  uint32_t num_vars = 0;
  std::vector<std::string> var_names;
  uint32_t o_var(uint32_t vertex, uint32_t partition) const;
  uint32_t c_var(uint32_t edge) const;
  uint32_t b_var(uint32_t edge) const;

  FormulaArena arena;
  std::vector<FormulaArena::Id> cut_definitions;     // c_e <-> labels differ
  std::vector<FormulaArena::Id> exactly_one;         // per-vertex assignment
  std::vector<FormulaArena::Id> group_implications;  // b_e -> c_e
  std::vector<FormulaArena::Id> forced;              // modes, symmetry, nonempty

  std::vector<IndicatorSum> qubit_count;  // Q_p per partition
  IndicatorSum group_size;                // kb
  IndicatorSum individual_cost;           // cost minus gb
  IndicatorSum cut_count;                 // for the max-cuts cap
  std::vector<int64_t> group_cost_chain;  // gb value per kb = 0..max

  std::vector<int64_t> edge_weight;   // w_e fixed point
  std::vector<bool> edge_cuttable;
  std::vector<bool> edge_groupable;
  std::optional<int64_t> budget_fp;   // W
  std::optional<uint32_t> max_cuts;
  bool minimize_qubits = false;
  bool require_nonempty = false;

  struct IntValues {
    std::vector<int64_t> q;
    int64_t kb = 0;
    int64_t gb = 0;
    int64_t cost = 0;
  };
  /// Recomputes the integer layer from a full Boolean assignment.
  IntValues eval_ints(const std::vector<bool>& values) const;
  /// True when every Boolean assertion holds under the assignment.
  bool eval_bool_assertions(const std::vector<bool>& values) const;
};

ConstraintSystem encode(const PartitionProblem& problem);

/// Deterministic SMT-LIB2 rendering of the system, check-sat and model
/// queries included; bound-tightening rounds append to this text.
std::string emit_smtlib2(const ConstraintSystem& system);

/// Solver model: maps every declared symbol to a Boolean or integer value.
struct ModelValue {
  bool is_bool = false;
  bool bool_value = false;
  int64_t int_value = 0;
};
using Model = std::map<std::string, ModelValue>;

/// Rebuilds a solution from a raw model, recomputing Q_p and the cost from
/// the o/c/b assignment and cross-checking the solver's integers.
PartitionSolution decode(const ConstraintSystem& system, const Model& model);

/// Independent checker; returns human-readable violations (empty = valid).
std::vector<std::string> validate_solution(const PartitionProblem& problem,
                                           const PartitionSolution& solution);

/// Shared helpers between decode, the exact solver and the validator.
std::vector<uint32_t> derive_cut_edges(const CuttingGraph& graph,
                                       const std::vector<int>& vertex_partition);
std::vector<uint32_t> compute_qubit_counts(const CuttingGraph& graph,
                                           const std::vector<int>& vertex_partition,
                                           uint32_t num_partitions,
                                           const std::vector<bool>& grouped);
int64_t solution_cost_fp(const ConstraintSystem& system,
                         const std::vector<uint32_t>& cut_edges,
                         const std::vector<uint32_t>& grouped_edges);
/// Populates partition_qubits/idle assignment/overhead fields from the core
/// assignment data already present in `solution`.
void finalize_solution(const PartitionProblem& problem,
                       PartitionSolution& solution);

}  // namespace qknit

#endif

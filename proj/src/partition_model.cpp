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

#include "partition_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace qknit {

bool AllowedCutKinds::admits(CutKind kind) const {
  switch (kind.kind) {
    case CutKind::Wire: return wire;
    case CutKind::GateCnot: return cnot;
    case CutKind::GateCz: return cz;
    case CutKind::GateSwap: return swap;
    case CutKind::GateCr: return cr;
  }
  return false;
}

// ---------------------------------------------------------------------------
// FormulaArena
// ---------------------------------------------------------------------------

FormulaArena::Id FormulaArena::add(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<Id>(nodes_.size() - 1);
}

FormulaArena::Id FormulaArena::constant(bool value) {
  return add({value ? Kind::True : Kind::False});
}
FormulaArena::Id FormulaArena::var(uint32_t index) {
  return add({Kind::Var, index});
}
FormulaArena::Id FormulaArena::lnot(Id a) { return add({Kind::Not, 0, {a}}); }
FormulaArena::Id FormulaArena::land(std::vector<Id> args) {
  return add({Kind::And, 0, std::move(args)});
}
FormulaArena::Id FormulaArena::lor(std::vector<Id> args) {
  return add({Kind::Or, 0, std::move(args)});
}
FormulaArena::Id FormulaArena::lxor(Id a, Id b) {
  return add({Kind::Xor, 0, {a, b}});
}
FormulaArena::Id FormulaArena::implies(Id a, Id b) {
  return add({Kind::Implies, 0, {a, b}});
}
FormulaArena::Id FormulaArena::iff(Id a, Id b) {
  return add({Kind::Iff, 0, {a, b}});
}

bool FormulaArena::eval(Id id, const std::vector<bool>& values) const {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Var: return values[n.var];
    case Kind::Not: return !eval(n.args[0], values);
    case Kind::And:
      for (Id a : n.args) {
        if (!eval(a, values)) return false;
      }
      return true;
    case Kind::Or:
      for (Id a : n.args) {
        if (eval(a, values)) return true;
      }
      return false;
    case Kind::Xor: return eval(n.args[0], values) != eval(n.args[1], values);
    case Kind::Implies:
      return !eval(n.args[0], values) || eval(n.args[1], values);
    case Kind::Iff: return eval(n.args[0], values) == eval(n.args[1], values);
  }
  return false;
}

void FormulaArena::emit(Id id, std::string& out,
                        const std::vector<std::string>& names) const {
  const Node& n = nodes_[id];
  auto emit_nary = [&](const char* op) {
    out += '(';
    out += op;
    for (Id a : n.args) {
      out += ' ';
      emit(a, out, names);
    }
    out += ')';
  };
  switch (n.kind) {
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::Var: out += names[n.var]; break;
    case Kind::Not: emit_nary("not"); break;
    case Kind::And: emit_nary("and"); break;
    case Kind::Or: emit_nary("or"); break;
    case Kind::Xor: emit_nary("xor"); break;
    case Kind::Implies: emit_nary("=>"); break;
    case Kind::Iff: emit_nary("="); break;
  }
}

int64_t IndicatorSum::eval(const FormulaArena& arena,
                           const std::vector<bool>& values) const {
  int64_t total = 0;
  for (const Term& t : terms) {
    if (arena.eval(t.cond, values)) total += t.coeff;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

uint32_t ConstraintSystem::o_var(uint32_t vertex, uint32_t partition) const {
  return vertex * problem.num_partitions + partition;
}
uint32_t ConstraintSystem::c_var(uint32_t edge) const {
  return static_cast<uint32_t>(problem.graph->vertices.size()) *
             problem.num_partitions +
         edge;
}
uint32_t ConstraintSystem::b_var(uint32_t edge) const {
  return c_var(edge) + static_cast<uint32_t>(problem.graph->edges.size());
}

namespace {

bool graph_connected(const CuttingGraph& graph) {
  if (graph.vertices.empty()) return true;
  std::vector<std::vector<uint32_t>> adj(graph.vertices.size());
  for (const CutEdge& e : graph.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(graph.vertices.size(), false);
  std::vector<uint32_t> stack{0};
  seen[0] = true;
  size_t visited = 0;
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    ++visited;
    for (uint32_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return visited == graph.vertices.size();
}

std::optional<int64_t> effective_budget_fp(const PartitionProblem& problem) {
  std::optional<double> bound;
  if (problem.budget) {
    bound = problem.budget->max_overhead();
  }
  if (problem.max_samples) {
    const double base = problem.budget ? problem.budget->base_shots : 8000;
    const double cap = *problem.max_samples / base;
    bound = bound ? std::min(*bound, cap) : cap;
  }
  if (!bound) return std::nullopt;
  if (*bound < 1.0) {
    throw Error(ErrorCode::InfeasibleTrivially,
                "budget admits fewer samples than the uncut circuit needs");
  }
  return cost_fp_floor(*bound);
}

}  // namespace

ConstraintSystem encode(const PartitionProblem& problem) {
  if (problem.graph == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "no cutting graph");
  }
  const CuttingGraph& graph = *problem.graph;
  const uint32_t num_vertices = static_cast<uint32_t>(graph.vertices.size());
  const uint32_t num_edges = static_cast<uint32_t>(graph.edges.size());
  const uint32_t P = problem.num_partitions;

  if (num_vertices == 0) {
    throw Error(ErrorCode::InfeasibleTrivially,
                "circuit has no two-qubit gates; nothing to partition");
  }
  if (P < 2 || P > num_vertices) {
    throw Error(ErrorCode::InvalidArgument,
                "partition count must lie in [2, |V|]");
  }
  if (problem.max_qubits_per_partition < 1) {
    throw Error(ErrorCode::InvalidArgument, "qubit cap must be at least 1");
  }

  ConstraintSystem sys;
  sys.problem = problem;
  sys.minimize_qubits = problem.objective == Objective::MinMaxQubits;
  sys.require_nonempty = problem.objective == Objective::MinSamples;
  sys.max_cuts = problem.max_cuts;
  sys.budget_fp = effective_budget_fp(problem);

  // Edge pricing under the problem's resources and allowed kinds.
  sys.edge_weight.resize(num_edges, 0);
  sys.edge_cuttable.resize(num_edges, false);
  sys.edge_groupable.resize(num_edges, false);
  uint32_t groupable_count = 0;
  for (uint32_t e = 0; e < num_edges; ++e) {
    CutKind kind = edge_cut_kind(graph, graph.edges[e]);
    bool cuttable = problem.allowed.admits(kind);
    if (cuttable) {
      try {
        sys.edge_weight[e] = edge_weight_fp(kind, problem.resources);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::Unpriced) throw;
        cuttable = false;  // unpriced edges are forbidden to cut
      }
    }
    sys.edge_cuttable[e] = cuttable;
    sys.edge_groupable[e] = cuttable && group_eligible(kind) &&
                            problem.resources.cc_available &&
                            problem.resources.ancilla_available;
    if (sys.edge_groupable[e]) ++groupable_count;
  }

  if (sys.require_nonempty &&
      std::none_of(sys.edge_cuttable.begin(), sys.edge_cuttable.end(),
                   [](bool b) { return b; }) &&
      graph_connected(graph)) {
    throw Error(ErrorCode::InfeasibleTrivially,
                "no edge may be cut but the cutting graph is connected");
  }

  // Variables.
  sys.num_vars = num_vertices * P + 2 * num_edges;
  sys.var_names.resize(sys.num_vars);
  for (uint32_t v = 0; v < num_vertices; ++v) {
    for (uint32_t p = 0; p < P; ++p) {
      sys.var_names[sys.o_var(v, p)] =
          "o_" + std::to_string(v) + "_" + std::to_string(p);
    }
  }
  for (uint32_t e = 0; e < num_edges; ++e) {
    sys.var_names[sys.c_var(e)] = "c_" + std::to_string(e);
    sys.var_names[sys.b_var(e)] = "b_" + std::to_string(e);
  }

  FormulaArena& f = sys.arena;

  // (a) cut definition: c_e <-> OR_p (o_{u,p} xor o_{v,p}).
  for (uint32_t e = 0; e < num_edges; ++e) {
    const CutEdge& edge = graph.edges[e];
    std::vector<FormulaArena::Id> mismatch;
    mismatch.reserve(P);
    for (uint32_t p = 0; p < P; ++p) {
      mismatch.push_back(
          f.lxor(f.var(sys.o_var(edge.u, p)), f.var(sys.o_var(edge.v, p))));
    }
    sys.cut_definitions.push_back(
        f.iff(f.var(sys.c_var(e)), f.lor(std::move(mismatch))));
  }

  // (b) exactly-one: pairwise exclusion plus coverage.
  for (uint32_t v = 0; v < num_vertices; ++v) {
    for (uint32_t p = 0; p < P; ++p) {
      for (uint32_t p2 = p + 1; p2 < P; ++p2) {
        sys.exactly_one.push_back(f.implies(
            f.var(sys.o_var(v, p)), f.lnot(f.var(sys.o_var(v, p2)))));
      }
    }
    std::vector<FormulaArena::Id> any;
    for (uint32_t p = 0; p < P; ++p) any.push_back(f.var(sys.o_var(v, p)));
    sys.exactly_one.push_back(f.lor(std::move(any)));
  }

  // (c) grouped cuts imply cuts.
  for (uint32_t e = 0; e < num_edges; ++e) {
    sys.group_implications.push_back(
        f.implies(f.var(sys.b_var(e)), f.var(sys.c_var(e))));
  }

  // (g)(h) forced assignments from modes and resources.
  for (uint32_t e = 0; e < num_edges; ++e) {
    if (!sys.edge_cuttable[e]) sys.forced.push_back(f.lnot(f.var(sys.c_var(e))));
    if (!sys.edge_groupable[e]) sys.forced.push_back(f.lnot(f.var(sys.b_var(e))));
  }

  // Pins fix parts of the assignment and make labels distinguishable.
  for (const auto& [vertex, partition] : problem.pinned_vertices) {
    if (vertex >= num_vertices || partition < 0 ||
        partition >= static_cast<int>(P)) {
      throw Error(ErrorCode::InvalidArgument, "pin outside the model");
    }
    sys.forced.push_back(f.var(sys.o_var(vertex, partition)));
  }

  // (i) symmetry breaking: vertex 0 in partition 0; partition p is used only
  // if p-1 is used. Only sound while labels are interchangeable.
  if (problem.pinned_vertices.empty()) {
    sys.forced.push_back(f.var(sys.o_var(0, 0)));
    for (uint32_t p = 1; p < P; ++p) {
      std::vector<FormulaArena::Id> used_p, used_prev;
      for (uint32_t v = 0; v < num_vertices; ++v) {
        used_p.push_back(f.var(sys.o_var(v, p)));
        used_prev.push_back(f.var(sys.o_var(v, p - 1)));
      }
      sys.forced.push_back(
          f.implies(f.lor(std::move(used_p)), f.lor(std::move(used_prev))));
    }
  }

  // Fixed partition count: every partition is populated when minimizing
  // samples; a cap when minimizing qubits.
  if (sys.require_nonempty) {
    for (uint32_t p = 0; p < P; ++p) {
      std::vector<FormulaArena::Id> any;
      for (uint32_t v = 0; v < num_vertices; ++v) {
        any.push_back(f.var(sys.o_var(v, p)));
      }
      sys.forced.push_back(f.lor(std::move(any)));
    }
  }

  // (d) Q_p: first vertices, wire-cut successors, grouped-cut ancillas.
  sys.qubit_count.resize(P);
  for (uint32_t p = 0; p < P; ++p) {
    IndicatorSum& q = sys.qubit_count[p];
    for (uint32_t vid : graph.first_vertices) {
      q.terms.push_back({f.var(sys.o_var(vid, p)), 1});
    }
    for (uint32_t e = static_cast<uint32_t>(graph.gate_edge_count);
         e < num_edges; ++e) {
      const CutEdge& edge = graph.edges[e];
      q.terms.push_back(
          {f.land({f.var(sys.c_var(e)), f.var(sys.o_var(edge.v, p))}), 1});
    }
    for (uint32_t e = 0; e < num_edges; ++e) {
      const CutEdge& edge = graph.edges[e];
      q.terms.push_back(
          {f.land({f.var(sys.b_var(e)),
                   f.lor({f.var(sys.o_var(edge.u, p)),
                          f.var(sys.o_var(edge.v, p))})}),
           1});
    }
  }

  // (f) cost pieces.
  for (uint32_t e = 0; e < num_edges; ++e) {
    sys.group_size.terms.push_back({f.var(sys.b_var(e)), 1});
    sys.cut_count.terms.push_back({f.var(sys.c_var(e)), 1});
    if (sys.edge_weight[e] != 0) {
      sys.individual_cost.terms.push_back(
          {f.land({f.var(sys.c_var(e)), f.lnot(f.var(sys.b_var(e)))}),
           sys.edge_weight[e]});
    }
  }
  sys.group_cost_chain = group_cost_fp_table(groupable_count);

  return sys;
}

ConstraintSystem::IntValues ConstraintSystem::eval_ints(
    const std::vector<bool>& values) const {
  IntValues out;
  out.q.reserve(qubit_count.size());
  for (const IndicatorSum& q : qubit_count) {
    out.q.push_back(q.eval(arena, values));
  }
  out.kb = group_size.eval(arena, values);
  out.gb = group_cost_chain[static_cast<size_t>(out.kb)];
  out.cost = individual_cost.eval(arena, values) + out.gb;
  return out;
}

bool ConstraintSystem::eval_bool_assertions(
    const std::vector<bool>& values) const {
  auto all = [&](const std::vector<FormulaArena::Id>& ids) {
    return std::all_of(ids.begin(), ids.end(),
                       [&](FormulaArena::Id id) { return arena.eval(id, values); });
  };
  return all(cut_definitions) && all(exactly_one) && all(group_implications) &&
         all(forced);
}

// ---------------------------------------------------------------------------
// SMT-LIB2 emission
// ---------------------------------------------------------------------------

std::string emit_smtlib2(const ConstraintSystem& sys) {
  const uint32_t P = sys.problem.num_partitions;
  std::string out;
  out.reserve(1 << 16);
  out += "(set-logic QF_LIA)\n";

  for (const std::string& name : sys.var_names) {
    out += "(declare-const " + name + " Bool)\n";
  }
  for (uint32_t p = 0; p < P; ++p) {
    out += "(declare-const q_" + std::to_string(p) + " Int)\n";
  }
  out += "(declare-const kb Int)\n(declare-const gb Int)\n(declare-const cost Int)\n";
  if (sys.minimize_qubits) out += "(declare-const qmax Int)\n";

  auto assert_formula = [&](FormulaArena::Id id) {
    out += "(assert ";
    sys.arena.emit(id, out, sys.var_names);
    out += ")\n";
  };
  for (FormulaArena::Id id : sys.cut_definitions) assert_formula(id);
  for (FormulaArena::Id id : sys.exactly_one) assert_formula(id);
  for (FormulaArena::Id id : sys.group_implications) assert_formula(id);
  for (FormulaArena::Id id : sys.forced) assert_formula(id);

  auto emit_sum = [&](const IndicatorSum& sum, const std::string& extra) {
    if (sum.terms.empty() && extra.empty()) {
      out += "0";
      return;
    }
    out += "(+";
    for (const IndicatorSum::Term& t : sum.terms) {
      out += " (ite ";
      sys.arena.emit(t.cond, out, sys.var_names);
      out += " " + std::to_string(t.coeff) + " 0)";
    }
    if (!extra.empty()) out += " " + extra;
    out += " 0)";
  };

  for (uint32_t p = 0; p < P; ++p) {
    out += "(assert (= q_" + std::to_string(p) + " ";
    emit_sum(sys.qubit_count[p], "");
    out += "))\n";
    out += "(assert (<= q_" + std::to_string(p) + " " +
           std::to_string(sys.problem.max_qubits_per_partition) + "))\n";
    out += "(assert (>= q_" + std::to_string(p) + " 0))\n";
  }

  out += "(assert (= kb ";
  emit_sum(sys.group_size, "");
  out += "))\n";

  // gb follows kb through an ite chain over the group-cost table.
  out += "(assert (= gb ";
  const size_t max_k = sys.group_cost_chain.size() - 1;
  for (size_t k = 0; k < max_k; ++k) {
    out += "(ite (= kb " + std::to_string(k) + ") " +
           std::to_string(sys.group_cost_chain[k]) + " ";
  }
  out += std::to_string(sys.group_cost_chain[max_k]);
  out.append(max_k, ')');
  out += "))\n";

  out += "(assert (= cost ";
  emit_sum(sys.individual_cost, "gb");
  out += "))\n";

  if (sys.budget_fp) {
    out += "(assert (<= cost " + std::to_string(*sys.budget_fp) + "))\n";
  }
  if (sys.max_cuts) {
    out += "(assert (<= ";
    emit_sum(sys.cut_count, "");
    out += " " + std::to_string(*sys.max_cuts) + "))\n";
  }
  if (sys.minimize_qubits) {
    for (uint32_t p = 0; p < P; ++p) {
      out += "(assert (>= qmax q_" + std::to_string(p) + "))\n";
    }
    out += "(assert (<= qmax " +
           std::to_string(sys.problem.max_qubits_per_partition) + "))\n";
  }

  out += "(check-sat)\n(get-value (";
  bool first = true;
  for (const std::string& name : sys.var_names) {
    if (!first) out += ' ';
    out += name;
    first = false;
  }
  for (uint32_t p = 0; p < P; ++p) out += " q_" + std::to_string(p);
  out += " kb gb cost";
  if (sys.minimize_qubits) out += " qmax";
  out += "))\n";
  return out;
}

// ---------------------------------------------------------------------------
// Shared assignment helpers
// ---------------------------------------------------------------------------

std::vector<uint32_t> derive_cut_edges(const CuttingGraph& graph,
                                       const std::vector<int>& vertex_partition) {
  std::vector<uint32_t> cut;
  for (const CutEdge& e : graph.edges) {
    if (vertex_partition[e.u] != vertex_partition[e.v]) cut.push_back(e.id);
  }
  return cut;
}

std::vector<uint32_t> compute_qubit_counts(const CuttingGraph& graph,
                                           const std::vector<int>& vertex_partition,
                                           uint32_t num_partitions,
                                           const std::vector<bool>& grouped) {
  std::vector<uint32_t> q(num_partitions, 0);
  for (uint32_t vid : graph.first_vertices) {
    ++q[vertex_partition[vid]];
  }
  for (size_t e = graph.gate_edge_count; e < graph.edges.size(); ++e) {
    const CutEdge& edge = graph.edges[e];
    if (vertex_partition[edge.u] != vertex_partition[edge.v]) {
      ++q[vertex_partition[edge.v]];
    }
  }
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    if (e < grouped.size() && grouped[e]) {
      const CutEdge& edge = graph.edges[e];
      const int pu = vertex_partition[edge.u];
      const int pv = vertex_partition[edge.v];
      ++q[pu];
      if (pv != pu) ++q[pv];
    }
  }
  return q;
}

int64_t solution_cost_fp(const ConstraintSystem& system,
                         const std::vector<uint32_t>& cut_edges,
                         const std::vector<uint32_t>& grouped_edges) {
  std::vector<bool> is_grouped(system.problem.graph->edges.size(), false);
  for (uint32_t e : grouped_edges) is_grouped[e] = true;
  int64_t cost = 0;
  for (uint32_t e : cut_edges) {
    if (!is_grouped[e]) cost += system.edge_weight[e];
  }
  return cost + system.group_cost_chain[grouped_edges.size()];
}

namespace {

/// Exact overhead and report flags recomputed from cut kinds.
void fill_overhead(const PartitionProblem& problem, PartitionSolution& sol) {
  const CuttingGraph& graph = *problem.graph;
  std::vector<bool> grouped(graph.edges.size(), false);
  for (uint32_t e : sol.grouped_edges) grouped[e] = true;

  std::vector<CountedCut> cuts;
  bool group_has_wire = false, group_has_gate = false;
  sol.cr_cc_bound_used = false;
  for (uint32_t e : sol.cut_edges) {
    CutKind kind = edge_cut_kind(graph, graph.edges[e]);
    cuts.push_back({kind, grouped[e]});
    if (grouped[e]) {
      (kind.kind == CutKind::Wire ? group_has_wire : group_has_gate) = true;
    } else if (gamma_sq_is_upper_bound(kind, problem.resources)) {
      sol.cr_cc_bound_used = true;
    }
  }
  sol.mixed_bell_group = group_has_wire && group_has_gate;
  sol.overhead = solution_overhead(cuts, problem.resources);
  sol.overhead_fp = 0;
  for (uint32_t e : sol.cut_edges) {
    if (!grouped[e]) {
      sol.overhead_fp +=
          edge_weight_fp(edge_cut_kind(graph, graph.edges[e]), problem.resources);
    }
  }
  if (!sol.grouped_edges.empty()) {
    sol.overhead_fp += cost_fp_ceil(
        group_cost(static_cast<uint32_t>(sol.grouped_edges.size()),
                   GroupClass::BellGroup));
  }
}

}  // namespace

void finalize_solution(const PartitionProblem& problem,
                       PartitionSolution& solution) {
  const CuttingGraph& graph = *problem.graph;
  const uint32_t P = problem.num_partitions;

  std::vector<bool> grouped(graph.edges.size(), false);
  for (uint32_t e : solution.grouped_edges) grouped[e] = true;
  solution.qubit_counts =
      compute_qubit_counts(graph, solution.vertex_partition, P, grouped);
  solution.max_qubits =
      *std::max_element(solution.qubit_counts.begin(), solution.qubit_counts.end());

  // Original qubits belong where their first vertex lives; idle qubits go to
  // the partition with the most spare capacity.
  solution.partition_qubits.assign(P, {});
  for (uint32_t vid : graph.first_vertices) {
    solution.partition_qubits[solution.vertex_partition[vid]].push_back(
        graph.vertices[vid].qubit);
  }
  std::vector<uint32_t> extended = solution.qubit_counts;
  solution.idle_qubit_partition.clear();
  for (uint32_t q : graph.idle_qubits) {
    uint32_t best = 0;
    for (uint32_t p = 1; p < P; ++p) {
      const int64_t spare_best =
          static_cast<int64_t>(problem.max_qubits_per_partition) - extended[best];
      const int64_t spare_p =
          static_cast<int64_t>(problem.max_qubits_per_partition) - extended[p];
      if (spare_p > spare_best) best = p;
    }
    solution.partition_qubits[best].push_back(q);
    solution.idle_qubit_partition.push_back(static_cast<int>(best));
    ++extended[best];
  }
  for (auto& qubits : solution.partition_qubits) {
    std::sort(qubits.begin(), qubits.end());
  }

  fill_overhead(problem, solution);
}

// ---------------------------------------------------------------------------
// Decode
// ---------------------------------------------------------------------------

namespace {

const ModelValue& model_at(const Model& model, const std::string& name) {
  auto it = model.find(name);
  if (it == model.end()) {
    throw Error(ErrorCode::ModelParseError, "model misses symbol " + name);
  }
  return it->second;
}

}  // namespace

PartitionSolution decode(const ConstraintSystem& sys, const Model& model) {
  const CuttingGraph& graph = *sys.problem.graph;
  const uint32_t num_vertices = static_cast<uint32_t>(graph.vertices.size());
  const uint32_t num_edges = static_cast<uint32_t>(graph.edges.size());
  const uint32_t P = sys.problem.num_partitions;

  std::vector<bool> values(sys.num_vars, false);
  for (uint32_t i = 0; i < sys.num_vars; ++i) {
    values[i] = model_at(model, sys.var_names[i]).bool_value;
  }

  PartitionSolution sol;
  sol.vertex_partition.assign(num_vertices, -1);
  for (uint32_t v = 0; v < num_vertices; ++v) {
    for (uint32_t p = 0; p < P; ++p) {
      if (values[sys.o_var(v, p)]) {
        if (sol.vertex_partition[v] >= 0) {
          throw Error(ErrorCode::InconsistentModel,
                      "vertex " + std::to_string(v) + " assigned twice");
        }
        sol.vertex_partition[v] = static_cast<int>(p);
      }
    }
    if (sol.vertex_partition[v] < 0) {
      throw Error(ErrorCode::InconsistentModel,
                  "vertex " + std::to_string(v) + " unassigned");
    }
  }

  // Cross-check c against the label derivation, collect cuts and groups.
  const std::vector<uint32_t> derived_cuts =
      derive_cut_edges(graph, sol.vertex_partition);
  std::vector<bool> derived_is_cut(num_edges, false);
  for (uint32_t e : derived_cuts) derived_is_cut[e] = true;
  for (uint32_t e = 0; e < num_edges; ++e) {
    if (values[sys.c_var(e)] != derived_is_cut[e]) {
      throw Error(ErrorCode::InconsistentModel,
                  "cut variable c_" + std::to_string(e) +
                      " disagrees with the assignment");
    }
    if (values[sys.b_var(e)]) {
      if (!values[sys.c_var(e)]) {
        throw Error(ErrorCode::InconsistentModel,
                    "b_" + std::to_string(e) + " set without c");
      }
      sol.grouped_edges.push_back(e);
    }
  }
  sol.cut_edges = derived_cuts;

  // Recompute the integer layer and compare with the solver's claims.
  const ConstraintSystem::IntValues ints = sys.eval_ints(values);
  for (uint32_t p = 0; p < P; ++p) {
    if (model_at(model, "q_" + std::to_string(p)).int_value != ints.q[p]) {
      throw Error(ErrorCode::InconsistentModel,
                  "solver Q_" + std::to_string(p) + " mismatch");
    }
    if (ints.q[p] > sys.problem.max_qubits_per_partition) {
      throw Error(ErrorCode::InconsistentModel, "qubit cap violated");
    }
  }
  if (model_at(model, "cost").int_value != ints.cost) {
    throw Error(ErrorCode::InconsistentModel, "solver cost mismatch");
  }
  const int64_t recomputed =
      solution_cost_fp(sys, sol.cut_edges, sol.grouped_edges);
  if (recomputed != ints.cost) {
    throw Error(ErrorCode::InconsistentModel, "cost recomputation mismatch");
  }

  finalize_solution(sys.problem, sol);
  sol.objective_value = sys.minimize_qubits
                            ? model_at(model, "qmax").int_value
                            : ints.cost;
  return sol;
}

// ---------------------------------------------------------------------------
// Independent validation
// ---------------------------------------------------------------------------

std::vector<std::string> validate_solution(const PartitionProblem& problem,
                                           const PartitionSolution& solution) {
  std::vector<std::string> violations;
  const CuttingGraph& graph = *problem.graph;
  const uint32_t num_vertices = static_cast<uint32_t>(graph.vertices.size());
  const uint32_t P = problem.num_partitions;

  if (solution.vertex_partition.size() != num_vertices) {
    violations.push_back("vertex assignment has the wrong size");
    return violations;
  }
  for (uint32_t v = 0; v < num_vertices; ++v) {
    const int p = solution.vertex_partition[v];
    if (p < 0 || p >= static_cast<int>(P)) {
      violations.push_back("vertex " + std::to_string(v) +
                           " outside the partition range");
      return violations;
    }
  }

  // Cut set must equal the label derivation.
  const std::vector<uint32_t> derived =
      derive_cut_edges(graph, solution.vertex_partition);
  if (derived != solution.cut_edges) {
    violations.push_back("cut set disagrees with the vertex assignment");
  }

  // b subset of c.
  std::vector<bool> is_cut(graph.edges.size(), false);
  for (uint32_t e : solution.cut_edges) is_cut[e] = true;
  std::vector<bool> grouped(graph.edges.size(), false);
  for (uint32_t e : solution.grouped_edges) {
    grouped[e] = true;
    if (!is_cut[e]) {
      violations.push_back("grouped edge " + std::to_string(e) +
                           " is not cut (b implies c)");
    }
    if (!problem.resources.cc_available || !problem.resources.ancilla_available) {
      violations.push_back("grouped cuts need CC and ancilla qubits");
    }
    CutKind kind = edge_cut_kind(graph, graph.edges[e]);
    if (!group_eligible(kind)) {
      violations.push_back("edge " + std::to_string(e) +
                           " is not Bell-group eligible");
    }
  }

  // Allowed kinds.
  for (uint32_t e : solution.cut_edges) {
    CutKind kind = edge_cut_kind(graph, graph.edges[e]);
    if (!problem.allowed.admits(kind)) {
      violations.push_back("edge " + std::to_string(e) +
                           " cut despite its kind being disallowed");
    }
  }

  // Q_p formula and cap.
  const std::vector<uint32_t> q =
      compute_qubit_counts(graph, solution.vertex_partition, P, grouped);
  if (q != solution.qubit_counts) {
    violations.push_back("qubit count mismatch");
  }
  for (uint32_t p = 0; p < P; ++p) {
    if (q[p] > problem.max_qubits_per_partition) {
      violations.push_back("partition " + std::to_string(p) +
                           " exceeds the qubit cap");
    }
  }
  if (problem.objective == Objective::MinSamples) {
    std::vector<bool> used(P, false);
    for (int p : solution.vertex_partition) used[p] = true;
    for (uint32_t p = 0; p < P; ++p) {
      if (!used[p]) {
        violations.push_back("partition " + std::to_string(p) + " is empty");
      }
    }
  }

  // Budget in exact arithmetic.
  std::optional<double> bound;
  if (problem.budget) bound = problem.budget->max_overhead();
  if (problem.max_samples) {
    const double base = problem.budget ? problem.budget->base_shots : 8000;
    const double cap = *problem.max_samples / base;
    bound = bound ? std::min(*bound, cap) : cap;
  }
  if (bound) {
    std::vector<CountedCut> cuts;
    for (uint32_t e : solution.cut_edges) {
      cuts.push_back({edge_cut_kind(graph, graph.edges[e]), grouped[e]});
    }
    const double s = solution_overhead(cuts, problem.resources);
    if (s > *bound * (1.0 + 1e-5)) {
      violations.push_back("sampling overhead exceeds the budget");
    }
  }
  if (problem.max_cuts && solution.cut_edges.size() > *problem.max_cuts) {
    violations.push_back("cut count exceeds the cap");
  }
  for (const auto& [vertex, partition] : problem.pinned_vertices) {
    if (solution.vertex_partition[vertex] != partition) {
      violations.push_back("pinned vertex " + std::to_string(vertex) +
                           " moved away from its partition");
    }
  }

  // Connected components of the uncut graph must be label-uniform.
  {
    std::vector<uint32_t> parent(num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (const CutEdge& e : graph.edges) {
      if (!is_cut[e.id]) parent[find(e.u)] = find(e.v);
    }
    for (uint32_t v = 0; v < num_vertices; ++v) {
      if (solution.vertex_partition[find(v)] != solution.vertex_partition[v]) {
        violations.push_back("component around vertex " + std::to_string(v) +
                             " spans partitions");
        break;
      }
    }
  }

  return violations;
}

}  // namespace qknit

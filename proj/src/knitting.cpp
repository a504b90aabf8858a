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

#include "knitting.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "rng.hpp"

namespace qknit {

double Qpd::kappa() const {
  double k = 0.0;
  for (const QpdTerm& t : terms) k += std::abs(t.coeff);
  return k;
}

namespace {

Fragment frag(std::initializer_list<GateKind> gates) {
  Fragment f;
  for (GateKind g : gates) f.push_back(FragmentOp::g(g));
  return f;
}

Fragment frag_mz() { return {FragmentOp::mz()}; }

Fragment frag_h_mz_h() {
  return {FragmentOp::g(GateKind::H), FragmentOp::mz(), FragmentOp::g(GateKind::H)};
}

}  // namespace

Qpd qpd_cz(bool cc) {
  // The classical-communication setting admits the same six local terms; CC
  // only pays off for simultaneous cuts, which are priced but not knitted.
  Qpd qpd;
  qpd.target = GateKind::CZ;
  qpd.cc = cc;
  qpd.terms = {
      {+0.5, frag({GateKind::Sdg}), frag({GateKind::Sdg})},
      {+0.5, frag({GateKind::S}), frag({GateKind::S})},
      {+0.5, frag_mz(), frag({})},
      {-0.5, frag_mz(), frag({GateKind::Z})},
      {+0.5, frag({}), frag_mz()},
      {-0.5, frag({GateKind::Z}), frag_mz()},
  };
  return qpd;
}

Qpd qpd_cnot(bool cc) {
  // CZ decomposition conjugated by H on the target side.
  Qpd qpd;
  qpd.target = GateKind::CNOT;
  qpd.cc = cc;
  qpd.terms = {
      {+0.5, frag({GateKind::Sdg}), frag({GateKind::H, GateKind::Sdg, GateKind::H})},
      {+0.5, frag({GateKind::S}), frag({GateKind::H, GateKind::S, GateKind::H})},
      {+0.5, frag_mz(), frag({})},
      {-0.5, frag_mz(), frag({GateKind::X})},
      {+0.5, frag({}), frag_h_mz_h()},
      {-0.5, frag({GateKind::Z}), frag_h_mz_h()},
  };
  return qpd;
}

// ---------------------------------------------------------------------------
// Channel validation on the two-qubit Pauli basis
// ---------------------------------------------------------------------------

namespace {

using C = std::complex<double>;
using Mat2 = std::array<C, 4>;

constexpr C kI{0.0, 1.0};

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 gate_unitary2(GateKind kind) {
  const double s = 0.70710678118654752440;
  switch (kind) {
    case GateKind::H: return {s, s, s, -s};
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::S: return {1, 0, 0, kI};
    case GateKind::Sdg: return {1, 0, 0, -kI};
    default:
      throw Error(ErrorCode::Internal, "fragment gate without 2x2 unitary");
  }
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      const C aik = a[i * 4 + k];
      if (aik == C{}) continue;
      for (int j = 0; j < 4; ++j) r[i * 4 + j] += aik * b[k * 4 + j];
    }
  }
  return r;
}

Mat4 mat4_dagger(const Mat4& a) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r[i * 4 + j] = std::conj(a[j * 4 + i]);
  }
  return r;
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          r[(i * 2 + k) * 4 + (j * 2 + l)] = a[i * 2 + j] * b[k * 2 + l];
        }
      }
    }
  }
  return r;
}

/// A fragment as a list of (2x2 operator, estimator sign) over its
/// measurement branches.
std::vector<std::pair<Mat2, double>> fragment_branches(const Fragment& f) {
  std::vector<std::pair<Mat2, double>> prods{{Mat2{1, 0, 0, 1}, 1.0}};
  for (const FragmentOp& op : f) {
    if (op.type == FragmentOp::SignMeasure) {
      const Mat2 p0{C{1}, C{0}, C{0}, C{0}};
      const Mat2 p1{C{0}, C{0}, C{0}, C{1}};
      std::vector<std::pair<Mat2, double>> next;
      next.reserve(prods.size() * 2);
      for (const auto& [m, sign] : prods) {
        next.push_back({mat2_mul(p0, m), sign});
        next.push_back({mat2_mul(p1, m), -sign});
      }
      prods = std::move(next);
    } else {
      for (auto& [m, sign] : prods) m = mat2_mul(gate_unitary2(op.gate), m);
    }
  }
  return prods;
}

const std::array<Mat2, 4> kPauli2{{{1, 0, 0, 1},
                                   {0, 1, 1, 0},
                                   {0, -kI, kI, 0},
                                   {1, 0, 0, -1}}};

}  // namespace

Mat4 gate_unitary4(GateKind kind, double angle) {
  switch (kind) {
    case GateKind::CNOT:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::CZ:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::SWAP:
      return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::CRZ: {
      Mat4 m{};
      m[0] = m[5] = 1.0;
      m[10] = std::polar(1.0, -angle / 2);
      m[15] = std::polar(1.0, angle / 2);
      return m;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "not a two-qubit gate kind");
  }
}

QpdValidation validate_qpd(const Qpd& qpd, const Mat4& target) {
  // Pre-expand each term into its signed Kraus branches on the full space.
  struct Branch {
    Mat4 op;
    double weight;
  };
  std::vector<Branch> branches;
  for (const QpdTerm& term : qpd.terms) {
    for (const auto& [ma, sa] : fragment_branches(term.side_a)) {
      for (const auto& [mb, sb] : fragment_branches(term.side_b)) {
        branches.push_back({kron2(ma, mb), term.coeff * sa * sb});
      }
    }
  }

  const Mat4 target_dag = mat4_dagger(target);
  QpdValidation result;
  result.kappa = qpd.kappa();
  for (const Mat2& pa : kPauli2) {
    for (const Mat2& pb : kPauli2) {
      const Mat4 rho = kron2(pa, pb);
      const Mat4 expected = mat4_mul(mat4_mul(target, rho), target_dag);
      Mat4 got{};
      for (const Branch& br : branches) {
        const Mat4 t = mat4_mul(mat4_mul(br.op, rho), mat4_dagger(br.op));
        for (int i = 0; i < 16; ++i) got[i] += br.weight * t[i];
      }
      for (int i = 0; i < 16; ++i) {
        result.max_deviation =
            std::max(result.max_deviation, std::abs(got[i] - expected[i]));
      }
    }
  }
  result.pass = result.max_deviation <= 1e-10;
  return result;
}

QpdValidation validate_qpd(const Qpd& qpd, GateKind target_kind) {
  return validate_qpd(qpd, gate_unitary4(target_kind));
}

Circuit move_circuit() {
  Circuit c;
  c.num_qubits = 2;
  c.num_clbits = 1;
  c.gates.push_back(gate2(GateKind::CNOT, 0, 1));
  c.gates.push_back(gate1(GateKind::H, 0));
  c.gates.push_back(measure_z(0, 0));
  Gate corr = gate1(GateKind::Z, 1);
  corr.condition = {0, 1};
  c.gates.push_back(corr);
  return c;
}

// ---------------------------------------------------------------------------
// Subcircuit generation
// ---------------------------------------------------------------------------

namespace {

/// Skeleton op: an ordinary gate, or a placeholder for one cut's fragments.
struct SkeletonOp {
  enum Type { Plain, CutSite } type = Plain;
  Gate gate;              // Plain
  int partition = -1;     // Plain: executing partition
  size_t cut_index = 0;   // CutSite
  uint32_t qubit_a = 0, qubit_b = 0;  // CutSite endpoints (combined ids)
  int part_a = -1, part_b = -1;
  uint32_t clbit_a = 0, clbit_b = 0;  // reserved for sign measurements
};

struct CutSite {
  Qpd qpd;
};

}  // namespace

double SubcircuitEnsemble::normalization() const {
  double n = 0.0;
  for (const SubcircuitEntry& e : entries) n += std::abs(e.weight);
  return n;
}

SubcircuitEnsemble generate_subcircuits(const Circuit& circuit,
                                        const CuttingGraph& graph,
                                        const CutSelection& selection) {
  if (selection.vertex_partition.size() != graph.vertices.size()) {
    throw Error(ErrorCode::InvalidArgument, "vertex partition size mismatch");
  }

  std::vector<bool> is_cut(graph.edges.size(), false);
  for (uint32_t e : selection.cut_edges) {
    if (e >= graph.edges.size()) {
      throw Error(ErrorCode::InvalidArgument, "cut edge id out of range");
    }
    is_cut[e] = true;
    if (graph.edges[e].kind == CutEdgeKind::Gate) {
      const GateKind gk = graph.edges[e].gate_kind;
      if (gk != GateKind::CNOT && gk != GateKind::CZ) {
        throw Error(ErrorCode::UnpricedCut,
                    std::string("no shipped decomposition for cutting ") +
                        gate_kind_name(gk));
      }
    }
  }

  // Wire cuts indexed by their earlier endpoint vertex.
  std::vector<int64_t> wire_cut_after(graph.vertices.size(), -1);
  for (uint32_t e = 0; e < graph.edges.size(); ++e) {
    if (is_cut[e] && graph.edges[e].kind == CutEdgeKind::Wire) {
      wire_cut_after[graph.edges[e].u] = e;
    }
  }

  const uint32_t n = circuit.num_qubits;
  std::vector<uint32_t> carrier(n);
  std::vector<int> segment_partition(n, -1);
  for (uint32_t q = 0; q < n; ++q) carrier[q] = q;

  // Current partition per qubit: its first vertex's partition, idle qubits
  // as assigned by the caller.
  {
    for (uint32_t vid : graph.first_vertices) {
      segment_partition[graph.vertices[vid].qubit] =
          selection.vertex_partition[vid];
    }
    for (size_t i = 0; i < graph.idle_qubits.size(); ++i) {
      int p = selection.idle_qubit_partition.empty()
                  ? 0
                  : selection.idle_qubit_partition[i];
      segment_partition[graph.idle_qubits[i]] = p;
    }
  }

  uint32_t next_qubit = n;
  uint32_t next_clbit = circuit.num_clbits;
  std::vector<int> partition_of_qubit(n);
  for (uint32_t q = 0; q < n; ++q) partition_of_qubit[q] = segment_partition[q];

  std::vector<SkeletonOp> skeleton;
  std::vector<CutSite> sites;

  auto push_plain = [&](Gate g, int partition) {
    SkeletonOp op;
    op.type = SkeletonOp::Plain;
    op.gate = std::move(g);
    op.partition = partition;
    skeleton.push_back(std::move(op));
  };

  auto push_cut_site = [&](const Qpd& qpd, uint32_t qa, uint32_t qb, int pa,
                           int pb) {
    SkeletonOp op;
    op.type = SkeletonOp::CutSite;
    op.cut_index = sites.size();
    op.qubit_a = qa;
    op.qubit_b = qb;
    op.part_a = pa;
    op.part_b = pb;
    op.clbit_a = next_clbit++;
    op.clbit_b = next_clbit++;
    skeleton.push_back(op);
    sites.push_back(CutSite{qpd});
  };

  // Vertex ids appear in gate order: vertex 2*t and 2*t+1 belong to the t-th
  // two-qubit gate.
  uint32_t two_qubit_seen = 0;
  for (uint32_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const Gate& g = circuit.gates[gi];
    if (!g.is_two_qubit()) {
      Gate remapped = g;
      remapped.qubits[0] = carrier[g.qubits[0]];
      push_plain(std::move(remapped), segment_partition[g.qubits[0]]);
      continue;
    }
    const uint32_t va = two_qubit_seen * 2;
    const uint32_t vb = va + 1;
    ++two_qubit_seen;
    const int pa = selection.vertex_partition[va];
    const int pb = selection.vertex_partition[vb];
    const uint32_t qa = g.qubits[0];
    const uint32_t qb = g.qubits[1];
    segment_partition[qa] = pa;
    segment_partition[qb] = pb;

    const uint32_t gate_edge = [&] {
      for (uint32_t e = 0; e < graph.gate_edge_count; ++e) {
        if (graph.edges[e].u == va) return e;
      }
      throw Error(ErrorCode::Internal, "gate edge not found");
    }();

    if (is_cut[gate_edge]) {
      const Qpd qpd = g.kind == GateKind::CZ
                          ? qpd_cz(selection.cc_available)
                          : qpd_cnot(selection.cc_available);
      push_cut_site(qpd, carrier[qa], carrier[qb], pa, pb);
    } else {
      if (pa != pb) {
        throw Error(ErrorCode::InvalidArgument,
                    "uncut gate edge crosses partitions");
      }
      Gate remapped = g;
      remapped.qubits[0] = carrier[qa];
      remapped.qubits[1] = carrier[qb];
      push_plain(std::move(remapped), pa);
    }

    // Wire cuts immediately after this gate on either qubit: splice in the
    // move circuit and gate-cut its CNOT.
    for (uint32_t vid : {va, vb}) {
      if (wire_cut_after[vid] < 0) continue;
      const CutEdge& we = graph.edges[wire_cut_after[vid]];
      const uint32_t q = graph.vertices[vid].qubit;
      const int src_part = selection.vertex_partition[we.u];
      const int dst_part = selection.vertex_partition[we.v];
      const uint32_t src = carrier[q];
      const uint32_t dst = next_qubit++;
      partition_of_qubit.push_back(dst_part);

      push_cut_site(qpd_cnot(true), src, dst, src_part, dst_part);
      push_plain(gate1(GateKind::H, src), src_part);
      const uint32_t m = next_clbit++;
      push_plain(measure_z(src, m), src_part);
      Gate corr = gate1(GateKind::Z, dst);
      corr.condition = {m, 1};
      push_plain(std::move(corr), dst_part);

      carrier[q] = dst;
      segment_partition[q] = dst_part;
    }
  }

  const uint32_t total_qubits = next_qubit;
  const uint32_t total_clbits = next_clbit;
  if (total_qubits > kMaxSimQubits) {
    throw Error(ErrorCode::TooWide,
                "instrumented circuit needs " + std::to_string(total_qubits) +
                    " qubits, exceeding the simulator limit");
  }

  SubcircuitEnsemble ensemble;
  ensemble.num_partitions = selection.num_partitions;
  ensemble.partition_of_qubit = partition_of_qubit;
  ensemble.combined_qubits = total_qubits;
  ensemble.combined_clbits = total_clbits;
  ensemble.final_carrier = carrier;

  // Local qubit index per partition, assigned by ascending combined id.
  std::vector<uint32_t> local_index(total_qubits, 0);
  std::vector<uint32_t> partition_width(selection.num_partitions, 0);
  for (uint32_t q = 0; q < total_qubits; ++q) {
    local_index[q] = partition_width[partition_of_qubit[q]]++;
  }

  // Cartesian product over cut-site terms, last site fastest.
  size_t entry_count = 1;
  for (const CutSite& site : sites) entry_count *= site.qpd.terms.size();

  for (size_t entry_id = 0; entry_id < entry_count; ++entry_id) {
    std::vector<size_t> choice(sites.size());
    {
      size_t rest = entry_id;
      for (size_t s = sites.size(); s-- > 0;) {
        choice[s] = rest % sites[s].qpd.terms.size();
        rest /= sites[s].qpd.terms.size();
      }
    }

    SubcircuitEntry entry;
    entry.weight = 1.0;
    entry.combined.num_qubits = total_qubits;
    entry.combined.num_clbits = total_clbits;
    entry.parts.resize(selection.num_partitions);
    for (uint32_t p = 0; p < selection.num_partitions; ++p) {
      entry.parts[p].num_qubits = partition_width[p];
      entry.parts[p].num_clbits = total_clbits;
    }

    auto emit = [&](const Gate& g, int partition) {
      entry.combined.gates.push_back(g);
      Gate local = g;
      for (uint32_t& q : local.qubits) q = local_index[q];
      entry.parts[partition].gates.push_back(std::move(local));
    };

    auto emit_fragment = [&](const Fragment& f, uint32_t qubit, int partition,
                             uint32_t clbit) {
      for (const FragmentOp& op : f) {
        if (op.type == FragmentOp::SignMeasure) {
          emit(measure_z(qubit, clbit), partition);
          entry.sign_clbits.push_back(clbit);
        } else {
          emit(gate1(op.gate, qubit), partition);
        }
      }
    };

    for (const SkeletonOp& op : skeleton) {
      if (op.type == SkeletonOp::Plain) {
        emit(op.gate, op.partition);
      } else {
        const QpdTerm& term = sites[op.cut_index].qpd.terms[choice[op.cut_index]];
        entry.weight *= term.coeff;
        emit_fragment(term.side_a, op.qubit_a, op.part_a, op.clbit_a);
        emit_fragment(term.side_b, op.qubit_b, op.part_b, op.clbit_b);
      }
    }
    ensemble.entries.push_back(std::move(entry));
  }
  return ensemble;
}

double knit_expectation(const SubcircuitEnsemble& ensemble,
                        const PauliString& obs) {
  if (obs.ops.size() != ensemble.final_carrier.size()) {
    throw Error(ErrorCode::InvalidArgument, "observable width mismatch");
  }
  PauliString mapped;
  mapped.ops.assign(ensemble.combined_qubits, 'I');
  for (size_t q = 0; q < obs.ops.size(); ++q) {
    mapped.ops[ensemble.final_carrier[q]] = obs.ops[q];
  }

  double total = 0.0;
  for (const SubcircuitEntry& entry : ensemble.entries) {
    double value = 0.0;
    for (const SimBranch& branch : simulate_branches(entry.combined)) {
      double sign = 1.0;
      for (uint32_t cl : entry.sign_clbits) {
        if (branch.clbits[cl] == 1) sign = -sign;
      }
      value += sign * pauli_expectation(branch.state, mapped);
    }
    total += entry.weight * value;
  }
  return total;
}

double knit_expectation_sampled(const SubcircuitEnsemble& ensemble,
                                const PauliString& obs, uint64_t shots,
                                uint64_t seed) {
  if (shots == 0) {
    throw Error(ErrorCode::InvalidArgument, "need at least one shot");
  }
  PauliString mapped;
  mapped.ops.assign(ensemble.combined_qubits, 'I');
  for (size_t q = 0; q < obs.ops.size(); ++q) {
    mapped.ops[ensemble.final_carrier[q]] = obs.ops[q];
  }
  const double norm = ensemble.normalization();

  Rng rng(seed);
  double acc = 0.0;
  for (uint64_t shot = 0; shot < shots; ++shot) {
    double pick = rng.uniform() * norm;
    size_t idx = 0;
    for (; idx + 1 < ensemble.entries.size(); ++idx) {
      pick -= std::abs(ensemble.entries[idx].weight);
      if (pick <= 0) break;
    }
    const SubcircuitEntry& entry = ensemble.entries[idx];
    const auto branches = simulate_branches(entry.combined);
    double r = rng.uniform();
    size_t b = 0;
    for (; b + 1 < branches.size(); ++b) {
      r -= branches[b].probability();
      if (r <= 0) break;
    }
    const SimBranch& branch = branches[b];
    double sign = entry.weight < 0 ? -1.0 : 1.0;
    for (uint32_t cl : entry.sign_clbits) {
      if (branch.clbits[cl] == 1) sign = -sign;
    }
    const double p = branch.probability();
    if (p > 0) {
      acc += sign * pauli_expectation(branch.state, mapped) / p;
    }
  }
  return norm * acc / static_cast<double>(shots);
}

}  // namespace qknit

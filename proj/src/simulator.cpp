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

#include "simulator.hpp"

#include <bit>
#include <cmath>

#include "error.hpp"

namespace qknit {

namespace {

constexpr double kDeadBranch = 1e-28;

void apply_h(std::vector<Amplitude>& st, uint32_t q) {
  const size_t step = size_t{1} << q;
  const double inv_sqrt2 = 0.70710678118654752440;
  for (size_t base = 0; base < st.size(); base += 2 * step) {
    for (size_t i = base; i < base + step; ++i) {
      Amplitude a = st[i];
      Amplitude b = st[i + step];
      st[i] = (a + b) * inv_sqrt2;
      st[i + step] = (a - b) * inv_sqrt2;
    }
  }
}

void apply_x(std::vector<Amplitude>& st, uint32_t q) {
  const size_t step = size_t{1} << q;
  for (size_t base = 0; base < st.size(); base += 2 * step) {
    for (size_t i = base; i < base + step; ++i) {
      std::swap(st[i], st[i + step]);
    }
  }
}

void apply_phase1(std::vector<Amplitude>& st, uint32_t q, Amplitude phase) {
  const size_t mask = size_t{1} << q;
  for (size_t i = 0; i < st.size(); ++i) {
    if (i & mask) st[i] *= phase;
  }
}

void apply_rz(std::vector<Amplitude>& st, uint32_t q, double angle) {
  const Amplitude p0 = std::polar(1.0, -angle / 2);
  const Amplitude p1 = std::polar(1.0, angle / 2);
  const size_t mask = size_t{1} << q;
  for (size_t i = 0; i < st.size(); ++i) {
    st[i] *= (i & mask) ? p1 : p0;
  }
}

void apply_cnot(std::vector<Amplitude>& st, uint32_t control, uint32_t target) {
  const size_t cmask = size_t{1} << control;
  const size_t tmask = size_t{1} << target;
  for (size_t i = 0; i < st.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(st[i], st[i | tmask]);
    }
  }
}

void apply_cz(std::vector<Amplitude>& st, uint32_t a, uint32_t b) {
  const size_t mask = (size_t{1} << a) | (size_t{1} << b);
  for (size_t i = 0; i < st.size(); ++i) {
    if ((i & mask) == mask) st[i] = -st[i];
  }
}

void apply_swap(std::vector<Amplitude>& st, uint32_t a, uint32_t b) {
  const size_t amask = size_t{1} << a;
  const size_t bmask = size_t{1} << b;
  for (size_t i = 0; i < st.size(); ++i) {
    const bool ba = i & amask;
    const bool bb = i & bmask;
    if (ba && !bb) {
      std::swap(st[i], st[(i & ~amask) | bmask]);
    }
  }
}

void apply_crz(std::vector<Amplitude>& st, uint32_t control, uint32_t target,
               double angle) {
  const size_t cmask = size_t{1} << control;
  const size_t tmask = size_t{1} << target;
  const Amplitude p0 = std::polar(1.0, -angle / 2);
  const Amplitude p1 = std::polar(1.0, angle / 2);
  for (size_t i = 0; i < st.size(); ++i) {
    if (i & cmask) st[i] *= (i & tmask) ? p1 : p0;
  }
}

void apply_unitary(std::vector<Amplitude>& st, const Gate& g) {
  switch (g.kind) {
    case GateKind::H: apply_h(st, g.qubits[0]); break;
    case GateKind::X: apply_x(st, g.qubits[0]); break;
    case GateKind::Z: apply_phase1(st, g.qubits[0], -1.0); break;
    case GateKind::S: apply_phase1(st, g.qubits[0], {0.0, 1.0}); break;
    case GateKind::Sdg: apply_phase1(st, g.qubits[0], {0.0, -1.0}); break;
    case GateKind::RZ: apply_rz(st, g.qubits[0], g.angle); break;
    case GateKind::CNOT: apply_cnot(st, g.qubits[0], g.qubits[1]); break;
    case GateKind::CZ: apply_cz(st, g.qubits[0], g.qubits[1]); break;
    case GateKind::SWAP: apply_swap(st, g.qubits[0], g.qubits[1]); break;
    case GateKind::CRZ: apply_crz(st, g.qubits[0], g.qubits[1], g.angle); break;
    default:
      throw Error(ErrorCode::Internal, "not a unitary gate");
  }
}

double norm_sq(const std::vector<Amplitude>& st) {
  double n = 0.0;
  for (const Amplitude& a : st) n += std::norm(a);
  return n;
}

}  // namespace

double SimBranch::probability() const { return norm_sq(state); }

std::vector<SimBranch> simulate_branches(const Circuit& circuit,
                                         const std::vector<Amplitude>* initial) {
  if (circuit.num_qubits > kMaxSimQubits) {
    throw Error(ErrorCode::TooWide,
                "circuit width " + std::to_string(circuit.num_qubits) +
                    " exceeds simulator limit " + std::to_string(kMaxSimQubits));
  }
  validate_circuit(circuit);

  const size_t dim = size_t{1} << circuit.num_qubits;
  SimBranch root;
  if (initial) {
    if (initial->size() != dim) {
      throw Error(ErrorCode::InvalidArgument, "initial state has wrong dimension");
    }
    root.state = *initial;
  } else {
    root.state.assign(dim, Amplitude{0.0, 0.0});
    root.state[0] = 1.0;
  }
  root.clbits.assign(circuit.num_clbits, -1);

  std::vector<SimBranch> branches;
  branches.push_back(std::move(root));

  for (const Gate& g : circuit.gates) {
    std::vector<SimBranch> next;
    next.reserve(branches.size());
    for (SimBranch& branch : branches) {
      if (g.condition) {
        const int8_t have = branch.clbits[g.condition->first];
        if (have != g.condition->second) {
          next.push_back(std::move(branch));
          continue;
        }
      }
      if (g.kind == GateKind::MeasureZ || g.kind == GateKind::Reset) {
        const size_t mask = size_t{1} << g.qubits[0];
        for (int outcome = 0; outcome < 2; ++outcome) {
          SimBranch child;
          child.clbits = branch.clbits;
          child.state.assign(branch.state.size(), Amplitude{0.0, 0.0});
          for (size_t i = 0; i < branch.state.size(); ++i) {
            if (static_cast<int>((i & mask) != 0) == outcome) {
              child.state[i] = branch.state[i];
            }
          }
          if (norm_sq(child.state) < kDeadBranch) continue;
          if (g.kind == GateKind::MeasureZ) {
            child.clbits[*g.clbit] = static_cast<int8_t>(outcome);
          } else if (outcome == 1) {
            apply_x(child.state, g.qubits[0]);  // reset discards the outcome
          }
          next.push_back(std::move(child));
        }
      } else {
        apply_unitary(branch.state, g);
        next.push_back(std::move(branch));
      }
    }
    branches = std::move(next);
  }
  return branches;
}

PauliString PauliString::parse(const std::string& text, uint32_t num_qubits) {
  if (text.size() != num_qubits) {
    throw Error(ErrorCode::InvalidArgument,
                "observable has length " + std::to_string(text.size()) +
                    ", circuit has " + std::to_string(num_qubits) + " qubits");
  }
  PauliString p;
  for (char c : text) {
    char u = static_cast<char>(toupper(static_cast<unsigned char>(c)));
    if (u != 'I' && u != 'X' && u != 'Y' && u != 'Z') {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("bad Pauli letter '") + c + "'");
    }
    p.ops.push_back(u);
  }
  return p;
}

bool PauliString::is_identity() const {
  return ops.find_first_not_of('I') == std::string::npos;
}

double pauli_expectation(const std::vector<Amplitude>& state,
                         const PauliString& obs) {
  size_t xmask = 0, sign_mask = 0;
  int y_count = 0;
  for (size_t q = 0; q < obs.ops.size(); ++q) {
    switch (obs.ops[q]) {
      case 'X': xmask |= size_t{1} << q; break;
      case 'Y':
        xmask |= size_t{1} << q;
        sign_mask |= size_t{1} << q;
        ++y_count;
        break;
      case 'Z': sign_mask |= size_t{1} << q; break;
      default: break;
    }
  }
  // i^{#Y} global factor from Y = i * X * Z-type phase bookkeeping.
  const Amplitude i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Amplitude global = i_pow[y_count % 4];

  Amplitude acc{0.0, 0.0};
  for (size_t x = 0; x < state.size(); ++x) {
    if (state[x] == Amplitude{0.0, 0.0}) continue;
    const double parity =
        (std::popcount(static_cast<uint64_t>(x & sign_mask)) & 1) ? -1.0 : 1.0;
    acc += std::conj(state[x ^ xmask]) * global * parity * state[x];
  }
  return acc.real();
}

double expectation(const Circuit& circuit, const PauliString& obs) {
  if (obs.ops.size() != circuit.num_qubits) {
    throw Error(ErrorCode::InvalidArgument, "observable width mismatch");
  }
  double total = 0.0;
  for (const SimBranch& branch : simulate_branches(circuit)) {
    total += pauli_expectation(branch.state, obs);
  }
  return total;
}

}  // namespace qknit

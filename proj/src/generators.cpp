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

#include "generators.hpp"

#include <cmath>
#include <set>

#include "error.hpp"
#include "rng.hpp"

namespace qknit {

Circuit generate_ghz(uint32_t n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "GHZ needs at least 2 qubits");
  }
  Circuit circuit;
  circuit.num_qubits = n;
  circuit.gates.push_back(gate1(GateKind::H, 0));
  for (uint32_t i = 0; i + 1 < n; ++i) {
    circuit.gates.push_back(gate2(GateKind::CNOT, i, i + 1));
  }
  return circuit;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<std::pair<uint32_t, uint32_t>> build_qaoa_edges(uint32_t n,
                                                            double frac,
                                                            Rng& rng) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::set<std::pair<uint32_t, uint32_t>> present;
  auto add = [&](uint32_t u, uint32_t v) {
    if (u > v) std::swap(u, v);
    if (!present.insert({u, v}).second) return false;
    edges.push_back({u, v});
    return true;
  };

  // Random recursive tree keeps the graph connected.
  for (uint32_t i = 1; i < n; ++i) {
    add(static_cast<uint32_t>(rng.below(i)), i);
  }

  const uint64_t extra = static_cast<uint64_t>(std::llround(frac * n));
  const uint64_t max_edges = static_cast<uint64_t>(n) * (n - 1) / 2;
  if ((n - 1) + extra > max_edges) {
    throw Error(ErrorCode::InvalidArgument,
                "requested " + std::to_string(extra) +
                    " extra edges but only " +
                    std::to_string(max_edges - (n - 1)) + " are available");
  }
  uint64_t added = 0;
  while (added < extra) {
    uint32_t u = static_cast<uint32_t>(rng.below(n));
    uint32_t v = static_cast<uint32_t>(rng.below(n));
    if (u == v) continue;
    if (add(u, v)) ++added;
  }
  return edges;
}

}  // namespace

std::vector<std::pair<uint32_t, uint32_t>> qaoa_edge_set(uint32_t n,
                                                         double extra_edge_frac,
                                                         uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "QAOA needs at least 2 qubits");
  }
  if (extra_edge_frac < 0 || !std::isfinite(extra_edge_frac)) {
    throw Error(ErrorCode::InvalidArgument, "negative extra-edge fraction");
  }
  Rng rng(seed);
  return build_qaoa_edges(n, extra_edge_frac, rng);
}

Circuit generate_qaoa_maxcut(uint32_t n, double extra_edge_frac, uint64_t seed,
                             uint32_t layers, bool use_crz) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "QAOA needs at least 2 qubits");
  }
  if (extra_edge_frac < 0 || !std::isfinite(extra_edge_frac)) {
    throw Error(ErrorCode::InvalidArgument, "negative extra-edge fraction");
  }
  if (layers < 1) {
    throw Error(ErrorCode::InvalidArgument, "QAOA needs at least 1 layer");
  }

  Rng rng(seed);
  const auto edges = build_qaoa_edges(n, extra_edge_frac, rng);

  Circuit circuit;
  circuit.num_qubits = n;
  for (uint32_t q = 0; q < n; ++q) {
    circuit.gates.push_back(gate1(GateKind::H, q));
  }
  for (uint32_t layer = 0; layer < layers; ++layer) {
    const double gamma = kTwoPi * rng.uniform();
    const double beta = kTwoPi * rng.uniform();
    for (const auto& [u, v] : edges) {
      if (use_crz) {
        circuit.gates.push_back(gate2(GateKind::CRZ, u, v, gamma));
      } else {
        circuit.gates.push_back(gate2(GateKind::CNOT, u, v));
        circuit.gates.push_back(gate1(GateKind::RZ, v, gamma));
        circuit.gates.push_back(gate2(GateKind::CNOT, u, v));
      }
    }
    for (uint32_t q = 0; q < n; ++q) {
      circuit.gates.push_back(gate1(GateKind::H, q));
      circuit.gates.push_back(gate1(GateKind::RZ, q, beta));
      circuit.gates.push_back(gate1(GateKind::H, q));
    }
  }
  return circuit;
}

Circuit generate_hea(uint32_t n, uint32_t layers, uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "HEA needs at least 2 qubits");
  }
  if (layers < 1) {
    throw Error(ErrorCode::InvalidArgument, "HEA needs at least 1 layer");
  }
  Rng rng(seed);
  Circuit circuit;
  circuit.num_qubits = n;
  for (uint32_t layer = 0; layer < layers; ++layer) {
    for (uint32_t q = 0; q < n; ++q) {
      circuit.gates.push_back(gate1(GateKind::RZ, q, kTwoPi * rng.uniform()));
      circuit.gates.push_back(gate1(GateKind::H, q));
    }
    for (uint32_t q = 0; q + 1 < n; ++q) {
      circuit.gates.push_back(gate2(GateKind::CNOT, q, q + 1));
    }
  }
  return circuit;
}

Circuit generate_bridge(const BridgeSpec& spec) {
  const uint32_t L = spec.top_qubits;
  const uint32_t M = spec.bottom_qubits;
  if (L < 2 || M < 2) {
    throw Error(ErrorCode::InvalidArgument, "bridge blocks need at least 2 qubits");
  }
  Circuit circuit;
  circuit.num_qubits = L + M;

  auto block_round = [&] {
    for (uint32_t i = 0; i + 1 < L; ++i) {
      circuit.gates.push_back(gate2(GateKind::CNOT, i, i + 1));
    }
    for (uint32_t i = L; i + 1 < L + M; ++i) {
      circuit.gates.push_back(gate2(GateKind::CNOT, i, i + 1));
    }
  };

  // The intra-block density must dominate every boundary crossing, otherwise
  // peeling a single block qubit off could be cheaper than the intended split.
  const uint32_t kw = spec.left_cnots;
  const uint32_t kv = spec.ladder_cnots;
  const uint32_t epilogue_rounds = 2 + (kw > 3 ? kw - 3 : 0);

  block_round();
  block_round();
  for (uint32_t i = 0; i < kw; ++i) {
    circuit.gates.push_back(gate2(GateKind::CNOT, L - 1, L));
  }
  for (uint32_t j = 0; j < kv; ++j) {
    block_round();
    const uint32_t top = L - 1 - (j % L);
    const uint32_t bottom = L + (j % M);
    circuit.gates.push_back(gate2(GateKind::CNOT, top, bottom));
  }
  for (uint32_t r = 0; r < epilogue_rounds; ++r) {
    block_round();
  }
  return circuit;
}

}  // namespace qknit

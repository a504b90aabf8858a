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

// Exercises the shared-library surface the CLI is built on.

#include <doctest.h>

#include <cstring>
#include <string>

#include "qknit/qknit.h"

namespace {

struct Str {
  char* ptr = nullptr;
  ~Str() { qknit_string_free(ptr); }
  std::string get() const { return ptr ? ptr : ""; }
};

}  // namespace

TEST_CASE("circuit round trip through the C API") {
  qknit_circuit* c = nullptr;
  REQUIRE(qknit_circuit_from_json(
              R"({"qubits":2,"clbits":0,"gates":[{"kind":"cnot","qubits":[0,1]}]})",
              &c) == QKNIT_OK);
  CHECK(qknit_circuit_num_qubits(c) == 2);
  CHECK(qknit_circuit_num_gates(c) == 1);
  CHECK(qknit_circuit_num_two_qubit_gates(c) == 1);
  Str json;
  REQUIRE(qknit_circuit_to_json(c, &json.ptr) == QKNIT_OK);
  qknit_circuit* c2 = nullptr;
  REQUIRE(qknit_circuit_from_json(json.ptr, &c2) == QKNIT_OK);
  Str json2;
  REQUIRE(qknit_circuit_to_json(c2, &json2.ptr) == QKNIT_OK);
  CHECK(json.get() == json2.get());
  qknit_circuit_free(c);
  qknit_circuit_free(c2);
}

TEST_CASE("parse errors carry messages") {
  qknit_circuit* c = nullptr;
  CHECK(qknit_circuit_from_json("{\"qubits\":1,\"gates\":[{\"kind\":\"cnot\","
                                "\"qubits\":[0,1]}]}",
                                &c) == QKNIT_ERR_PARSE);
  CHECK(std::strlen(qknit_last_error()) > 0);
  CHECK(qknit_circuit_generate("nope:1", &c) == QKNIT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("qasm entry point") {
  qknit_circuit* c = nullptr;
  REQUIRE(qknit_circuit_from_qasm("OPENQASM 2.0; qreg q[2]; cx q[0],q[1];",
                                  &c) == QKNIT_OK);
  CHECK(qknit_circuit_num_qubits(c) == 2);
  qknit_circuit_free(c);
}

TEST_CASE("graph counts and dot through the C API") {
  qknit_circuit* c = nullptr;
  REQUIRE(qknit_circuit_generate("ghz:4", &c) == QKNIT_OK);
  qknit_graph* g = nullptr;
  REQUIRE(qknit_graph_build(c, &g) == QKNIT_OK);
  CHECK(qknit_graph_num_vertices(g) == 6);
  CHECK(qknit_graph_num_gate_edges(g) == 3);
  CHECK(qknit_graph_num_wire_edges(g) == 2);
  Str dot;
  REQUIRE(qknit_graph_to_dot(g, &dot.ptr) == QKNIT_OK);
  CHECK(dot.get().find("graph") != std::string::npos);
  qknit_graph_free(g);
  qknit_circuit_free(c);
}

TEST_CASE("partition ghz-4 and verify the report") {
  qknit_circuit* c = nullptr;
  REQUIRE(qknit_circuit_generate("ghz:4", &c) == QKNIT_OK);

  qknit_partition_opts opts;
  qknit_partition_opts_init(&opts);
  opts.num_partitions = 2;
  opts.max_qubits = 2;
  opts.cc_available = 0;
  opts.ancilla_available = 0;

  qknit_solution* sol = nullptr;
  REQUIRE(qknit_partition(c, &opts, &sol) == QKNIT_OK);
  CHECK(qknit_solution_overhead(sol) == doctest::Approx(9.0));
  CHECK(qknit_solution_num_cuts(sol) == 1);
  CHECK(qknit_solution_is_optimal(sol) == 1);
  CHECK(qknit_solution_max_qubits(sol) == 2);

  Str report;
  REQUIRE(qknit_solution_report(sol, 0, &report.ptr) == QKNIT_OK);
  CHECK(report.get().find("\"schema_version\": 1") != std::string::npos);

  double knit = 0, direct = 0, deviation = 1;
  REQUIRE(qknit_verify(c, report.ptr, "ZZZZ", &knit, &direct, &deviation) ==
          QKNIT_OK);
  CHECK(knit == doctest::Approx(1.0));
  CHECK(direct == doctest::Approx(1.0));
  CHECK(deviation <= 1e-9);

  REQUIRE(qknit_verify(c, report.ptr, "IIZZ", &knit, &direct, &deviation) ==
          QKNIT_OK);
  CHECK(deviation <= 1e-9);

  // Corrupting the recorded overhead must be caught.
  std::string tampered = report.get();
  const size_t at = tampered.find("\"overhead\": 9.0");
  REQUIRE(at != std::string::npos);
  tampered.replace(at, 15, "\"overhead\": 8.0");
  CHECK(qknit_verify(c, tampered.c_str(), "ZZZZ", &knit, &direct, &deviation) ==
        QKNIT_ERR_PARSE);

  qknit_solution_free(sol);
  qknit_circuit_free(c);
}

TEST_CASE("infeasible problems surface as status codes") {
  qknit_circuit* c = nullptr;
  REQUIRE(qknit_circuit_generate("ghz:4", &c) == QKNIT_OK);
  qknit_partition_opts opts;
  qknit_partition_opts_init(&opts);
  opts.num_partitions = 2;
  opts.max_qubits = 2;
  opts.mode = QKNIT_MODE_WIRE_ONLY;
  opts.cc_available = 0;
  opts.ancilla_available = 0;
  qknit_solution* sol = nullptr;
  CHECK(qknit_partition(c, &opts, &sol) == QKNIT_ERR_INFEASIBLE);
  CHECK(sol == nullptr);
  qknit_circuit_free(c);
}

TEST_CASE("smt2 emission through the C API is deterministic") {
  qknit_circuit* c = nullptr;
  REQUIRE(qknit_circuit_generate("ghz:4", &c) == QKNIT_OK);
  qknit_partition_opts opts;
  qknit_partition_opts_init(&opts);
  opts.num_partitions = 2;
  opts.max_qubits = 2;
  Str a, b;
  REQUIRE(qknit_partition_smt2(c, &opts, &a.ptr) == QKNIT_OK);
  REQUIRE(qknit_partition_smt2(c, &opts, &b.ptr) == QKNIT_OK);
  CHECK(a.get() == b.get());
  CHECK(a.get().find("(set-logic QF_LIA)") == 0);
  qknit_circuit_free(c);
}

TEST_CASE("budget arithmetic through the C API") {
  uint32_t cuts = 0;
  REQUIRE(qknit_budget_max_cuts(1e3, 86400, 8000, QKNIT_FAMILY_BELL_GROUP,
                                &cuts) == QKNIT_OK);
  CHECK(cuts == 5);
  REQUIRE(qknit_budget_max_cuts(1e6, 86400, 8000, QKNIT_FAMILY_NINE_POW,
                                &cuts) == QKNIT_OK);
  CHECK(cuts == 7);
  REQUIRE(qknit_budget_max_cuts(1e9, 86400, 8000, QKNIT_FAMILY_SIXTEEN_POW,
                                &cuts) == QKNIT_OK);
  CHECK(cuts == 8);
  CHECK(qknit_budget_max_cuts(0, 0, 8000, QKNIT_FAMILY_NINE_POW, &cuts) ==
        QKNIT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("version string is present") {
  CHECK(std::strlen(qknit_version()) > 0);
}

/* Copyright 2026 The qknit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Shared-library interface of qknit: quantum circuit partitioning with gate
 * cuts and wire cuts, plus exact verification by quasiprobability knitting.
 *
 * All entry points return a qknit_status; QKNIT_OK means success. Outputs
 * are opaque handles or malloc'd strings: release handles with the matching
 * *_free and strings with qknit_string_free. A failing call leaves a message
 * readable through qknit_last_error (thread local). The library keeps no
 * global mutable state, so handles may be used from multiple threads as long
 * as each handle is owned by one thread at a time.
 */

#ifndef QKNIT_QKNIT_H
#define QKNIT_QKNIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t qknit_status;
enum {
  QKNIT_OK = 0,
  QKNIT_ERR_INVALID_ARGUMENT = 1,
  QKNIT_ERR_PARSE = 2,           /* circuit text could not be parsed */
  QKNIT_ERR_INFEASIBLE = 3,      /* problem proven unsatisfiable */
  QKNIT_ERR_TIMEOUT = 4,         /* limit hit without an incumbent */
  QKNIT_ERR_TIMEOUT_INCUMBENT = 5, /* limit hit, best-so-far returned */
  QKNIT_ERR_SOLVER = 6,          /* external solver failed */
  QKNIT_ERR_GROUPED_CUTS = 7,    /* verification needs individual cuts */
  QKNIT_ERR_UNPRICED_CUT = 8,    /* no decomposition for this cut kind */
  QKNIT_ERR_TOO_LARGE = 9,       /* beyond simulator or solver limits */
  QKNIT_ERR_CORRUPT = 10,        /* report/solution file inconsistent */
  QKNIT_ERR_INTERNAL = 11
};

typedef struct qknit_circuit qknit_circuit;
typedef struct qknit_graph qknit_graph;
typedef struct qknit_solution qknit_solution;

/* Last error message of the current thread; owned by the library. */
const char* qknit_last_error(void);

void qknit_string_free(char* text);

const char* qknit_version(void);

/* ----- circuits ----------------------------------------------------- */

/* Canonical JSON schema: {"qubits":N, "clbits":N, "gates":[{"kind":...,
 * "qubits":[...], "angle":..., "clbit":..., "cond":[bit,value]}, ...]}. */
qknit_status qknit_circuit_from_json(const char* text, qknit_circuit** out);

/* OpenQASM 2 subset: one qreg, optional creg, h/x/z/s/sdg/rz/cx/cz/swap/crz
 * and measure. */
qknit_status qknit_circuit_from_qasm(const char* text, qknit_circuit** out);

/* Generator spec strings: "ghz:N", "qaoa:N,FRAC,SEED,LAYERS[,crz]",
 * "hea:N,LAYERS,SEED", "bridge:L,M,KW,KV". */
qknit_status qknit_circuit_generate(const char* spec, qknit_circuit** out);

qknit_status qknit_circuit_to_json(const qknit_circuit* circuit, char** out);
uint32_t qknit_circuit_num_qubits(const qknit_circuit* circuit);
uint32_t qknit_circuit_num_gates(const qknit_circuit* circuit);
uint32_t qknit_circuit_num_two_qubit_gates(const qknit_circuit* circuit);
void qknit_circuit_free(qknit_circuit* circuit);

/* ----- cutting graph ------------------------------------------------- */

qknit_status qknit_graph_build(const qknit_circuit* circuit, qknit_graph** out);
uint32_t qknit_graph_num_vertices(const qknit_graph* graph);
uint32_t qknit_graph_num_gate_edges(const qknit_graph* graph);
uint32_t qknit_graph_num_wire_edges(const qknit_graph* graph);
qknit_status qknit_graph_to_dot(const qknit_graph* graph, char** out);
void qknit_graph_free(qknit_graph* graph);

/* ----- partitioning --------------------------------------------------- */

enum {
  QKNIT_MODE_COMBINED = 0,
  QKNIT_MODE_WIRE_ONLY = 1,
  QKNIT_MODE_GATE_ONLY = 2
};
enum { QKNIT_OBJECTIVE_SAMPLES = 0, QKNIT_OBJECTIVE_QUBITS = 1 };
enum { QKNIT_SOLVER_INTERNAL = 0, QKNIT_SOLVER_EXTERNAL = 1 };

typedef struct qknit_partition_opts {
  uint32_t num_partitions;      /* >= 2 */
  uint32_t max_qubits;          /* per-partition cap, >= 1 */
  int32_t mode;                 /* QKNIT_MODE_* */
  int32_t cc_available;         /* classical communication between parts */
  int32_t ancilla_available;    /* ancilla qubits for simultaneous cuts */
  int32_t objective;            /* QKNIT_OBJECTIVE_* */
  int32_t solver;               /* QKNIT_SOLVER_* */
  const char* solver_path;      /* NULL: $QKNIT_SMT_SOLVER */
  int32_t solver_incremental;   /* reuse one process per minimize call */
  double time_limit_seconds;    /* <= 0: default 300 s */
  /* Budget: either total_samples > 0, or frequency and runtime > 0; all
   * zero disables the budget constraint. */
  int64_t base_shots;           /* <= 0: default 8000 */
  double total_samples;
  double frequency_hz;
  double runtime_seconds;
  int64_t max_cuts;             /* <= 0: no cap */
} qknit_partition_opts;

/* Fills in the documented defaults (combined mode, CC and ancilla on,
 * internal solver, sample objective, no budget). */
void qknit_partition_opts_init(qknit_partition_opts* opts);

/* Solves the partitioning problem. Returns QKNIT_OK with a solution handle,
 * QKNIT_ERR_INFEASIBLE, QKNIT_ERR_TIMEOUT_INCUMBENT (handle still returned),
 * or an error. */
qknit_status qknit_partition(const qknit_circuit* circuit,
                             const qknit_partition_opts* opts,
                             qknit_solution** out);

/* The SMT-LIB2 text of the encoded problem (what an external solver sees). */
qknit_status qknit_partition_smt2(const qknit_circuit* circuit,
                                  const qknit_partition_opts* opts, char** out);

double qknit_solution_overhead(const qknit_solution* solution);
uint32_t qknit_solution_num_cuts(const qknit_solution* solution);
uint32_t qknit_solution_num_grouped_cuts(const qknit_solution* solution);
uint32_t qknit_solution_max_qubits(const qknit_solution* solution);
int32_t qknit_solution_is_optimal(const qknit_solution* solution);
/* Versioned run report; pass with_timings = 0 for reproducible bytes. */
qknit_status qknit_solution_report(const qknit_solution* solution,
                                   int32_t with_timings, char** out);
void qknit_solution_free(qknit_solution* solution);

/* ----- verification --------------------------------------------------- */

/* Knits the cuts recorded in report_json against the uncut circuit for one
 * Pauli observable (string over {I,X,Y,Z}, one letter per qubit). On
 * success *knit_value, *direct_value and *deviation are filled in. Errors:
 * QKNIT_ERR_GROUPED_CUTS, QKNIT_ERR_UNPRICED_CUT, QKNIT_ERR_CORRUPT. */
qknit_status qknit_verify(const qknit_circuit* circuit, const char* report_json,
                          const char* observable, double* knit_value,
                          double* direct_value, double* deviation);

/* ----- budget arithmetic ---------------------------------------------- */

enum {
  QKNIT_FAMILY_BELL_GROUP = 0, /* (2^{k+1}-1)^2 */
  QKNIT_FAMILY_NINE_POW = 1,   /* 9^k */
  QKNIT_FAMILY_SIXTEEN_POW = 2 /* 16^k */
};

/* Largest cut count whose sampling overhead fits freq*runtime samples at
 * base_shots measurements per configuration. */
qknit_status qknit_budget_max_cuts(double frequency_hz, double runtime_seconds,
                                   int64_t base_shots, int32_t family,
                                   uint32_t* out);

#ifdef __cplusplus
}
#endif

#endif /* QKNIT_QKNIT_H */

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

#ifndef QKNIT_SOLVERS_HPP
#define QKNIT_SOLVERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "partition_model.hpp"

namespace qknit {

struct SolverBackend {
  enum Kind { ExternalSmt, InternalExact } kind = InternalExact;
  std::string executable;  // SMT-LIB2 on stdin, verdict + model on stdout
  std::vector<std::string> extra_args;
  double time_limit_seconds = 300.0;
  bool incremental = false;  // one process per minimize call instead of one
                             // per bound-tightening round

  static SolverBackend internal();
  /// Resolves the executable from `path` or the QKNIT_SMT_SOLVER variable.
  static SolverBackend external(const std::string& path = "");
};

enum class SolveStatus { Sat, Unsat, Timeout, Error };

struct SolveResult {
  SolveStatus status = SolveStatus::Error;
  Model model;
  std::string detail;  // raw verdict line or error text
};

/// One-shot run of an external solver over a complete SMT-LIB2 script.
SolveResult solve_external(const std::string& smtlib2,
                           const SolverBackend& backend);

struct MinimizeResult {
  enum Status { Optimal, Unsat, TimeoutWithIncumbent, TimeoutNoIncumbent };
  Status status = Unsat;
  std::optional<PartitionSolution> solution;
};

/// Provably optimal solution by canonical enumeration with branch-and-bound;
/// the optimality oracle for the constraint model.
MinimizeResult solve_exact(const PartitionProblem& problem);

/// Iterated bound tightening on the objective symbol until UNSAT (external)
/// or a completed exhaustive search (internal).
MinimizeResult minimize(const PartitionProblem& problem,
                        const SolverBackend& backend);

}  // namespace qknit

#endif

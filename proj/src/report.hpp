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

#ifndef QKNIT_REPORT_HPP
#define QKNIT_REPORT_HPP

#include <string>

#include "partition_model.hpp"

namespace qknit {

/// Versioned run report: input summary, problem parameters, the solution in
/// its JSON schema, a cost breakdown and the budget check. Wall-clock timings
/// are opt-in so that repeated runs stay byte-identical.
std::string report_json(const Circuit& circuit, const PartitionProblem& problem,
                        const PartitionSolution& solution, bool with_timings);

/// Rebuilds the solved assignment from a report produced by report_json; the
/// graph must come from the same circuit. Performs structural checks and
/// throws SchemaError on corrupted input.
PartitionSolution solution_from_report(const std::string& report_text,
                                       const CuttingGraph& graph);

/// Problem parameters as recorded in a report (subset used by verification).
PartitionProblem problem_from_report(const std::string& report_text,
                                     const CuttingGraph& graph);

}  // namespace qknit

#endif
